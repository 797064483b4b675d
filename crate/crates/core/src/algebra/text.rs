//! Text format for polynomials and rational functions.
//!
//! A polynomial is a "+"-joined list of terms `c*t^e`, where the coefficient
//! `c` is an integer in 0..q-1 encoding an element of F_q by base-p digits in
//! the polynomial basis. `c*t` and bare `t`, `t^e`, and `c` are accepted, and
//! whitespace is insignificant. A rational function is `num/den` with a
//! single slash binding loosest. Printing is canonical: descending exponents,
//! no zero terms, unit coefficients omitted.

use crate::error::{Error, Result};

use super::field::{FieldCtx, FqElem};
use super::poly::Poly;
use super::ratfunc::RatFunc;

pub fn poly_to_string(p: &Poly, ctx: &FieldCtx) -> String {
    let _ = ctx;
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for (e, &c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let term = match (c.encode(), e) {
            (v, 0) => v.to_string(),
            (1, 1) => "t".to_string(),
            (1, _) => format!("t^{e}"),
            (v, 1) => format!("{v}*t"),
            (v, _) => format!("{v}*t^{e}"),
        };
        terms.push(term);
    }
    terms.join("+")
}

pub fn ratfunc_to_string(x: &RatFunc, ctx: &FieldCtx) -> String {
    if x.is_poly() {
        poly_to_string(x.num(), ctx)
    } else {
        format!("{}/{}", poly_to_string(x.num(), ctx), poly_to_string(x.den(), ctx))
    }
}

pub fn parse_poly(input: &str, ctx: &FieldCtx) -> Result<Poly> {
    Parser { input: input.as_bytes(), pos: 0, ctx }.parse_poly_full()
}

pub fn parse_ratfunc(input: &str, ctx: &FieldCtx) -> Result<RatFunc> {
    let slashes: Vec<usize> =
        input.bytes().enumerate().filter(|(_, b)| *b == b'/').map(|(i, _)| i).collect();
    match slashes.as_slice() {
        [] => Ok(RatFunc::from_poly(parse_poly(input, ctx)?)),
        [i] => {
            let num = parse_poly(&input[..*i], ctx)?;
            let den = parse_poly(&input[*i + 1..], ctx).map_err(|e| shift_pos(e, *i + 1))?;
            if den.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            RatFunc::new(num, den, ctx)
        }
        more => Err(Error::Parse { pos: more[1], msg: "more than one '/'".to_string() }),
    }
}

fn shift_pos(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    }
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
    ctx: &'a FieldCtx,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn parse_poly_full(&mut self) -> Result<Poly> {
        let mut acc = Poly::constant(FqElem::ZERO);
        loop {
            let term = self.parse_term()?;
            acc = acc.add(&term, self.ctx);
            match self.peek() {
                None => return Ok(acc),
                Some(b'+') => {
                    self.pos += 1;
                }
                Some(c) => {
                    return self.err(self.pos, format!("unexpected character '{}'", c as char))
                }
            }
        }
    }

    fn parse_term(&mut self) -> Result<Poly> {
        let start = self.pos;
        let (coeff, saw_coeff) = match self.peek() {
            Some(b'0'..=b'9') => (self.parse_coeff()?, true),
            _ => (FqElem::ONE, false),
        };
        let saw_star = if self.peek() == Some(b'*') {
            if !saw_coeff {
                return self.err(self.pos, "'*' without coefficient");
            }
            self.pos += 1;
            true
        } else {
            false
        };
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                let exp = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.parse_exponent()?
                } else {
                    1
                };
                Ok(Poly::monomial(coeff, exp))
            }
            _ if saw_star => self.err(self.pos, "expected 't' after '*'"),
            _ if saw_coeff => Ok(Poly::constant(coeff)),
            _ => self.err(start, "expected term"),
        }
    }

    fn parse_coeff(&mut self) -> Result<FqElem> {
        let start = self.pos;
        let v = self.parse_integer()?;
        if v >= self.ctx.q() {
            return self.err(start, format!("coefficient {v} out of range 0..{}", self.ctx.q()));
        }
        Ok(self.ctx.element(v))
    }

    fn parse_exponent(&mut self) -> Result<usize> {
        let start = self.pos;
        let v = self.parse_integer()?;
        if v > 10_000 {
            return self.err(start, "exponent too large");
        }
        Ok(v as usize)
    }

    fn parse_integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(d @ b'0'..=b'9') = self.input.get(self.pos).copied() {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(d - b'0')))
                .ok_or(Error::Parse { pos: start, msg: "integer overflow".to_string() })?;
            self.pos += 1;
        }
        if self.pos == start {
            return self.err(start, "expected integer");
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldCtx {
        FieldCtx::new(3, 1).unwrap()
    }

    #[test]
    fn parse_examples() {
        let ctx = f3();
        let p = parse_poly("t^3+2*t+1", &ctx).unwrap();
        assert_eq!(poly_to_string(&p, &ctx), "t^3+2*t+1");
        assert_eq!(parse_poly(" t ^ 2 + 1 ", &ctx).unwrap(), parse_poly("t^2+1", &ctx).unwrap());
        assert_eq!(parse_poly("0", &ctx).unwrap(), Poly::zero());
        assert_eq!(parse_poly("2", &ctx).unwrap(), Poly::constant(FqElem(2)));
    }

    #[test]
    fn duplicate_exponents_accumulate() {
        let ctx = f3();
        assert_eq!(parse_poly("t+t", &ctx).unwrap(), parse_poly("2*t", &ctx).unwrap());
        assert_eq!(parse_poly("2*t+2*t+2*t", &ctx).unwrap(), Poly::zero());
    }

    #[test]
    fn parse_errors_carry_positions() {
        let ctx = f3();
        match parse_poly("t^2+3*t", &ctx).unwrap_err() {
            Error::Parse { pos, .. } => assert_eq!(pos, 4),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(parse_poly("t&1", &ctx).is_err());
        assert!(parse_poly("", &ctx).is_err());
        assert!(parse_poly("2*", &ctx).is_err());
    }

    #[test]
    fn ratfunc_roundtrip_and_slash_binding() {
        let ctx = f3();
        let x = parse_ratfunc("t^2+1/t", &ctx).unwrap();
        assert_eq!(x.num(), &parse_poly("t^2+1", &ctx).unwrap());
        assert_eq!(x.den(), &Poly::t());
        assert_eq!(ratfunc_to_string(&x, &ctx), "t^2+1/t");
        assert!(parse_ratfunc("1/t/t", &ctx).is_err());
        assert_eq!(parse_ratfunc("1/0", &ctx).unwrap_err(), Error::ZeroDenominator);
    }

    #[test]
    fn extension_field_coefficients() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        // coefficient 4 encodes alpha+1 in base-3 digits
        let p = parse_poly("4*t+1", &f9).unwrap();
        assert_eq!(p.coeff(1), FqElem(4));
        assert_eq!(poly_to_string(&p, &f9), "4*t+1");
        assert!(parse_poly("9*t", &f9).is_err());
    }
}
