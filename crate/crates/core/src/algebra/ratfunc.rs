//! Rational functions num/den over F_q in canonical form.
//!
//! Invariants: gcd(num, den) = 1, den is monic and nonzero, and zero is
//! represented as 0/1. Canonical form makes equality structural.

use crate::error::{Error, Result};

use super::field::{FieldCtx, FqElem};
use super::poly::{Degree, Poly};

/// An element of F_q(t) in lowest terms with monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds num/den in canonical form. Rejects a zero denominator.
    pub fn new(num: Poly, den: Poly, ctx: &FieldCtx) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = num.gcd(&den, ctx);
        let mut num = num.divrem(&g, ctx).0;
        let mut den = den.divrem(&g, ctx).0;
        // Make the denominator monic by scaling both parts.
        let scale = ctx.inv(den.lc()).expect("nonzero denominator");
        num = num.scale(scale, ctx);
        den = den.scale(scale, ctx);
        Ok(RatFunc { num, den })
    }

    pub fn zero() -> RatFunc {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> RatFunc {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: FqElem) -> RatFunc {
        RatFunc::from_poly(Poly::constant(c))
    }

    /// t as a rational function.
    pub fn t() -> RatFunc {
        RatFunc::from_poly(Poly::t())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True iff the denominator is constant, i.e. the value is a polynomial.
    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// deg(num) - deg(den); NEG_INFINITY for zero.
    pub fn degree(&self) -> Degree {
        match (self.num.degree(), self.den.degree()) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a - b),
            _ => Degree::NegInf,
        }
    }

    /// Leading coefficient lc(num)/lc(den); zero for the zero function.
    pub fn lc(&self, ctx: &FieldCtx) -> FqElem {
        if self.is_zero() {
            return FqElem::ZERO;
        }
        ctx.mul(self.num.lc(), ctx.inv(self.den.lc()).unwrap())
    }

    pub fn add(&self, other: &RatFunc, ctx: &FieldCtx) -> RatFunc {
        let num = self
            .num
            .mul(&other.den, ctx)
            .add(&other.num.mul(&self.den, ctx), ctx);
        let den = self.den.mul(&other.den, ctx);
        RatFunc::new(num, den, ctx).expect("nonzero denominator product")
    }

    pub fn neg(&self, ctx: &FieldCtx) -> RatFunc {
        RatFunc { num: self.num.neg(ctx), den: self.den.clone() }
    }

    pub fn sub(&self, other: &RatFunc, ctx: &FieldCtx) -> RatFunc {
        self.add(&other.neg(ctx), ctx)
    }

    pub fn mul(&self, other: &RatFunc, ctx: &FieldCtx) -> RatFunc {
        let num = self.num.mul(&other.num, ctx);
        let den = self.den.mul(&other.den, ctx);
        RatFunc::new(num, den, ctx).expect("nonzero denominator product")
    }

    pub fn scale(&self, c: FqElem, ctx: &FieldCtx) -> RatFunc {
        RatFunc::new(self.num.scale(c, ctx), self.den.clone(), ctx).unwrap()
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self, ctx: &FieldCtx) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone(), ctx)
    }

    pub fn div(&self, other: &RatFunc, ctx: &FieldCtx) -> Result<RatFunc> {
        Ok(self.mul(&other.inv(ctx)?, ctx))
    }

    /// Integer power; negative exponents invert (errors on zero base).
    pub fn powi(&self, e: i64, ctx: &FieldCtx) -> Result<RatFunc> {
        let base = if e < 0 { self.inv(ctx)? } else { self.clone() };
        let mut acc = RatFunc::one();
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b, ctx);
            }
            b = b.mul(&b, ctx);
            n >>= 1;
        }
        Ok(acc)
    }
}
