//! Dense univariate polynomials over F_q.
//!
//! Coefficients are stored in ascending degree order; the representation is
//! canonical: the vector is empty for the zero polynomial and the last entry
//! is nonzero otherwise.

use std::cmp::Ordering;

use super::field::{FieldCtx, FqElem};

/// Degree with a dedicated negative-infinity sentinel for the zero
/// polynomial. The sentinel absorbs addition, so deg(fg) = deg(f) + deg(g)
/// holds verbatim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInf,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Degree::Finite(d) if d.rem_euclid(2) == 1)
    }

    pub fn is_even(self) -> bool {
        matches!(self, Degree::Finite(d) if d.rem_euclid(2) == 0)
    }
}

impl std::ops::Add for Degree {
    type Output = Degree;

    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInf,
        }
    }
}

/// A polynomial in F_q[t].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<FqElem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![FqElem::ONE] }
    }

    /// The monomial t.
    pub fn t() -> Poly {
        Poly { coeffs: vec![FqElem::ZERO, FqElem::ONE] }
    }

    pub fn constant(c: FqElem) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<FqElem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// c * t^e.
    pub fn monomial(c: FqElem, e: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![FqElem::ZERO; e + 1];
        coeffs[e] = c;
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FqElem::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::NegInf
        } else {
            Degree::Finite(self.coeffs.len() as i64 - 1)
        }
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn lc(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == FqElem::ONE
    }

    pub fn add(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| ctx.add(self.coeff(i), other.coeff(i))).collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn neg(&self, ctx: &FieldCtx) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|&c| ctx.neg(c)).collect() }
    }

    pub fn sub(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| ctx.sub(self.coeff(i), other.coeff(i))).collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![FqElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = ctx.add(coeffs[i + j], ctx.mul(a, b));
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: FqElem, ctx: &FieldCtx) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect())
    }

    /// Euclidean division: returns (quotient, remainder). Panics on zero
    /// divisor.
    pub fn divrem(&self, div: &Poly, ctx: &FieldCtx) -> (Poly, Poly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        if self.coeffs.len() < div.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let dn = div.coeffs.len() - 1;
        let lc_inv = ctx.inv(div.lc()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FqElem::ZERO; rem.len() - dn];
        for i in (dn..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let f = ctx.mul(c, lc_inv);
            quot[i - dn] = f;
            for j in 0..=dn {
                rem[i - dn + j] = ctx.sub(rem[i - dn + j], ctx.mul(f, div.coeffs[j]));
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn rem(&self, div: &Poly, ctx: &FieldCtx) -> Poly {
        self.divrem(div, ctx).1
    }

    /// True iff `div` divides self exactly.
    pub fn divisible_by(&self, div: &Poly, ctx: &FieldCtx) -> bool {
        self.rem(div, ctx).is_zero()
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly, ctx: &FieldCtx) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, ctx);
            a = b;
            b = r;
        }
        a.monic(ctx)
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn monic(&self, ctx: &FieldCtx) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(ctx.inv(self.lc()).unwrap(), ctx)
    }

    pub fn pow(&self, mut e: u64, ctx: &FieldCtx) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ctx);
            }
            base = base.mul(&base, ctx);
            e >>= 1;
        }
        acc
    }

    /// self^e mod m, by square and multiply on remainders.
    pub fn powmod(&self, mut e: u128, m: &Poly, ctx: &FieldCtx) -> Poly {
        let mut base = self.rem(m, ctx);
        let mut acc = Poly::one().rem(m, ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ctx).rem(m, ctx);
            }
            base = base.mul(&base, ctx).rem(m, ctx);
            e >>= 1;
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self, ctx: &FieldCtx) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| {
                let scalar = ctx.from_int(i as u64 % ctx.p());
                ctx.mul(c, scalar)
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: FqElem, ctx: &FieldCtx) -> FqElem {
        let mut acc = FqElem::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = ctx.add(ctx.mul(acc, x), c);
        }
        acc
    }

    /// Multiplicity of the (nonconstant) divisor `d` in self; 0 if coprime.
    pub fn multiplicity(&self, d: &Poly, ctx: &FieldCtx) -> u32 {
        assert!(!self.is_zero() && !d.is_constant());
        let mut m = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(d, ctx);
            if !r.is_zero() {
                return m;
            }
            m += 1;
            cur = q;
        }
    }

    /// Canonical total order: by degree, then by the integer encoding of the
    /// coefficient word (so same-degree polynomials compare on the highest
    /// differing coefficient).
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        match self.coeffs.len().cmp(&other.coeffs.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.coeffs.len()).rev() {
            match self.coeffs[i].cmp(&other.coeffs[i]) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

/// Iterator over all monic polynomials of exactly `deg` in canonical order.
pub fn monic_polys(deg: usize, ctx: &FieldCtx) -> impl Iterator<Item = Poly> + '_ {
    let q = ctx.q();
    let count = q.pow(deg as u32);
    (0..count).map(move |mut code| {
        let mut coeffs = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            coeffs.push(FqElem(code % q));
            code /= q;
        }
        coeffs.push(FqElem::ONE);
        Poly { coeffs }
    })
}

/// Iterator over all polynomials of degree at most `deg` (including zero) in
/// canonical encoding order.
pub fn all_polys_upto(deg: usize, ctx: &FieldCtx) -> impl Iterator<Item = Poly> + '_ {
    let q = ctx.q();
    let count = q.pow(deg as u32 + 1);
    (0..count).map(move |mut code| {
        let mut coeffs = Vec::with_capacity(deg + 1);
        for _ in 0..=deg {
            coeffs.push(FqElem(code % q));
            code /= q;
        }
        Poly::from_coeffs(coeffs)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldCtx {
        FieldCtx::new(3, 1).unwrap()
    }

    fn poly(coeffs: &[u64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| FqElem(c)).collect())
    }

    #[test]
    fn zero_degree_sentinel_absorbs_addition() {
        assert_eq!(Poly::zero().degree(), Degree::NegInf);
        assert_eq!(Degree::NegInf + Degree::Finite(5), Degree::NegInf);
        assert_eq!(Degree::Finite(2) + Degree::Finite(3), Degree::Finite(5));
        assert!(Degree::NegInf < Degree::Finite(i64::MIN));
    }

    #[test]
    fn degree_multiplicative() {
        let ctx = f3();
        let a = poly(&[1, 2, 1]);
        let b = poly(&[0, 1]);
        assert_eq!(a.mul(&b, &ctx).degree(), a.degree() + b.degree());
        assert_eq!(a.mul(&Poly::zero(), &ctx).degree(), Degree::NegInf);
    }

    #[test]
    fn divrem_reconstructs() {
        let ctx = f3();
        let a = poly(&[2, 0, 1, 1]);
        let b = poly(&[1, 1]);
        let (q, r) = a.divrem(&b, &ctx);
        assert_eq!(q.mul(&b, &ctx).add(&r, &ctx), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_of_known_factors() {
        let ctx = f3();
        let a = poly(&[1, 1]); // t+1
        let b = poly(&[2, 1]); // t+2
        let ab = a.mul(&b, &ctx);
        let ac = a.mul(&poly(&[1, 0, 1]), &ctx);
        assert_eq!(ab.gcd(&ac, &ctx), a);
    }

    #[test]
    fn multiplicity_counts_powers() {
        let ctx = f3();
        let t = Poly::t();
        let f = t.pow(2, &ctx).mul(&poly(&[1, 1]), &ctx);
        assert_eq!(f.multiplicity(&t, &ctx), 2);
        assert_eq!(f.multiplicity(&poly(&[1, 1]), &ctx), 1);
        assert_eq!(f.multiplicity(&poly(&[2, 1]), &ctx), 0);
    }

    #[test]
    fn canonical_order_by_degree_then_encoding() {
        let t = Poly::t();
        let t_plus_1 = poly(&[1, 1]);
        let t_sq = poly(&[0, 0, 1]);
        assert_eq!(t.canonical_cmp(&t_plus_1), Ordering::Less);
        assert_eq!(t_plus_1.canonical_cmp(&t_sq), Ordering::Less);
    }

    #[test]
    fn monic_enumeration_is_exhaustive() {
        let ctx = f3();
        let deg2: Vec<Poly> = monic_polys(2, &ctx).collect();
        assert_eq!(deg2.len(), 9);
        assert!(deg2.iter().all(|f| f.is_monic() && f.degree() == Degree::Finite(2)));
    }
}
