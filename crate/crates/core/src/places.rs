//! Places of F_q(t), valuations, residue maps, completion-level square tests,
//! and the Legendre and tame Hilbert symbols.
//!
//! A finite place is a monic irreducible polynomial; the place at infinity
//! carries the valuation -deg. Residue-field elements are represented as
//! polynomial remainders of degree < deg(f) (constants for the place at
//! infinity), with arithmetic performed mod f.

use std::cmp::Ordering;
use std::fmt;

use crate::algebra::{factor, is_irreducible, text, Degree, FieldCtx, Poly, RatFunc};
use crate::error::{Error, Result};

/// A place of F_q(t).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Place {
    /// The place of a monic irreducible polynomial.
    Finite(Poly),
    /// The place with valuation -deg and residue field F_q.
    Infinity,
}

impl Place {
    /// Validates that `f` is a monic irreducible of degree >= 1.
    pub fn finite(f: Poly, ctx: &FieldCtx) -> Result<Place> {
        if f.is_constant() {
            return Err(Error::PlaceConstant);
        }
        if !f.is_monic() {
            return Err(Error::PlaceNotMonic);
        }
        if !is_irreducible(&f, ctx) {
            let fac = factor(&f, ctx)?;
            let first = &fac.factors[0].0;
            return Err(Error::ReduciblePlace { factor: text::poly_to_string(first, ctx) });
        }
        Ok(Place::Finite(f))
    }

    /// Degree of the place: deg(f) for finite places, 1 at infinity.
    pub fn degree(&self) -> i64 {
        match self {
            Place::Finite(f) => f.degree().finite().expect("nonzero place polynomial"),
            Place::Infinity => 1,
        }
    }

    /// Size of the residue field, q^deg.
    pub fn residue_field_size(&self, ctx: &FieldCtx) -> u128 {
        (ctx.q() as u128).pow(self.degree() as u32)
    }

    /// Finite places first in the canonical polynomial order, infinity last.
    pub fn canonical_cmp(&self, other: &Place) -> Ordering {
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => a.canonical_cmp(b),
            (Place::Finite(_), Place::Infinity) => Ordering::Less,
            (Place::Infinity, Place::Finite(_)) => Ordering::Greater,
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
        }
    }

    pub fn to_text(&self, ctx: &FieldCtx) -> String {
        match self {
            Place::Finite(f) => text::poly_to_string(f, ctx),
            Place::Infinity => "inf".to_string(),
        }
    }

    /// Parses "inf" or a monic irreducible polynomial string.
    pub fn parse(input: &str, ctx: &FieldCtx) -> Result<Place> {
        if input.trim() == "inf" {
            return Ok(Place::Infinity);
        }
        Place::finite(text::parse_poly(input, ctx)?, ctx)
    }
}

/// Valuation of a rational function at a place; `Infinite` is the
/// distinguished result for the zero function, which callers must handle
/// (symbols reject zero inputs).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_nonnegative(self) -> bool {
        match self {
            Valuation::Finite(v) => v >= 0,
            Valuation::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

/// v_p(x): multiplicity of the place polynomial in num minus den for finite
/// places, -degree(x) at infinity.
pub fn valuation(x: &RatFunc, v: &Place, ctx: &FieldCtx) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    match v {
        Place::Finite(f) => {
            // num and den are coprime, so at most one of them is divisible.
            let in_den = x.den().multiplicity(f, ctx);
            if in_den > 0 {
                Valuation::Finite(-(in_den as i64))
            } else {
                Valuation::Finite(x.num().multiplicity(f, ctx) as i64)
            }
        }
        Place::Infinity => {
            Valuation::Finite(-x.degree().finite().expect("nonzero rational function"))
        }
    }
}

/// Residue of an integral element. For a finite place f this is
/// num * den^-1 mod f, a polynomial of degree < deg(f); at infinity it is the
/// constant lc(x) when degree(x) = 0 and 0 when degree(x) < 0.
pub fn residue(x: &RatFunc, v: &Place, ctx: &FieldCtx) -> Result<Poly> {
    if x.is_zero() {
        return Ok(Poly::zero());
    }
    if !valuation(x, v, ctx).is_nonnegative() {
        return Err(Error::NotIntegral);
    }
    match v {
        Place::Finite(f) => {
            let den_inv = poly_inverse_mod(x.den(), f, ctx);
            Ok(x.num().mul(&den_inv, ctx).rem(f, ctx))
        }
        Place::Infinity => {
            if x.degree() == Degree::Finite(0) {
                Ok(Poly::constant(x.lc(ctx)))
            } else {
                Ok(Poly::zero())
            }
        }
    }
}

/// Inverse of `a` mod the irreducible `m` via the Euler exponent. `a` must be
/// a unit mod m.
fn poly_inverse_mod(a: &Poly, m: &Poly, ctx: &FieldCtx) -> Poly {
    let size = (ctx.q() as u128).pow(m.degree().finite().unwrap() as u32);
    a.powmod(size - 2, m, ctx)
}

/// True iff a nonzero residue-field element is a square, by the Euler
/// criterion r^((#F_v - 1)/2) = 1.
pub fn residue_is_square(r: &Poly, v: &Place, ctx: &FieldCtx) -> bool {
    if r.is_zero() {
        return true;
    }
    match v {
        Place::Finite(f) => {
            let e = (v.residue_field_size(ctx) - 1) / 2;
            r.powmod(e, f, ctx).is_one()
        }
        Place::Infinity => {
            debug_assert!(r.is_constant());
            ctx.is_square(r.coeff(0))
        }
    }
}

/// Square classes of F_q((1/t))^x modulo squares: a Klein four-group with
/// representatives 1, 1/t, z, z/t (z the fixed nonsquare of F_q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SquareClassAtInfinity {
    /// Squares: even degree, square leading coefficient.
    Square,
    /// (1/t) * square: odd degree, square leading coefficient.
    TInv,
    /// nonsquare constant * square: even degree, nonsquare leading coefficient.
    FConst,
    /// (nonsquare/t) * square: odd degree, nonsquare leading coefficient.
    FTInv,
}

impl SquareClassAtInfinity {
    /// Group law of the Klein four-group.
    pub fn combine(self, other: SquareClassAtInfinity) -> SquareClassAtInfinity {
        use SquareClassAtInfinity::*;
        let (da, sa) = self.bits();
        let (db, sb) = other.bits();
        match (da ^ db, sa ^ sb) {
            (false, false) => Square,
            (true, false) => TInv,
            (false, true) => FConst,
            (true, true) => FTInv,
        }
    }

    /// (odd degree?, nonsquare leading coefficient?)
    fn bits(self) -> (bool, bool) {
        use SquareClassAtInfinity::*;
        match self {
            Square => (false, false),
            TInv => (true, false),
            FConst => (false, true),
            FTInv => (true, true),
        }
    }
}

/// Classifies a nonzero rational function modulo squares of F_q((1/t)): the
/// class is determined by degree parity and squareness of the leading
/// coefficient.
pub fn square_class_at_infinity(x: &RatFunc, ctx: &FieldCtx) -> Result<SquareClassAtInfinity> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let odd = x.degree().is_odd();
    let lc_square = ctx.is_square(x.lc(ctx));
    Ok(match (odd, lc_square) {
        (false, true) => SquareClassAtInfinity::Square,
        (true, true) => SquareClassAtInfinity::TInv,
        (false, false) => SquareClassAtInfinity::FConst,
        (true, false) => SquareClassAtInfinity::FTInv,
    })
}

/// True iff x is a square in the completion at v: even valuation and square
/// unit-part residue (the Hensel criterion in odd residue characteristic).
pub fn is_square_at_place(x: &RatFunc, v: &Place, ctx: &FieldCtx) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let val = valuation(x, v, ctx).finite().expect("nonzero input");
    if val.rem_euclid(2) == 1 {
        return Ok(false);
    }
    let unit = match v {
        Place::Finite(f) => {
            let pi = RatFunc::from_poly(f.clone());
            x.mul(&pi.powi(-val, ctx).expect("nonzero uniformizer"), ctx)
        }
        Place::Infinity => {
            // uniformizer 1/t, so dividing by pi^val multiplies by t^val
            x.mul(&RatFunc::t().powi(val, ctx).expect("t nonzero"), ctx)
        }
    };
    let r = residue(&unit, v, ctx)?;
    debug_assert!(!r.is_zero(), "unit part must have nonzero residue");
    Ok(residue_is_square(&r, v, ctx))
}

/// A Hilbert or Legendre symbol value, +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymbolValue {
    Plus,
    Minus,
}

impl SymbolValue {
    pub fn from_square(is_square: bool) -> SymbolValue {
        if is_square {
            SymbolValue::Plus
        } else {
            SymbolValue::Minus
        }
    }

    pub fn mul(self, other: SymbolValue) -> SymbolValue {
        if self == other {
            SymbolValue::Plus
        } else {
            SymbolValue::Minus
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            SymbolValue::Plus => 1,
            SymbolValue::Minus => -1,
        }
    }
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_i32())
    }
}

/// Legendre symbol (g / f): +1 iff g's residue mod the monic irreducible f is
/// a square of the residue field. Undefined when f divides g.
pub fn legendre(g: &Poly, f: &Poly, ctx: &FieldCtx) -> Result<SymbolValue> {
    if g.is_zero() {
        return Err(Error::ZeroInput);
    }
    let place = Place::finite(f.clone(), ctx)?;
    let r = g.rem(f, ctx);
    if r.is_zero() {
        return Err(Error::SymbolUndefined);
    }
    Ok(SymbolValue::from_square(residue_is_square(&r, &place, ctx)))
}

/// The tame-formula intermediates behind a Hilbert symbol evaluation.
#[derive(Debug, Clone)]
pub struct SymbolDetail {
    /// v(a)
    pub m: i64,
    /// v(b)
    pub n: i64,
    /// residue of the unit (-1)^(mn) a^n / b^m
    pub unit_residue: Poly,
    pub value: SymbolValue,
}

/// Tame Hilbert symbol (a, b)_v: with m = v(a) and n = v(b), the unit
/// u = (-1)^(mn) a^n / b^m has residue whose Euler criterion gives the value.
/// Symmetric and bimultiplicative; depends only on local square classes.
pub fn hilbert_symbol(a: &RatFunc, b: &RatFunc, v: &Place, ctx: &FieldCtx) -> Result<SymbolValue> {
    Ok(hilbert_symbol_detail(a, b, v, ctx)?.value)
}

/// As [`hilbert_symbol`], also returning the tame-formula intermediates.
pub fn hilbert_symbol_detail(
    a: &RatFunc,
    b: &RatFunc,
    v: &Place,
    ctx: &FieldCtx,
) -> Result<SymbolDetail> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let m = valuation(a, v, ctx).finite().expect("nonzero a");
    let n = valuation(b, v, ctx).finite().expect("nonzero b");
    let mut u = a
        .powi(n, ctx)
        .expect("nonzero a")
        .mul(&b.powi(-m, ctx).expect("nonzero b"), ctx);
    if (m % 2 != 0) && (n % 2 != 0) {
        u = u.scale(ctx.neg(ctx.one()), ctx);
    }
    debug_assert_eq!(valuation(&u, v, ctx), Valuation::Finite(0));
    let unit_residue = residue(&u, v, ctx)?;
    let value = SymbolValue::from_square(residue_is_square(&unit_residue, v, ctx));
    Ok(SymbolDetail { m, n, unit_residue, value })
}
