//! Ramification sets of quaternion algebras H_{a,b} over F_q(t).
//!
//! Splitting at a place is decided entirely through the Hilbert symbol;
//! quaternion elements are never materialized. In odd characteristic the
//! symbol is +1 wherever both arguments are units, so the only candidate
//! places are the irreducible factors appearing in either argument, plus
//! infinity.

use serde::Serialize;

use crate::algebra::{factor, text, FieldCtx, Poly, RatFunc};
use crate::error::{Error, Result};
use crate::places::{hilbert_symbol, Place, SymbolValue};

/// The finite set of places where H_{a,b} is nonsplit, together with the
/// defining pair for traceability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamificationSet {
    pub a: RatFunc,
    pub b: RatFunc,
    /// Nonsplit places in canonical order: finite places ascending, then
    /// infinity.
    pub places: Vec<Place>,
}

impl RamificationSet {
    pub fn contains(&self, v: &Place) -> bool {
        self.places.contains(v)
    }

    pub fn contains_infinity(&self) -> bool {
        matches!(self.places.last(), Some(Place::Infinity))
    }

    pub fn finite_places(&self) -> impl Iterator<Item = &Place> {
        self.places.iter().filter(|p| matches!(p, Place::Finite(_)))
    }

    pub fn to_report(&self, ctx: &FieldCtx) -> DeltaReport {
        DeltaReport {
            a: text::ratfunc_to_string(&self.a, ctx),
            b: text::ratfunc_to_string(&self.b, ctx),
            delta: self.places.iter().map(|p| p.to_text(ctx)).collect(),
            reciprocity: self.places.len() % 2 == 0,
        }
    }
}

/// JSON-facing form of a ramification set.
#[derive(Debug, Clone, Serialize)]
pub struct DeltaReport {
    pub a: String,
    pub b: String,
    pub delta: Vec<String>,
    pub reciprocity: bool,
}

/// Distinct monic irreducible factors of num and den of both arguments, in
/// canonical order.
fn candidate_factors(a: &RatFunc, b: &RatFunc, ctx: &FieldCtx) -> Result<Vec<Poly>> {
    let mut out: Vec<Poly> = Vec::new();
    for poly in [a.num(), a.den(), b.num(), b.den()] {
        if poly.is_constant() {
            continue;
        }
        for (f, _) in factor(poly, ctx)?.factors {
            if !out.contains(&f) {
                out.push(f);
            }
        }
    }
    out.sort_by(|x, y| x.canonical_cmp(y));
    Ok(out)
}

/// Computes Delta_{a,b}: the places with Hilbert symbol -1. Candidates are
/// the supports of a and b plus infinity; everywhere else both arguments are
/// units and the tame symbol is +1.
pub fn delta_set(a: &RatFunc, b: &RatFunc, ctx: &FieldCtx) -> Result<RamificationSet> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut places = Vec::new();
    for f in candidate_factors(a, b, ctx)? {
        let v = Place::Finite(f);
        if hilbert_symbol(a, b, &v, ctx)? == SymbolValue::Minus {
            places.push(v);
        }
    }
    if hilbert_symbol(a, b, &Place::Infinity, ctx)? == SymbolValue::Minus {
        places.push(Place::Infinity);
    }
    Ok(RamificationSet { a: a.clone(), b: b.clone(), places })
}

/// Debug variant of [`delta_set`] that ignores support pruning and scans
/// every monic irreducible up to `degree_bound` (plus infinity). Slower;
/// exists to double-check that pruning never hides a nonsplit place.
pub fn delta_set_scanned(
    a: &RatFunc,
    b: &RatFunc,
    degree_bound: usize,
    ctx: &FieldCtx,
) -> Result<RamificationSet> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut places = Vec::new();
    for deg in 1..=degree_bound {
        for f in crate::algebra::monic_irreducibles(deg, ctx) {
            let v = Place::Finite(f);
            if hilbert_symbol(a, b, &v, ctx)? == SymbolValue::Minus {
                places.push(v);
            }
        }
    }
    if hilbert_symbol(a, b, &Place::Infinity, ctx)? == SymbolValue::Minus {
        places.push(Place::Infinity);
    }
    Ok(RamificationSet { a: a.clone(), b: b.clone(), places })
}

/// Hilbert reciprocity as a checkable oracle: the product of symbols over
/// the supports and infinity equals +1, equivalently |Delta| is even.
pub fn reciprocity_check(a: &RatFunc, b: &RatFunc, ctx: &FieldCtx) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut product = SymbolValue::Plus;
    for f in candidate_factors(a, b, ctx)? {
        product = product.mul(hilbert_symbol(a, b, &Place::Finite(f), ctx)?);
    }
    product = product.mul(hilbert_symbol(a, b, &Place::Infinity, ctx)?);
    Ok(product == SymbolValue::Plus)
}
