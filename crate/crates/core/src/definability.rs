//! The parameter set D, witness pairs for finite primes, the rings
//! R~_{a,b}, and the desk-scale verifier of the identity
//! F_q[t] union O_inf = intersection of R~_{a,b} over (a,b) in D.
//!
//! Membership in D is decided semantically through square classes at
//! infinity; the first-order rendering of the same predicate lives in the
//! `formula` module.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{factor, monic_irreducibles, text, Degree, FieldCtx, Poly, RatFunc};
use crate::error::{Error, Result};
use crate::oracle::hensel_is_square_at_infinity;
use crate::places::{
    legendre, residue_is_square, square_class_at_infinity, valuation, Place,
    SquareClassAtInfinity, SymbolValue,
};
use crate::ramification::{delta_set, RamificationSet};

/// Which disjunct of the defining predicate holds for a pair in D.
///
/// For nonzero arguments the two disjuncts impose opposite degree parities,
/// so `Both` cannot occur; the variant exists because the predicate's shape
/// allows it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiOrientation {
    First,
    Second,
    Both,
}

/// phi(c): c is a square of F_q((1/t)).
pub fn phi_holds(c: &RatFunc, ctx: &FieldCtx) -> Result<bool> {
    Ok(square_class_at_infinity(c, ctx)? == SquareClassAtInfinity::Square)
}

/// Semantic evaluation of psi(a, b).
///
/// Disjunct one asks for c, d of opposite degree parity with phi(c), a = zc,
/// and b^(q-1) = d^(q-1). The last equation forces d to be a constant
/// multiple of b, and a = zc forces c = a/z, so the disjunct reduces to
/// "a/z is a square at infinity and deg(b) is odd". Disjunct two is the
/// mirror image. Zero inputs are defined to fail.
pub fn psi_orientation(a: &RatFunc, b: &RatFunc, ctx: &FieldCtx) -> Option<PsiOrientation> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    let z_inv = ctx.inv(ctx.nonsquare()).expect("nonsquare is a unit");
    let first = square_class_at_infinity(&a.scale(z_inv, ctx), ctx).unwrap()
        == SquareClassAtInfinity::Square
        && b.degree().is_odd();
    let second = square_class_at_infinity(&b.scale(z_inv, ctx), ctx).unwrap()
        == SquareClassAtInfinity::Square
        && a.degree().is_odd();
    match (first, second) {
        (true, true) => Some(PsiOrientation::Both),
        (true, false) => Some(PsiOrientation::First),
        (false, true) => Some(PsiOrientation::Second),
        (false, false) => None,
    }
}

pub fn psi_holds(a: &RatFunc, b: &RatFunc, ctx: &FieldCtx) -> bool {
    psi_orientation(a, b, ctx).is_some()
}

/// A pair in D together with its ramification set.
///
/// Construction verifies the two facts the main theorem needs from every
/// member of D: infinity ramifies, and so does at least one finite place.
#[derive(Debug, Clone)]
pub struct DPair {
    pub a: RatFunc,
    pub b: RatFunc,
    pub orientation: PsiOrientation,
    pub delta: RamificationSet,
}

impl DPair {
    pub fn new(a: RatFunc, b: RatFunc, ctx: &FieldCtx) -> Result<DPair> {
        let orientation = psi_orientation(&a, &b, ctx).ok_or(Error::ZeroInput)?;
        let delta = delta_set(&a, &b, ctx)?;
        if !delta.contains_infinity() || delta.finite_places().next().is_none() {
            return Err(Error::WitnessPostcondition {
                place: text::ratfunc_to_string(&a, ctx),
            });
        }
        Ok(DPair { a, b, orientation, delta })
    }
}

/// A constructed pair whose quaternion algebra ramifies exactly at one chosen
/// finite place and infinity.
#[derive(Debug, Clone)]
pub struct WitnessPair {
    pub pair: DPair,
    pub target: Place,
    /// The auxiliary prime d(t); the pair is (z f, z d).
    pub d_poly: Poly,
}

/// Builds the witness pair for a finite place (f): a = z f and b = z d with
/// d monic irreducible of opposite degree parity, chosen first in canonical
/// order among those whose residue mod f is a nonzero square (deg f odd) or a
/// nonsquare (deg f even). The postcondition Delta = {(f), inf} is verified
/// before returning.
pub fn witness_pair(p: &Place, ctx: &FieldCtx) -> Result<WitnessPair> {
    let f = match p {
        Place::Finite(f) => f,
        Place::Infinity => return Err(Error::WitnessTargetInfinite),
    };
    let f_deg = f.degree().finite().expect("place polynomial is nonconstant");
    let want_square_residue = f_deg % 2 == 1;
    let cap = f_deg + 2 * ctx.q() as i64 + 4;

    let mut d_deg = if f_deg % 2 == 1 { 2 } else { 1 };
    while d_deg <= cap {
        for d in monic_irreducibles(d_deg as usize, ctx) {
            let r = d.rem(f, ctx);
            debug_assert!(!r.is_zero(), "distinct irreducibles are coprime");
            if residue_is_square(&r, p, ctx) != want_square_residue {
                continue;
            }
            let z = ctx.nonsquare();
            let a = RatFunc::from_poly(f.scale(z, ctx));
            let b = RatFunc::from_poly(d.scale(z, ctx));
            let pair = DPair::new(a, b, ctx)?;
            if pair.delta.places != vec![p.clone(), Place::Infinity] {
                return Err(Error::WitnessPostcondition { place: p.to_text(ctx) });
            }
            return Ok(WitnessPair { pair, target: p.clone(), d_poly: d });
        }
        d_deg += 2;
    }
    Err(Error::WitnessSearchExceeded { cap })
}

/// Confirms the two quadratic-reciprocity cases behind a witness pair: for
/// odd deg(f) both (z/d) and (f/d) are +1, for even deg(f) both are -1.
pub fn witness_case_identities(w: &WitnessPair, ctx: &FieldCtx) -> Result<bool> {
    let f = match &w.target {
        Place::Finite(f) => f,
        Place::Infinity => return Err(Error::WitnessTargetInfinite),
    };
    let z_sym = legendre(&Poly::constant(ctx.nonsquare()), &w.d_poly, ctx)?;
    let f_sym = legendre(f, &w.d_poly, ctx)?;
    let expected = if f.degree().is_odd() { SymbolValue::Plus } else { SymbolValue::Minus };
    Ok(z_sym == expected && f_sym == expected)
}

/// Bounded-witness evaluation of the raw defining predicate of D, used only
/// as a cross-check against [`psi_holds`].
///
/// The equations a = zc and b^(q-1) = d^(q-1) force c = a/z and d = lambda b
/// (and symmetrically), so the bounded search space collapses to those
/// candidates; a candidate only counts when its numerator and denominator
/// degrees stay within `degree_bound`. The square-at-infinity test goes
/// through the Laurent square-root oracle, not through square classes.
pub fn d_membership_crosscheck(
    a: &RatFunc,
    b: &RatFunc,
    degree_bound: i64,
    ctx: &FieldCtx,
) -> bool {
    if a.is_zero() || b.is_zero() {
        return false;
    }
    let z_inv = ctx.inv(ctx.nonsquare()).unwrap();
    let within_bound = |x: &RatFunc| {
        let nd = x.num().degree().finite().unwrap_or(0);
        let dd = x.den().degree().finite().unwrap_or(0);
        nd <= degree_bound && dd <= degree_bound
    };
    let disjunct = |scaled: &RatFunc, other: &RatFunc| {
        let c = scaled.scale(z_inv, ctx);
        if !within_bound(&c) || !within_bound(other) {
            return false;
        }
        let phi_c = hensel_is_square_at_infinity(&c, ctx).expect("nonzero candidate");
        // d ranges over lambda*other; all share the degree of other.
        let opposite_parity = match (c.degree(), other.degree()) {
            (Degree::Finite(dc), Degree::Finite(dd)) => (dc - dd).rem_euclid(2) == 1,
            _ => false,
        };
        phi_c && opposite_parity
    };
    disjunct(a, b) || disjunct(b, a)
}

/// x lies in R~_{a,b}, the union of the valuation rings at the ramified
/// places: true iff some v in Delta has v(x) >= 0. Zero belongs everywhere.
pub fn r_tilde_contains(x: &RatFunc, pair: &DPair, ctx: &FieldCtx) -> bool {
    if x.is_zero() {
        return true;
    }
    // Polynomials are integral at every finite place.
    if x.is_poly() && pair.delta.finite_places().next().is_some() {
        return true;
    }
    if matches!(x.degree(), Degree::Finite(d) if d <= 0) && pair.delta.contains_infinity() {
        return true;
    }
    pair.delta.places.iter().any(|v| valuation(x, v, ctx).is_nonnegative())
}

/// One failed check in a [`TheoremReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub x: String,
    pub a: String,
    pub b: String,
    pub kind: String,
}

/// Outcome of [`verify_theorem`].
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub q: u64,
    pub deg_bound: i64,
    pub members_checked: u64,
    pub nonmembers_checked: u64,
    pub pairs_used: u64,
    pub counterexamples: Vec<Counterexample>,
}

/// Exhaustively checks the main identity over all reduced x = g/h with
/// deg g, deg h <= deg_bound.
///
/// Members of F_q[t] union O_inf (h constant, or degree(x) <= 0) must lie in
/// R~ for every pair of the D-sample: the witness pairs of all primes of
/// degree <= deg_bound plus the exhaustive grid of D-pairs whose component
/// numerator and denominator degrees are <= deg_bound. Every non-member must
/// be excluded by the witness pair of the first prime factor of its
/// denominator. The x sweep and the grid sweep are sharded with rayon;
/// results are merged in deterministic order.
pub fn verify_theorem(ctx: &FieldCtx, deg_bound: i64) -> Result<TheoremReport> {
    let bound = deg_bound.max(0) as usize;
    let xs = reduced_rationals(bound, ctx);
    let is_member = |x: &RatFunc| {
        x.is_poly() || matches!(x.degree(), Degree::Finite(d) if d <= 0)
    };
    let members: Vec<&RatFunc> = xs.iter().filter(|x| is_member(x)).collect();
    let nonmembers: Vec<&RatFunc> = xs.iter().filter(|x| !x.is_zero() && !is_member(x)).collect();

    let mut counterexamples = Vec::new();
    let mut pairs_used = 0u64;

    // Witness pairs for every prime of degree <= bound, keyed by the prime.
    let mut witnesses: Vec<WitnessPair> = Vec::new();
    for deg in 1..=bound {
        for f in monic_irreducibles(deg, ctx) {
            witnesses.push(witness_pair(&Place::Finite(f), ctx)?);
        }
    }
    pairs_used += witnesses.len() as u64;

    // Inclusion against the constructed witnesses.
    for w in &witnesses {
        for x in &members {
            if !r_tilde_contains(x, &w.pair, ctx) {
                counterexamples.push(report_entry(x, &w.pair.a, &w.pair.b, "member_excluded", ctx));
            }
        }
    }

    // Inclusion against the exhaustive D-grid, streamed to keep memory flat.
    let nonzero: Vec<&RatFunc> = xs.iter().filter(|x| !x.is_zero()).collect();
    let grid_results: Vec<(u64, Vec<Counterexample>)> = nonzero
        .par_iter()
        .map(|a| {
            let mut used = 0u64;
            let mut bad = Vec::new();
            for b in &nonzero {
                if psi_orientation(a, b, ctx).is_none() {
                    continue;
                }
                used += 1;
                match DPair::new((*a).clone(), (*b).clone(), ctx) {
                    Ok(pair) => {
                        for x in &members {
                            if !r_tilde_contains(x, &pair, ctx) {
                                bad.push(report_entry(x, a, b, "member_excluded", ctx));
                            }
                        }
                    }
                    Err(_) => bad.push(report_entry(&RatFunc::zero(), a, b, "invalid_d_pair", ctx)),
                }
            }
            (used, bad)
        })
        .collect();
    for (used, bad) in grid_results {
        pairs_used += used;
        counterexamples.extend(bad);
    }

    // Exclusion side: the witness at the first prime factor of the
    // denominator must reject every non-member.
    let witness_for = |f: &Poly| witnesses.iter().find(|w| w.target == Place::Finite(f.clone()));
    for x in &nonmembers {
        let fac = factor(x.den(), ctx)?;
        let p = &fac.factors[0].0;
        debug_assert!(!valuation(x, &Place::Finite(p.clone()), ctx).is_nonnegative());
        let w = witness_for(p).expect("denominator factor degree is within the bound");
        if r_tilde_contains(x, &w.pair, ctx) {
            counterexamples.push(report_entry(x, &w.pair.a, &w.pair.b, "nonmember_contained", ctx));
        }
    }

    Ok(TheoremReport {
        q: ctx.q(),
        deg_bound,
        members_checked: members.len() as u64,
        nonmembers_checked: nonmembers.len() as u64,
        pairs_used,
        counterexamples,
    })
}

fn report_entry(
    x: &RatFunc,
    a: &RatFunc,
    b: &RatFunc,
    kind: &str,
    ctx: &FieldCtx,
) -> Counterexample {
    Counterexample {
        x: text::ratfunc_to_string(x, ctx),
        a: text::ratfunc_to_string(a, ctx),
        b: text::ratfunc_to_string(b, ctx),
        kind: kind.to_string(),
    }
}

/// All reduced g/h with deg g, deg h <= bound, h monic; includes zero once.
pub fn reduced_rationals(bound: usize, ctx: &FieldCtx) -> Vec<RatFunc> {
    let numerators: Vec<Poly> = crate::algebra::all_polys_upto(bound, ctx).collect();
    let mut denominators: Vec<Poly> = vec![Poly::one()];
    for deg in 1..=bound {
        denominators.extend(crate::algebra::monic_polys(deg, ctx));
    }
    let mut out = Vec::new();
    for h in &denominators {
        for g in &numerators {
            if g.gcd(h, ctx).is_one() || (g.is_zero() && h.is_one()) {
                out.push(RatFunc::new(g.clone(), h.clone(), ctx).unwrap());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::text::parse_ratfunc;

    fn f3() -> FieldCtx {
        FieldCtx::new(3, 1).unwrap()
    }

    fn rf(s: &str, ctx: &FieldCtx) -> RatFunc {
        parse_ratfunc(s, ctx).unwrap()
    }

    #[test]
    fn phi_examples() {
        let ctx = f3();
        assert!(phi_holds(&rf("t^2+1", &ctx), &ctx).unwrap());
        assert!(!phi_holds(&rf("t", &ctx), &ctx).unwrap());
        assert!(!phi_holds(&rf("2*t^2+2", &ctx), &ctx).unwrap());
        assert_eq!(phi_holds(&RatFunc::zero(), &ctx).unwrap_err(), Error::ZeroInput);
    }

    #[test]
    fn psi_examples() {
        let ctx = f3();
        assert_eq!(
            psi_orientation(&rf("2*t", &ctx), &rf("2*t^2+2", &ctx), &ctx),
            Some(PsiOrientation::Second)
        );
        assert_eq!(
            psi_orientation(&rf("2*t^2+2", &ctx), &rf("2*t", &ctx), &ctx),
            Some(PsiOrientation::First)
        );
        assert_eq!(psi_orientation(&rf("t", &ctx), &rf("t", &ctx), &ctx), None);
        assert_eq!(psi_orientation(&RatFunc::zero(), &rf("t", &ctx), &ctx), None);
    }

    #[test]
    fn crosscheck_examples() {
        let ctx = f3();
        assert!(d_membership_crosscheck(&rf("2*t", &ctx), &rf("2*t^2+2", &ctx), 2, &ctx));
        assert!(!d_membership_crosscheck(&RatFunc::one(), &RatFunc::one(), 2, &ctx));
    }

    #[test]
    fn witness_for_t() {
        let ctx = f3();
        let w = witness_pair(&Place::parse("t", &ctx).unwrap(), &ctx).unwrap();
        assert_eq!(w.pair.a, rf("2*t", &ctx));
        assert_eq!(w.pair.b, rf("2*t^2+2", &ctx));
        assert_eq!(
            w.pair.delta.places,
            vec![Place::parse("t", &ctx).unwrap(), Place::Infinity]
        );
        assert!(witness_case_identities(&w, &ctx).unwrap());
    }

    #[test]
    fn witness_for_even_degree_prime() {
        let ctx = f3();
        // deg f even: d must be odd degree with nonsquare residue. t mod
        // t^2+1 is a square in F_9, t+1 is not, so the search lands on t+1.
        let w = witness_pair(&Place::parse("t^2+1", &ctx).unwrap(), &ctx).unwrap();
        assert_eq!(w.d_poly, rf("t+1", &ctx).num().clone());
        assert_eq!(w.pair.b, rf("2*t+2", &ctx));
        assert!(witness_case_identities(&w, &ctx).unwrap());
    }

    #[test]
    fn witness_for_t_plus_one() {
        let ctx = f3();
        // deg f odd: d even degree with d(-1) a nonzero square, i.e. = 1.
        let w = witness_pair(&Place::parse("t+1", &ctx).unwrap(), &ctx).unwrap();
        let d = &w.d_poly;
        assert_eq!(d.eval(crate::algebra::FqElem(2), &ctx), crate::algebra::FqElem(1));
        assert!(d.degree().is_even());
        assert!(witness_case_identities(&w, &ctx).unwrap());
    }

    #[test]
    fn witness_rejects_infinity() {
        let ctx = f3();
        assert_eq!(
            witness_pair(&Place::Infinity, &ctx).unwrap_err(),
            Error::WitnessTargetInfinite
        );
    }

    #[test]
    fn r_tilde_examples() {
        let ctx = f3();
        let w = witness_pair(&Place::parse("t", &ctx).unwrap(), &ctx).unwrap();
        assert!(r_tilde_contains(&rf("t", &ctx), &w.pair, &ctx));
        assert!(r_tilde_contains(&rf("1/t", &ctx), &w.pair, &ctx));
        assert!(!r_tilde_contains(&rf("t^2+1/t", &ctx), &w.pair, &ctx));
        assert!(r_tilde_contains(&RatFunc::zero(), &w.pair, &ctx));
    }

    #[test]
    fn verify_theorem_f3_small() {
        let ctx = f3();
        // bound 1 admits no nonmembers: deg g = deg h = 1 already has
        // degree zero
        let report = verify_theorem(&ctx, 1).unwrap();
        assert!(report.counterexamples.is_empty());
        assert_eq!(report.nonmembers_checked, 0);

        let report = verify_theorem(&ctx, 2).unwrap();
        assert!(report.counterexamples.is_empty());
        assert!(report.members_checked > 0);
        assert!(report.nonmembers_checked > 0);
        assert!(report.pairs_used > 6);
    }
}
