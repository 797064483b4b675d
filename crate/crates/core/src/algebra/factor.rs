//! Polynomial factorization over F_q and irreducibility testing.
//!
//! Factorization runs squarefree decomposition, distinct-degree splitting,
//! then Cantor-Zassenhaus equal-degree splitting (odd characteristic only,
//! which is all this crate supports). The equal-degree stage draws random
//! polynomials from a fixed-seed generator, so the whole pipeline is
//! deterministic; the returned factor list is sorted in the canonical
//! polynomial order regardless of how the splitting proceeded.

use crate::error::{Error, Result};

use super::field::{FieldCtx, FqElem};
use super::poly::{monic_polys, Degree, Poly};

/// Monic irreducible factors with multiplicities, canonically ordered, plus
/// the unit (leading coefficient of the input).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FqElem,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self, ctx: &FieldCtx) -> Poly {
        let mut acc = Poly::constant(self.unit);
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(u64::from(*m), ctx), ctx);
        }
        acc
    }
}

/// Factors a nonzero polynomial into monic irreducibles.
pub fn factor(f: &Poly, ctx: &FieldCtx) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.lc();
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    let mut rng = SplitMix::new(0x5eed_f0f1_u64);
    factor_monic(f.monic(ctx), 1, ctx, &mut rng, &mut factors);
    factors.sort_by(|(a, _), (b, _)| a.canonical_cmp(b));
    Ok(Factorization { unit, factors })
}

/// Factors monic `work`, recording each irreducible with multiplicity scaled
/// by `mult` (the accumulated p-th-power depth).
fn factor_monic(
    mut work: Poly,
    mult: u32,
    ctx: &FieldCtx,
    rng: &mut SplitMix,
    factors: &mut Vec<(Poly, u32)>,
) {
    if work.is_constant() {
        return;
    }
    let deriv = work.derivative(ctx);
    if deriv.is_zero() {
        // work = g(t^p): every multiplicity in work is divisible by p.
        factor_monic(pth_root(&work, ctx), mult * ctx.p() as u32, ctx, rng, factors);
        return;
    }
    // work / gcd(work, work') is the product of the distinct irreducible
    // factors whose multiplicity is not divisible by p.
    let squarefree = work.divrem(&work.gcd(&deriv, ctx), ctx).0;
    for (g, d) in distinct_degree(&squarefree, ctx) {
        for irr in equal_degree(&g, d, ctx, rng) {
            let e = work.multiplicity(&irr, ctx);
            push_factor(irr.clone(), e * mult, factors);
            work = work.divrem(&irr.pow(u64::from(e), ctx), ctx).0;
        }
    }
    // What remains has only multiplicities divisible by p (derivative zero),
    // handled by the p-th-root branch above.
    factor_monic(work, mult, ctx, rng, factors);
}

fn push_factor(g: Poly, m: u32, factors: &mut Vec<(Poly, u32)>) {
    if let Some(entry) = factors.iter_mut().find(|(h, _)| *h == g) {
        entry.1 += m;
    } else {
        factors.push((g, m));
    }
}

/// True iff f is irreducible over F_q (degree >= 1), by Rabin's test.
pub fn is_irreducible(f: &Poly, ctx: &FieldCtx) -> bool {
    let n = match f.degree() {
        Degree::Finite(d) if d >= 1 => d as u32,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let q = ctx.q() as u128;
    let t = Poly::t();
    // x^(q^n) = x mod f
    let frob_n = t.powmod(q.pow(n), f, ctx);
    if frob_n != t.rem(f, ctx) {
        return false;
    }
    // gcd(x^(q^(n/r)) - x, f) = 1 for every prime r | n
    for r in prime_divisors(n) {
        let e = n / r;
        let frob = t.powmod(q.pow(e), f, ctx);
        let diff = frob.sub(&t, ctx);
        if !diff.gcd(f, ctx).is_one() {
            return false;
        }
    }
    true
}

/// Monic irreducibles of exactly `deg`, in canonical order.
pub fn monic_irreducibles(deg: usize, ctx: &FieldCtx) -> impl Iterator<Item = Poly> + '_ {
    monic_polys(deg, ctx).filter(|f| is_irreducible(f, ctx))
}

fn prime_divisors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// For f = g(t^p), returns g by taking p-th roots of coefficients.
fn pth_root(f: &Poly, ctx: &FieldCtx) -> Poly {
    let p = ctx.p() as usize;
    let q = ctx.q();
    let root_exp = (q / ctx.p()) as u128; // c^(q/p) is the p-th root in F_q
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|&c| ctx.pow(c, root_exp))
        .collect();
    Poly::from_coeffs(coeffs)
}

/// Splits a squarefree monic polynomial into parts whose irreducible factors
/// all share one degree. Returns (product, factor degree) pairs.
fn distinct_degree(f: &Poly, ctx: &FieldCtx) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let mut work = f.clone();
    let q = ctx.q() as u128;
    let t = Poly::t();
    let mut frob = t.rem(&work, ctx);
    let mut d = 0usize;
    while let Degree::Finite(deg) = work.degree() {
        if deg == 0 {
            break;
        }
        d += 1;
        if (deg as usize) < 2 * d {
            // what remains is a single irreducible of degree deg
            out.push((work.clone(), deg as usize));
            break;
        }
        frob = frob.powmod(q, &work, ctx);
        let g = frob.sub(&t, ctx).gcd(&work, ctx);
        if !g.is_one() {
            out.push((g.clone(), d));
            work = work.divrem(&g, ctx).0;
            frob = frob.rem(&work, ctx);
        }
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting for odd q.
fn equal_degree(f: &Poly, d: usize, ctx: &FieldCtx, rng: &mut SplitMix) -> Vec<Poly> {
    let deg = f.degree().finite().unwrap() as usize;
    if deg == d {
        return vec![f.monic(ctx)];
    }
    let exponent = ((ctx.q() as u128).pow(d as u32) - 1) / 2;
    loop {
        let r = random_poly(deg - 1, ctx, rng);
        if r.is_constant() {
            continue;
        }
        let g0 = r.gcd(f, ctx);
        let split = if !g0.is_one() && g0.degree() < f.degree() {
            g0
        } else {
            let pw = r.powmod(exponent, f, ctx);
            let g = pw.sub(&Poly::one(), ctx).gcd(f, ctx);
            if g.is_one() || g.degree() == f.degree() {
                continue;
            }
            g
        };
        let rest = f.divrem(&split, ctx).0;
        let mut out = equal_degree(&split, d, ctx, rng);
        out.extend(equal_degree(&rest, d, ctx, rng));
        return out;
    }
}

fn random_poly(max_deg: usize, ctx: &FieldCtx, rng: &mut SplitMix) -> Poly {
    let coeffs = (0..=max_deg).map(|_| FqElem(rng.next() % ctx.q())).collect();
    Poly::from_coeffs(coeffs)
}

/// Tiny deterministic generator for the equal-degree stage.
struct SplitMix(u64);

impl SplitMix {
    fn new(seed: u64) -> SplitMix {
        SplitMix(seed)
    }

    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldCtx {
        FieldCtx::new(3, 1).unwrap()
    }

    fn poly(ctx: &FieldCtx, coeffs: &[u64]) -> Poly {
        let _ = ctx;
        Poly::from_coeffs(coeffs.iter().map(|&c| FqElem(c)).collect())
    }

    #[test]
    fn factor_irreducible_quadratic() {
        let ctx = f3();
        // t^2+1 has no root in F_3 and degree 2, hence irreducible.
        let f = poly(&ctx, &[1, 0, 1]);
        let fac = factor(&f, &ctx).unwrap();
        assert_eq!(fac.factors, vec![(f.clone(), 1)]);
        assert_eq!(fac.unit, FqElem(1));
    }

    #[test]
    fn factor_monomial_power() {
        let ctx = f3();
        let f = poly(&ctx, &[0, 0, 1]); // t^2
        let fac = factor(&f, &ctx).unwrap();
        assert_eq!(fac.factors, vec![(Poly::t(), 2)]);
    }

    #[test]
    fn factor_splits_difference_of_squares() {
        let ctx = f3();
        // t^2 - 1 = (t+1)(t+2) over F_3, roots at 1 and 2 (= -1).
        let f = poly(&ctx, &[2, 0, 1]);
        let fac = factor(&f, &ctx).unwrap();
        assert_eq!(fac.factors, vec![(poly(&ctx, &[1, 1]), 1), (poly(&ctx, &[2, 1]), 1)]);
    }

    #[test]
    fn factor_rejects_zero() {
        let ctx = f3();
        assert_eq!(factor(&Poly::zero(), &ctx).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn factor_keeps_unit() {
        let ctx = f3();
        let f = poly(&ctx, &[0, 2]); // 2t
        let fac = factor(&f, &ctx).unwrap();
        assert_eq!(fac.unit, FqElem(2));
        assert_eq!(fac.factors, vec![(Poly::t(), 1)]);
        assert_eq!(fac.expand(&ctx), f);
    }

    #[test]
    fn irreducibility_examples() {
        let ctx = f3();
        assert!(is_irreducible(&Poly::t(), &ctx));
        assert!(is_irreducible(&poly(&ctx, &[1, 0, 1]), &ctx));
        // t^2+2 = (t+1)(t+2)
        assert!(!is_irreducible(&poly(&ctx, &[2, 0, 1]), &ctx));
        assert!(!is_irreducible(&Poly::one(), &ctx));
        assert!(!is_irreducible(&Poly::zero(), &ctx));
    }

    #[test]
    fn deep_power_factorization() {
        let ctx = f3();
        // (t+1)^3 has zero derivative stretches; exercises the p-th root path.
        let f = poly(&ctx, &[1, 1]).pow(3, &ctx);
        let fac = factor(&f, &ctx).unwrap();
        assert_eq!(fac.factors, vec![(poly(&ctx, &[1, 1]), 3)]);
        assert_eq!(fac.expand(&ctx), f);
    }

    #[test]
    fn irreducible_counts_match_theory_f3() {
        let ctx = f3();
        // Monic irreducible counts over F_3: 3, 3, 8, 18 for degrees 1..4.
        let counts: Vec<usize> =
            (1..=4).map(|d| monic_irreducibles(d, &ctx).count()).collect();
        assert_eq!(counts, vec![3, 3, 8, 18]);
    }

    #[test]
    fn irreducible_counts_match_theory_f9() {
        let ctx = FieldCtx::new(3, 2).unwrap();
        // Over F_9: 9, 36, 240 monic irreducibles of degrees 1, 2, 3.
        let counts: Vec<usize> =
            (1..=3).map(|d| monic_irreducibles(d, &ctx).count()).collect();
        assert_eq!(counts, vec![9, 36, 240]);
    }
}
