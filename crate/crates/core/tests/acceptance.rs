//! Acceptance suite: the eight headline checks for this crate, each printed
//! as a single pass/fail line. Run with
//! `cargo test -p fqt-core --test acceptance`.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fqt_core::algebra::{all_polys_upto, monic_irreducibles, monic_polys};
use fqt_core::definability::{
    d_membership_crosscheck, psi_holds, reduced_rationals, verify_theorem, witness_case_identities,
    witness_pair,
};
use fqt_core::formula::build_universal_definition;
use fqt_core::oracle::ConicOracle;
use fqt_core::places::{hilbert_symbol, legendre};
use fqt_core::ramification::{delta_set, reciprocity_check};
use fqt_core::{FieldCtx, Place, Poly, RatFunc, SymbolValue};

struct Criterion {
    name: &'static str,
    started: Instant,
}

impl Criterion {
    fn start(name: &'static str) -> Criterion {
        Criterion { name, started: Instant::now() }
    }

    fn pass(self) {
        println!("criterion {}: PASS ({:.2?})", self.name, self.started.elapsed());
    }
}

fn ctx(p: u64, k: usize) -> FieldCtx {
    FieldCtx::new(p, k).unwrap()
}

fn nonzero_constants(c: &FieldCtx) -> Vec<RatFunc> {
    c.elements().filter(|e| !e.is_zero()).map(RatFunc::constant).collect()
}

/// Criterion 1: the assembled universal definition reproduces the quantifier
/// ledger exactly: itemized 2 + 20 + 66 + 1 = 89 with the max{89, 9}
/// restriction step, and 90 in the parameter-free variant.
#[test]
fn c1_quantifier_ledger() {
    let crit = Criterion::start("1 (quantifier ledger 89/90)");
    let started = Instant::now();
    let field = ctx(3, 1);

    let (formula, report) = build_universal_definition(&field, false);
    assert_eq!(report.total, 89);
    assert_eq!(formula.quantifier_count(), 89);
    let quantifiers: Vec<u64> = report.items.iter().map(|i| i.quantifiers).collect();
    assert_eq!(quantifiers[..2], [2, 20]);
    assert!(quantifiers[2] <= 66, "Jacobson budget exceeded: {}", quantifiers[2]);
    assert_eq!(quantifiers[3], 1);
    assert_eq!(quantifiers[..4].iter().sum::<u64>(), 89);
    assert!(
        report.items.iter().any(|i| i.label.contains("max{89, 9}")),
        "restriction step must record the max rule"
    );
    assert_eq!(report.prenex_class, "universal");

    let (formula0, report0) = build_universal_definition(&field, true);
    assert_eq!(report0.total, 90);
    assert_eq!(formula0.quantifier_count(), 90);
    assert!(formula0.params().is_empty());

    // Same ledger regardless of the field.
    let (_, report9) = build_universal_definition(&ctx(3, 2), false);
    assert_eq!(report9.total, 89);

    assert!(started.elapsed() < Duration::from_secs(1), "ledger must assemble in under 1 s");
    crit.pass();
}

/// Criterion 2: for every nonsquare constant f and every nonzero constant g,
/// the symbol (f, g/t) at infinity is -1, exhaustively for q in {3, 5, 9}.
#[test]
fn c2_nonsplit_at_infinity() {
    let crit = Criterion::start("2 (constant/uniformizer symbols at infinity)");
    for (p, k) in [(3, 1), (5, 1), (3, 2)] {
        let field = ctx(p, k);
        let t_inv = RatFunc::t().inv(&field).unwrap();
        for f in field.elements().filter(|&e| !e.is_zero() && !field.is_square(e)) {
            for g in field.elements().filter(|e| !e.is_zero()) {
                let b = RatFunc::constant(g).mul(&t_inv, &field);
                let sym = hilbert_symbol(
                    &RatFunc::constant(f),
                    &b,
                    &Place::Infinity,
                    &field,
                )
                .unwrap();
                assert_eq!(sym, SymbolValue::Minus, "q={} f={f:?} g={g:?}", field.q());
            }
        }
    }
    crit.pass();
}

/// Criterion 3: a nonsquare constant is a nonresidue exactly at the odd
/// degree primes, exhaustively to degree 4 over F_3 and F_5.
#[test]
fn c3_constant_residue_law() {
    let crit = Criterion::start("3 (constant Legendre parity law)");
    for p in [3, 5] {
        let field = ctx(p, 1);
        for deg in 1..=4 {
            for f in monic_irreducibles(deg, &field) {
                let odd = deg % 2 == 1;
                for g in field.elements().filter(|&e| !e.is_zero() && !field.is_square(e)) {
                    let sym = legendre(&Poly::constant(g), &f, &field).unwrap();
                    assert_eq!(
                        sym == SymbolValue::Minus,
                        odd,
                        "q={p} f={f:?} g={g:?}"
                    );
                }
            }
        }
    }
    crit.pass();
}

/// Criterion 4: quadratic reciprocity
/// (d/f)(f/d) = (-1)^((q-1)/2 * deg f * deg d) over all coprime monic
/// irreducible pairs of degree <= 4, q in {3, 5}.
#[test]
fn c4_quadratic_reciprocity() {
    let crit = Criterion::start("4 (quadratic reciprocity)");
    let started = Instant::now();
    for p in [3u64, 5] {
        let field = ctx(p, 1);
        let irreducibles: Vec<Poly> =
            (1..=4).flat_map(|d| monic_irreducibles(d, &field).collect::<Vec<_>>()).collect();
        for f in &irreducibles {
            for d in &irreducibles {
                if f == d {
                    continue;
                }
                let lhs = legendre(d, f, &field)
                    .unwrap()
                    .mul(legendre(f, d, &field).unwrap());
                let df = f.degree().finite().unwrap();
                let dd = d.degree().finite().unwrap();
                let exponent = ((p - 1) / 2) as i64 * df * dd;
                let rhs =
                    if exponent % 2 == 0 { SymbolValue::Plus } else { SymbolValue::Minus };
                assert_eq!(lhs, rhs, "q={p} f={f:?} d={d:?}");
            }
        }
    }
    assert!(started.elapsed() < Duration::from_secs(60));
    crit.pass();
}

/// Criterion 5: Hilbert reciprocity over the exhaustive reduced grid with
/// numerator and denominator degrees <= 2 over F_3, plus 10^4 seeded random
/// pairs of degree <= 4 over F_3 and F_5.
#[test]
fn c5_hilbert_reciprocity() {
    let crit = Criterion::start("5 (Hilbert reciprocity)");
    let field = ctx(3, 1);
    let values: Vec<RatFunc> =
        reduced_rationals(2, &field).into_iter().filter(|x| !x.is_zero()).collect();
    for a in &values {
        for b in &values {
            assert!(reciprocity_check(a, b, &field).unwrap(), "a={a:?} b={b:?}");
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for p in [3u64, 5] {
        let field = ctx(p, 1);
        for _ in 0..5_000 {
            let a = random_ratfunc(&mut rng, 4, &field);
            let b = random_ratfunc(&mut rng, 4, &field);
            assert!(reciprocity_check(&a, &b, &field).unwrap(), "q={p} a={a:?} b={b:?}");
        }
    }
    crit.pass();
}

fn random_ratfunc(rng: &mut ChaCha8Rng, max_deg: usize, field: &FieldCtx) -> RatFunc {
    let mut random_poly = |nonzero: bool| loop {
        let coeffs: Vec<_> = (0..=rng.gen_range(0..=max_deg))
            .map(|_| field.element(rng.gen_range(0..field.q())))
            .collect();
        let p = Poly::from_coeffs(coeffs);
        if !nonzero || !p.is_zero() {
            return p;
        }
    };
    let num = random_poly(true);
    let den = random_poly(true);
    RatFunc::new(num, den, field).unwrap()
}

/// Criterion 6: the desk-scale theorem verifier finds no counterexample over
/// F_3 and F_5 at degree bound 2, within five minutes.
#[test]
fn c6_theorem_verifier() {
    let crit = Criterion::start("6 (membership identity at degree bound 2)");
    let started = Instant::now();
    for p in [3u64, 5] {
        let field = ctx(p, 1);
        let report = verify_theorem(&field, 2).unwrap();
        assert_eq!(
            report.counterexamples,
            Vec::new(),
            "q={p}: {} counterexamples",
            report.counterexamples.len()
        );
        assert!(report.members_checked > 0 && report.nonmembers_checked > 0);
        assert!(report.pairs_used > 0);
    }
    assert!(started.elapsed() < Duration::from_secs(300), "took {:?}", started.elapsed());
    crit.pass();
}

/// Criterion 7: every witness pair for primes of degree <= 4 over F_3
/// ramifies exactly at its target and infinity, lies in D, and satisfies the
/// per-case residue identities.
#[test]
fn c7_witness_correctness() {
    let crit = Criterion::start("7 (witness pairs for primes of degree <= 4)");
    let field = ctx(3, 1);
    for deg in 1..=4 {
        for f in monic_irreducibles(deg, &field) {
            let place = Place::Finite(f.clone());
            let w = witness_pair(&place, &field).unwrap();
            assert_eq!(
                w.pair.delta.places,
                vec![place.clone(), Place::Infinity],
                "f={f:?}"
            );
            assert!(psi_holds(&w.pair.a, &w.pair.b, &field));
            // Non-membership of the other support place, explicitly.
            let d_place = Place::Finite(w.d_poly.clone());
            assert_eq!(
                hilbert_symbol(&w.pair.a, &w.pair.b, &d_place, &field).unwrap(),
                SymbolValue::Plus
            );
            assert!(witness_case_identities(&w, &field).unwrap(), "f={f:?}");
        }
    }
    crit.pass();
}

/// Criterion 8: oracle equivalence. The tame symbol agrees with the
/// precision-6 conic search over the exhaustive grid of nonzero polynomial
/// pairs of degree <= 2 over F_3 at every candidate place, and the semantic
/// D-membership agrees with the bounded-witness evaluation of the raw
/// predicate over the reduced rational grid of the same size.
#[test]
fn c8_oracle_equivalence() {
    let crit = Criterion::start("8 (oracle equivalence)");
    let field = ctx(3, 1);

    // Places of degree <= 2 plus infinity, each with one prebuilt oracle.
    let mut oracles: Vec<(Place, ConicOracle)> = Vec::new();
    for deg in 1..=2 {
        for f in monic_irreducibles(deg, &field) {
            let v = Place::Finite(f);
            let oracle = ConicOracle::new(&v, &field);
            oracles.push((v, oracle));
        }
    }
    oracles.push((Place::Infinity, ConicOracle::new(&Place::Infinity, &field)));

    let polys: Vec<Poly> =
        all_polys_upto(2, &field).filter(|f| !f.is_zero()).collect();
    let mut checked = 0u64;
    for a in &polys {
        for b in &polys {
            let ra = RatFunc::from_poly(a.clone());
            let rb = RatFunc::from_poly(b.clone());
            let delta = delta_set(&ra, &rb, &field).unwrap();
            for (v, oracle) in &oracles {
                let in_support = match v {
                    Place::Finite(f) => {
                        a.divisible_by(f, &field) || b.divisible_by(f, &field)
                    }
                    Place::Infinity => true,
                };
                if !in_support {
                    continue;
                }
                let solvable = oracle.is_solvable(&ra, &rb, &field).unwrap();
                let symbol = hilbert_symbol(&ra, &rb, v, &field).unwrap();
                assert_eq!(
                    solvable,
                    symbol == SymbolValue::Plus,
                    "a={a:?} b={b:?} v={v:?}"
                );
                assert_eq!(delta.contains(v), symbol == SymbolValue::Minus);
                checked += 1;
            }
        }
    }
    assert!(checked > 1_000, "grid unexpectedly small: {checked}");

    // Raw-definition crosscheck for D-membership on the same-size grid.
    let values: Vec<RatFunc> =
        reduced_rationals(2, &field).into_iter().filter(|x| !x.is_zero()).collect();
    for a in &values {
        for b in &values {
            assert_eq!(
                psi_holds(a, b, &field),
                d_membership_crosscheck(a, b, 2, &field),
                "a={a:?} b={b:?}"
            );
        }
    }
    crit.pass();
}

/// The polynomial grid used by criterion 8 needs monic enumeration helpers;
/// keep them exercised here so grid sizes stay honest.
#[test]
fn grid_sizes_are_as_expected() {
    let field = ctx(3, 1);
    assert_eq!(all_polys_upto(2, &field).count(), 27);
    assert_eq!(monic_polys(2, &field).count(), 9);
    // 27 numerators; denominators 1 (27 coprime), three linears (18 each),
    // three irreducible quadratics (24), three split quadratics (12), three
    // squared linears (18): 243 in all.
    assert_eq!(reduced_rationals(2, &field).len(), 243);
}
