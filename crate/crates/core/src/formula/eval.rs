//! Bounded semantic evaluation of formulas over F_q(t), for cross-checks.
//!
//! Only quantifier-free and bounded-existential fragments are supported:
//! an existential quantifier ranges over a caller-supplied finite candidate
//! pool, and universal quantifiers are rejected. Opaque atoms evaluate
//! through a caller-supplied semantics callback.

use std::collections::BTreeMap;

use crate::algebra::{Degree, FieldCtx, RatFunc};
use crate::error::{Error, Result};

use super::{Formula, OpaqueAtom, Term};

/// Values for free variables and parameters, by name.
#[derive(Debug, Clone, Default)]
pub struct Assignment(pub BTreeMap<String, RatFunc>);

impl Assignment {
    pub fn new() -> Assignment {
        Assignment(BTreeMap::new())
    }

    pub fn with(mut self, name: &str, value: RatFunc) -> Assignment {
        self.0.insert(name.to_string(), value);
        self
    }
}

pub fn eval_term(t: &Term, asg: &Assignment, ctx: &FieldCtx) -> Result<RatFunc> {
    Ok(match t {
        Term::Var(name) | Term::Param(name) => asg
            .0
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownAtom(format!("unbound name {name}")))?,
        Term::Zero => RatFunc::zero(),
        Term::One => RatFunc::one(),
        Term::T => RatFunc::t(),
        Term::Add(a, b) => eval_term(a, asg, ctx)?.add(&eval_term(b, asg, ctx)?, ctx),
        Term::Sub(a, b) => eval_term(a, asg, ctx)?.sub(&eval_term(b, asg, ctx)?, ctx),
        Term::Mul(a, b) => eval_term(a, asg, ctx)?.mul(&eval_term(b, asg, ctx)?, ctx),
    })
}

/// Evaluates a formula under an assignment, searching existential witnesses
/// in `pool`.
pub fn eval_formula(
    f: &Formula,
    asg: &Assignment,
    ctx: &FieldCtx,
    pool: &[RatFunc],
    opaque: &dyn Fn(&OpaqueAtom, &[RatFunc]) -> Result<bool>,
) -> Result<bool> {
    match f {
        Formula::Eq(a, b) => Ok(eval_term(a, asg, ctx)? == eval_term(b, asg, ctx)?),
        Formula::Not(g) => Ok(!eval_formula(g, asg, ctx, pool, opaque)?),
        Formula::And(fs) => {
            for g in fs {
                if !eval_formula(g, asg, ctx, pool, opaque)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Or(fs) => {
            for g in fs {
                if eval_formula(g, asg, ctx, pool, opaque)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Formula::Exists(v, body) => {
            for cand in pool {
                let inner = asg.clone().with(v, cand.clone());
                if eval_formula(body, &inner, ctx, pool, opaque)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Formula::Forall(_, _) => Err(Error::EvalUnsupported("universal quantifiers")),
        Formula::Opaque(at) => {
            let args = at
                .args
                .iter()
                .map(|arg| eval_term(arg, asg, ctx))
                .collect::<Result<Vec<_>>>()?;
            opaque(at, &args)
        }
    }
}

/// Semantics for the degree atoms; membership atoms stay opaque and error
/// out if reached.
pub fn standard_opaque_semantics(
) -> impl Fn(&OpaqueAtom, &[RatFunc]) -> Result<bool> {
    |at: &OpaqueAtom, args: &[RatFunc]| match at.name.as_str() {
        "deg_ge" => Ok(args[0].degree() >= args[1].degree()),
        "deg_positive" => Ok(matches!(args[0].degree(), Degree::Finite(d) if d > 0)),
        other => Err(Error::UnknownAtom(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FqElem;
    use crate::formula::build_s_ab;

    #[test]
    fn s_membership_spot_check() {
        // x = 2 lies in S_{0,0}: the equation degenerates to x^2 = 4.
        let ctx = FieldCtx::new(3, 1).unwrap();
        let s = build_s_ab();
        let asg = Assignment::new()
            .with("x", RatFunc::constant(FqElem(2)))
            .with("a", RatFunc::zero())
            .with("b", RatFunc::zero());
        let pool: Vec<RatFunc> = ctx.elements().map(RatFunc::constant).collect();
        let sem = standard_opaque_semantics();
        assert!(eval_formula(&s, &asg, &ctx, &pool, &sem).unwrap());

        // x = t is not: t^2 = 4 has no solution.
        let asg = Assignment::new()
            .with("x", RatFunc::t())
            .with("a", RatFunc::zero())
            .with("b", RatFunc::zero());
        assert!(!eval_formula(&s, &asg, &ctx, &pool, &sem).unwrap());
    }

    #[test]
    fn forall_is_rejected() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let f = Formula::forall("y", Formula::Eq(Term::var("y"), Term::Zero));
        let sem = standard_opaque_semantics();
        assert_eq!(
            eval_formula(&f, &Assignment::new(), &ctx, &[], &sem).unwrap_err(),
            Error::EvalUnsupported("universal quantifiers")
        );
    }
}
