//! First-order formulas over the ring language {0, 1, +, -, *} with the
//! extra constant t, plus opaque budgeted atoms.
//!
//! An opaque atom stands for a subformula whose internal structure lives in
//! an external construction; only its quantifier budget and polarity matter
//! here. Quantifier counting is prenex-aware: existential blocks merge across
//! disjunctions and universal blocks merge across conjunctions (both are the
//! standard variable-reuse equivalences), everything else adds up. Negating a
//! formula never changes its count; negating an opaque existential atom
//! yields an opaque universal atom of equal budget.

mod builders;
mod eval;

pub use builders::{
    build_jacobson, build_psi, build_s_ab, build_t_ab, build_t_units,
    build_universal_definition, QuantifierReport, ReportItem,
};
pub use eval::{eval_formula, eval_term, standard_opaque_semantics, Assignment};

use std::collections::BTreeSet;
use std::fmt::Write as _;

/// Terms of the ring language with constant t. `Param` is a named constant
/// from F_q (a parameter in the logical sense); `Var` is a quantifiable
/// variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(String),
    Param(String),
    Zero,
    One,
    T,
    Add(Box<Term>, Box<Term>),
    Sub(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn param(name: &str) -> Term {
        Term::Param(name.to_string())
    }

    pub fn add(self, rhs: Term) -> Term {
        Term::Add(Box::new(self), Box::new(rhs))
    }

    pub fn sub(self, rhs: Term) -> Term {
        Term::Sub(Box::new(self), Box::new(rhs))
    }

    pub fn mul(self, rhs: Term) -> Term {
        Term::Mul(Box::new(self), Box::new(rhs))
    }

    pub fn square(self) -> Term {
        self.clone().mul(self)
    }

    /// The numeral n as iterated sums of 1.
    pub fn int(n: u64) -> Term {
        match n {
            0 => Term::Zero,
            1 => Term::One,
            _ => Term::int(n - 1).add(Term::One),
        }
    }

    /// self^n by iterated multiplication (n >= 1).
    pub fn pow(self, n: u64) -> Term {
        assert!(n >= 1);
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.mul(self.clone());
        }
        acc
    }
}

/// Polarity of an opaque atom: the kind of quantifier prefix its hidden
/// definition carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Existential,
    Universal,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Existential => Polarity::Universal,
            Polarity::Universal => Polarity::Existential,
        }
    }
}

/// A subformula treated as a black box with a declared quantifier budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpaqueAtom {
    pub name: String,
    pub args: Vec<Term>,
    pub budget: u64,
    pub polarity: Polarity,
}

/// First-order formula AST.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
    Opaque(OpaqueAtom),
}

impl Formula {
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn exists(var: &str, body: Formula) -> Formula {
        Formula::Exists(var.to_string(), Box::new(body))
    }

    pub fn forall(var: &str, body: Formula) -> Formula {
        Formula::Forall(var.to_string(), Box::new(body))
    }

    /// Total quantifier count: explicit quantifiers plus opaque budgets, with
    /// prenex block merging as described in the module docs.
    pub fn quantifier_count(&self) -> u64 {
        count(self, true)
    }

    /// Free variables (not parameters).
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut free = BTreeSet::new();
        let mut bound = Vec::new();
        collect_free(self, &mut bound, &mut free);
        free
    }

    /// Parameter names appearing anywhere.
    pub fn params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        collect_params(self, &mut out);
        out
    }

    /// Negation normal form: negations pushed to atoms, quantifiers and
    /// opaque polarities flipped along the way.
    pub fn nnf(&self) -> Formula {
        nnf_at(self, true)
    }

    /// Crude prenex classification of the NNF.
    pub fn prenex_class(&self) -> PrenexClass {
        let (has_e, has_u) = profile(self, true);
        match (has_e, has_u) {
            (false, false) => PrenexClass::QuantifierFree,
            (true, false) => PrenexClass::Existential,
            (false, true) => PrenexClass::Universal,
            (true, true) => PrenexClass::Mixed,
        }
    }

    /// Deterministic s-expression rendering.
    pub fn to_sexpr(&self) -> String {
        let mut out = String::new();
        write_formula(self, &mut out);
        out
    }

    /// Replaces every occurrence of a parameter by a term.
    pub fn substitute_param(&self, name: &str, value: &Term) -> Formula {
        map_terms(self, &|t| subst_param_term(t, name, value))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrenexClass {
    QuantifierFree,
    Existential,
    Universal,
    Mixed,
}

impl PrenexClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PrenexClass::QuantifierFree => "quantifier-free",
            PrenexClass::Existential => "existential",
            PrenexClass::Universal => "universal",
            PrenexClass::Mixed => "mixed",
        }
    }
}

/// Which effective quantifier kinds occur under the given polarity:
/// (existential, universal).
fn profile(f: &Formula, pos: bool) -> (bool, bool) {
    match f {
        Formula::Eq(_, _) => (false, false),
        Formula::Not(g) => profile(g, !pos),
        Formula::And(fs) | Formula::Or(fs) => fs.iter().fold((false, false), |(e, u), g| {
            let (ge, gu) = profile(g, pos);
            (e || ge, u || gu)
        }),
        Formula::Exists(_, b) => {
            let (e, u) = profile(b, pos);
            if pos {
                (true, u)
            } else {
                (e, true)
            }
        }
        Formula::Forall(_, b) => {
            let (e, u) = profile(b, pos);
            if pos {
                (e, true)
            } else {
                (true, u)
            }
        }
        Formula::Opaque(at) => {
            if at.budget == 0 {
                return (false, false);
            }
            let eff = if pos { at.polarity } else { at.polarity.flip() };
            match eff {
                Polarity::Existential => (true, false),
                Polarity::Universal => (false, true),
            }
        }
    }
}

fn count(f: &Formula, pos: bool) -> u64 {
    match f {
        Formula::Eq(_, _) => 0,
        Formula::Opaque(at) => at.budget,
        Formula::Not(g) => count(g, !pos),
        Formula::Exists(_, b) | Formula::Forall(_, b) => 1 + count(b, pos),
        Formula::And(fs) => combine(fs, pos, false),
        Formula::Or(fs) => combine(fs, pos, true),
    }
}

fn combine(fs: &[Formula], pos: bool, syntactic_or: bool) -> u64 {
    let counts: Vec<u64> = fs.iter().map(|g| count(g, pos)).collect();
    let effective_or = syntactic_or == pos;
    let mergeable = if effective_or {
        // exists-blocks merge across a disjunction
        fs.iter().all(|g| !profile(g, pos).1)
    } else {
        // forall-blocks merge across a conjunction
        fs.iter().all(|g| !profile(g, pos).0)
    };
    if mergeable {
        counts.into_iter().max().unwrap_or(0)
    } else {
        counts.into_iter().sum()
    }
}

fn nnf_at(f: &Formula, pos: bool) -> Formula {
    match f {
        Formula::Eq(a, b) => {
            let eq = Formula::Eq(a.clone(), b.clone());
            if pos {
                eq
            } else {
                eq.not()
            }
        }
        Formula::Opaque(at) => {
            if pos {
                Formula::Opaque(at.clone())
            } else {
                Formula::Opaque(OpaqueAtom {
                    name: at.name.clone(),
                    args: at.args.clone(),
                    budget: at.budget,
                    polarity: at.polarity.flip(),
                })
            }
        }
        Formula::Not(g) => nnf_at(g, !pos),
        Formula::And(fs) => {
            let parts = fs.iter().map(|g| nnf_at(g, pos)).collect();
            if pos {
                Formula::And(parts)
            } else {
                Formula::Or(parts)
            }
        }
        Formula::Or(fs) => {
            let parts = fs.iter().map(|g| nnf_at(g, pos)).collect();
            if pos {
                Formula::Or(parts)
            } else {
                Formula::And(parts)
            }
        }
        Formula::Exists(v, b) => {
            let body = Box::new(nnf_at(b, pos));
            if pos {
                Formula::Exists(v.clone(), body)
            } else {
                Formula::Forall(v.clone(), body)
            }
        }
        Formula::Forall(v, b) => {
            let body = Box::new(nnf_at(b, pos));
            if pos {
                Formula::Forall(v.clone(), body)
            } else {
                Formula::Exists(v.clone(), body)
            }
        }
    }
}

fn collect_free(f: &Formula, bound: &mut Vec<String>, free: &mut BTreeSet<String>) {
    match f {
        Formula::Eq(a, b) => {
            term_vars(a, bound, free);
            term_vars(b, bound, free);
        }
        Formula::Not(g) => collect_free(g, bound, free),
        Formula::And(fs) | Formula::Or(fs) => {
            for g in fs {
                collect_free(g, bound, free);
            }
        }
        Formula::Exists(v, b) | Formula::Forall(v, b) => {
            bound.push(v.clone());
            collect_free(b, bound, free);
            bound.pop();
        }
        Formula::Opaque(at) => {
            for arg in &at.args {
                term_vars(arg, bound, free);
            }
        }
    }
}

fn term_vars(t: &Term, bound: &[String], free: &mut BTreeSet<String>) {
    match t {
        Term::Var(v) => {
            if !bound.contains(v) {
                free.insert(v.clone());
            }
        }
        Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) => {
            term_vars(a, bound, free);
            term_vars(b, bound, free);
        }
        Term::Param(_) | Term::Zero | Term::One | Term::T => {}
    }
}

fn collect_params(f: &Formula, out: &mut BTreeSet<String>) {
    let mut on_term = |t: &Term| collect_params_term(t, out);
    match f {
        Formula::Eq(a, b) => {
            on_term(a);
            on_term(b);
        }
        Formula::Not(g) => collect_params(g, out),
        Formula::And(fs) | Formula::Or(fs) => {
            for g in fs {
                collect_params(g, out);
            }
        }
        Formula::Exists(_, b) | Formula::Forall(_, b) => collect_params(b, out),
        Formula::Opaque(at) => {
            for arg in &at.args {
                collect_params_term(arg, out);
            }
        }
    }
}

fn collect_params_term(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Param(p) => {
            out.insert(p.clone());
        }
        Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) => {
            collect_params_term(a, out);
            collect_params_term(b, out);
        }
        Term::Var(_) | Term::Zero | Term::One | Term::T => {}
    }
}

fn map_terms(f: &Formula, map: &dyn Fn(&Term) -> Term) -> Formula {
    match f {
        Formula::Eq(a, b) => Formula::Eq(map(a), map(b)),
        Formula::Not(g) => map_terms(g, map).not(),
        Formula::And(fs) => Formula::And(fs.iter().map(|g| map_terms(g, map)).collect()),
        Formula::Or(fs) => Formula::Or(fs.iter().map(|g| map_terms(g, map)).collect()),
        Formula::Exists(v, b) => Formula::Exists(v.clone(), Box::new(map_terms(b, map))),
        Formula::Forall(v, b) => Formula::Forall(v.clone(), Box::new(map_terms(b, map))),
        Formula::Opaque(at) => Formula::Opaque(OpaqueAtom {
            name: at.name.clone(),
            args: at.args.iter().map(map).collect(),
            budget: at.budget,
            polarity: at.polarity,
        }),
    }
}

fn subst_param_term(t: &Term, name: &str, value: &Term) -> Term {
    match t {
        Term::Param(p) if p == name => value.clone(),
        Term::Add(a, b) => {
            subst_param_term(a, name, value).add(subst_param_term(b, name, value))
        }
        Term::Sub(a, b) => {
            subst_param_term(a, name, value).sub(subst_param_term(b, name, value))
        }
        Term::Mul(a, b) => {
            subst_param_term(a, name, value).mul(subst_param_term(b, name, value))
        }
        other => other.clone(),
    }
}

fn write_term(t: &Term, out: &mut String) {
    match t {
        Term::Var(v) => out.push_str(v),
        Term::Param(p) => out.push_str(p),
        Term::Zero => out.push('0'),
        Term::One => out.push('1'),
        Term::T => out.push('t'),
        Term::Add(a, b) => write_binary("+", a, b, out),
        Term::Sub(a, b) => write_binary("-", a, b, out),
        Term::Mul(a, b) => write_binary("*", a, b, out),
    }
}

fn write_binary(op: &str, a: &Term, b: &Term, out: &mut String) {
    let _ = write!(out, "({op} ");
    write_term(a, out);
    out.push(' ');
    write_term(b, out);
    out.push(')');
}

fn write_formula(f: &Formula, out: &mut String) {
    match f {
        Formula::Eq(a, b) => {
            out.push_str("(= ");
            write_term(a, out);
            out.push(' ');
            write_term(b, out);
            out.push(')');
        }
        Formula::Not(g) => {
            out.push_str("(not ");
            write_formula(g, out);
            out.push(')');
        }
        Formula::And(fs) | Formula::Or(fs) => {
            out.push_str(if matches!(f, Formula::And(_)) { "(and" } else { "(or" });
            for g in fs {
                out.push(' ');
                write_formula(g, out);
            }
            out.push(')');
        }
        Formula::Exists(v, b) => {
            let _ = write!(out, "(exists {v} ");
            write_formula(b, out);
            out.push(')');
        }
        Formula::Forall(v, b) => {
            let _ = write!(out, "(forall {v} ");
            write_formula(b, out);
            out.push(')');
        }
        Formula::Opaque(at) => {
            let pol = match at.polarity {
                Polarity::Existential => "existential",
                Polarity::Universal => "universal",
            };
            let _ = write!(out, "(opaque {} {} {pol}", at.name, at.budget);
            for arg in &at.args {
                out.push(' ');
                write_term(arg, out);
            }
            out.push(')');
        }
    }
}
