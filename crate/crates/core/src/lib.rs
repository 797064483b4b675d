//! Exact computation in the rational function field F_q(t), odd q: places
//! and valuations, Legendre and tame Hilbert symbols, ramification sets of
//! quaternion algebras, construction of parameter pairs that pin down a
//! single finite place, a desk-scale verifier for the resulting description
//! of F_q[t] union its infinite localization, and first-order formula
//! assembly with exact quantifier accounting.

pub mod algebra;
pub mod definability;
pub mod error;
pub mod formula;
pub mod oracle;
pub mod places;
pub mod ramification;

pub use algebra::{Degree, FieldCtx, FqElem, Poly, RatFunc};
pub use definability::{DPair, PsiOrientation, TheoremReport, WitnessPair};
pub use error::{Error, Result};
pub use formula::{Formula, QuantifierReport};
pub use places::{Place, SquareClassAtInfinity, SymbolValue, Valuation};
pub use ramification::RamificationSet;
