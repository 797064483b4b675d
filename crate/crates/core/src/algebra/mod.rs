//! Exact arithmetic for F_q, F_q[t], and F_q(t): field contexts, polynomials,
//! factorization, rational functions in canonical form, and the text format
//! used by the CLI and reports.

mod factor;
mod field;
mod poly;
mod ratfunc;
pub mod text;

pub use factor::{factor, is_irreducible, monic_irreducibles, Factorization};
pub use field::{FieldCtx, FqElem};
pub use poly::{all_polys_upto, monic_polys, Degree, Poly};
pub use ratfunc::RatFunc;
