//! Twisted exponential sums over finite fields, evaluated two ways.
//!
//! Given an integer exponent matrix `A` (columns `w_1..w_N`), character
//! exponents `γ` and coefficients `ā ∈ F_q^N`, this crate computes the sums
//!
//! ```text
//! S_m = Σ_{u ∈ (F_{q^m}^*)^n} χ(Norm u)^k · ψ(Tr Σ_j ā_j u^{w_j})
//! ```
//!
//! by direct enumeration, and independently as traces of powers of a truncated
//! Dwork operator acting on monomials `t^w`, `w` in the cone spanned by the
//! columns. Both routes live in the same exact ring
//! `(W(F_{p^s}) / p^M)[π] / (π^{p-1} + p)`, so agreement is checked digit by
//! digit up to a certified precision.
//!
//! Module map:
//!
//! * [`finite_field`]: `F_{p^s}` arithmetic, trace/norm, embeddings.
//! * [`padic`]: the coefficient ring, Teichmüller lifts, the splitting
//!   function `exp(πz − πz^Q)`, division-free characteristic series.
//! * [`polytope`]: Newton polytope combinatorics of `A`.
//! * [`gkz`]: the relation lattice, box/Euler operators, system emission.
//! * [`dwork`]: the twisted series, the Dwork matrix, traces.
//! * [`lfunction`]: brute-force oracles, L-series, Newton polygons.

pub mod dwork;
pub mod finite_field;
pub mod gkz;
pub mod lfunction;
pub mod padic;
pub mod polytope;

mod error;
mod util;

pub use error::Error;

/// Exact rationals used for weights, facet functionals and valuations.
pub type Rational = num_rational::Ratio<i64>;
