//! The coefficient ring `(W(F_{p^s}) / p^M)[π] / (π^{p−1} + p)`.
//!
//! Every element is stored exactly mod `p^M`; there is no rounding, so sums
//! and products are independent of evaluation order. Precision bookkeeping
//! (how many of the `M` digits are meaningful after truncation or exact
//! division) is carried alongside values by the callers.

mod charpoly;
mod embed;
mod matrix;
mod ring;
mod splitting;

use thiserror::Error;

pub use charpoly::char_series_division_free;
pub use embed::{ring_embed, RingEmbedding};
pub use matrix::RingMatrix;
pub use ring::{
    multiply, pi_ord, pi_power_over_factorial, ring_create, sigma_and_factorial_ord,
    sigma_bound_delta, PiOrd, RamifiedElement, RingParams, Term, MODULUS_LIMIT,
};
pub use splitting::{
    splitting_coefficients, splitting_cutoff, teichmueller, theta_one, SplittingSeries,
};

use crate::finite_field::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = {0} is not supported: π^(p−1) + p degenerates")]
    UnsupportedPrime(u64),
    #[error("precision {p}^{precision} is outside the supported range")]
    PrecisionTooLarge { p: u64, precision: u32 },
    #[error("operands belong to different rings")]
    ParamsMismatch,
    #[error("precision budget exceeded: need {needed} digits, have {available}")]
    PrecisionBudgetExceeded { needed: u32, available: u32 },
    #[error("element is not divisible by p^{v}")]
    NotDivisible { v: u32 },
    #[error("element is not a unit")]
    NotAUnit,
    #[error("coordinate vector has length {got}, expected {expected}")]
    BadLength { got: usize, expected: usize },
    #[error("{0} is not a power of p")]
    NotAPowerOfP(u64),
    #[error("unramified degree {inner} does not divide {outer}")]
    NotASubring { inner: usize, outer: usize },
    #[error("modulus has no root in the target residue field")]
    NoRoot,
    #[error("matrix is not square or dimensions disagree")]
    Shape,
    #[error(transparent)]
    Field(#[from] FieldError),
}
