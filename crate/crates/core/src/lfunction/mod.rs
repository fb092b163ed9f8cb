//! Exponential sums by direct enumeration, and the L-series they generate.
//!
//! Two oracles compute `S_m`: one with characters (`θ(1)` and Teichmüller
//! powers), one by evaluating the splitting series at Teichmüller points.
//! Sums are assembled into `L = exp(Σ S_m T^m/m)`, or L is rebuilt from
//! `det(I − T·G)`; a polynomial is then recognised and its Newton polygon
//! computed.

mod oracle;
mod polygon;
mod series;

use thiserror::Error;

pub use oracle::{hyp_table, sums_oracle_characters, sums_oracle_series, SumProblem};
pub use polygon::{newton_polygon, rational_recognition, LPolynomial, NewtonPolygon};
pub use series::{l_from_charseries, l_series_from_sums, PowerSeriesT};

use crate::dwork::DworkError;
use crate::finite_field::FieldError;
use crate::padic::PadicError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LError {
    #[error("{what} is {got}, above the limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        got: u64,
        limit: u64,
    },
    #[error("expected {expected} entries, got {got}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("level must be at least 1")]
    ZeroLevel,
    #[error("sum does not lie in the coefficient ring of F_q")]
    NotInBaseRing,
    #[error("series has constant term other than 1")]
    NonUnitConstantTerm,
    #[error("series known to order {have}, recognition needs {need}")]
    InsufficientOrder { have: usize, need: usize },
    #[error("coefficient of T^{index} does not vanish: not a polynomial of the expected degree")]
    NotPolynomial { index: usize },
    #[error("coefficient of T^{index} is indistinguishable from 0 at its precision")]
    CoefficientBelowPrecision { index: usize },
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Dwork(#[from] DworkError),
}

/// `M′ = M − ⌈log_p m_max⌉ − 2`, the precision at which identities between
/// independently computed quantities are compared.
pub fn comparison_precision(precision: u32, p: u64, m_max: u64) -> u32 {
    precision.saturating_sub(crate::util::ceil_log(m_max, p) + 2)
}
