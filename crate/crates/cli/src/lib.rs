//! Command-line front end for `gkz-dwork`: job files in, JSON reports out.
//!
//! A job names a prime `p`, a field degree `f`, an exponent matrix `A`, a
//! twist `k` (with `γ = −k/(q−1)`), coefficients `ā_j ∈ F_q` and precision
//! settings. Every command validates the job first and then writes one JSON
//! document with `"schema": 1`.

mod commands;
mod job;
mod report;

use thiserror::Error;

pub use commands::{run, Command, Report};
pub use job::{
    parse_job, validate, CoefficientInput, Job, JobConfig, PrecisionConfig, RationalInput,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot parse job: {0}")]
    Parse(String),
    #[error("invalid job ({invariant}): {detail}")]
    Validation {
        invariant: &'static str,
        detail: String,
    },
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("computation failed: {0}")]
    Compute(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit status. Identity failures are not errors; see
    /// [`Report::passed`].
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Validation { .. } => 2,
            CliError::Budget(_) => 4,
            CliError::Compute(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<gkz_dwork::Error> for CliError {
    fn from(e: gkz_dwork::Error) -> Self {
        if e.is_budget() {
            CliError::Budget(e.to_string())
        } else {
            CliError::Compute(e.to_string())
        }
    }
}

macro_rules! via_library_error {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                gkz_dwork::Error::from(e).into()
            }
        })*
    };
}

via_library_error!(
    gkz_dwork::dwork::DworkError,
    gkz_dwork::gkz::GkzError,
    gkz_dwork::lfunction::LError,
    gkz_dwork::polytope::PolytopeError
);
