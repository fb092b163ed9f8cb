use thiserror::Error;

use crate::dwork::DworkError;
use crate::finite_field::FieldError;
use crate::gkz::GkzError;
use crate::lfunction::LError;
use crate::padic::PadicError;
use crate::polytope::PolytopeError;

/// Any error raised by the library, by module of origin.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Gkz(#[from] GkzError),
    #[error(transparent)]
    Dwork(#[from] DworkError),
    #[error(transparent)]
    LFunction(#[from] LError),
}

impl Error {
    /// True for errors raised by a size or work guard rather than bad input.
    pub fn is_budget(&self) -> bool {
        use crate::polytope::PolytopeError as P;
        matches!(
            self,
            Error::Dwork(DworkError::BudgetExceeded { .. })
                | Error::Dwork(DworkError::Polytope(P::TooLarge { .. }))
                | Error::LFunction(LError::BudgetExceeded { .. })
                | Error::Polytope(P::TooLarge { .. })
                | Error::Gkz(GkzError::Timeout(_))
        )
    }
}
