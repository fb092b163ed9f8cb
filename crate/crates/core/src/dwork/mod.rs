//! The twisted Dwork operator `G = Ψ_q ∘ H` on monomials `t^u`.
//!
//! `H(t) = t^{γ(1−Q)} Π_j θ_Q(a_j t^{w_j})` with `a_j` Teichmüller and
//! `θ_Q(z) = exp(πz − πz^Q)`. Since `γ(1−Q) = k·(1 + q + … + q^{m−1})` is an
//! integer vector, the series is a Laurent polynomial in `t` up to terms that
//! vanish identically mod `p^M`. The operator acts on `t^u` for integers `u`
//! with `u + γ ∈ δ`, ordered by the weight `d(u + γ)`.

mod operator;
mod series;

use std::sync::Arc;

use thiserror::Error;

pub use operator::{
    auto_weight_cap, char_series, matrix_build, tail_bound, trace_level_series, trace_matrix_power,
    DworkMatrix, TraceRoute, TraceValue, MAX_MATRIX_DIM,
};
pub use series::{h_series, SeriesOnCone};

use crate::finite_field::{FieldError, FqElement};
use crate::padic::{teichmueller, PadicError, RamifiedElement, RingParams};
use crate::polytope::{enumerate_shifted, LatticePointSet, NewtonData, PolytopeError};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DworkError {
    #[error("twist γ = {gamma:?} is not in the cone over the columns")]
    TwistOutsideCone { gamma: Vec<Rational> },
    #[error("coefficient a_{index} is not a Teichmüller representative")]
    NotTeichmueller { index: usize },
    #[error("exponent {exponent:?} has weight {weight} beyond the stored support {cap}")]
    SupportTooSmall {
        exponent: Vec<i64>,
        weight: Rational,
        cap: Rational,
    },
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
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Character exponents `k ∈ Z^n` and the induced `γ = k/(1−q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistData {
    k: Vec<i64>,
    q: u64,
    gamma: Vec<Rational>,
}

impl TwistData {
    pub fn new(k: Vec<i64>, q: u64) -> Self {
        let den = 1 - q as i64;
        let gamma = k.iter().map(|&x| Rational::new(x, den)).collect();
        Self { k, q, gamma }
    }

    /// The untwisted case `k = 0`.
    pub fn trivial(n: usize, q: u64) -> Self {
        Self::new(vec![0; n], q)
    }

    pub fn k(&self) -> &[i64] {
        &self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn gamma(&self) -> &[Rational] {
        &self.gamma
    }

    pub fn is_trivial(&self) -> bool {
        self.k.iter().all(|&x| x == 0)
    }

    /// `γ(1 − q^m) = k·(1 + q + … + q^{m−1})`.
    pub fn shift(&self, m: u32) -> Vec<i64> {
        let geometric: i64 = (0..m).map(|i| (self.q as i64).pow(i)).sum();
        self.k.iter().map(|&x| x * geometric).collect()
    }

    /// `(q−1)γ = −k`.
    pub fn scaled_gamma(&self) -> Vec<i64> {
        self.k.iter().map(|&x| -x).collect()
    }
}

/// Checks that `γ` lies in the closed cone `δ`.
pub fn twist_validate(twist: &TwistData, nd: &NewtonData) -> Result<(), DworkError> {
    if twist.k.len() != nd.n() {
        return Err(DworkError::DimensionMismatch {
            got: twist.k.len(),
            expected: nd.n(),
        });
    }
    if nd.in_cone(&twist.scaled_gamma()) {
        Ok(())
    } else {
        Err(DworkError::TwistOutsideCone {
            gamma: twist.gamma.clone(),
        })
    }
}

/// Everything needed to build series, matrices and traces for one job.
#[derive(Debug, Clone)]
pub struct DworkSetup {
    params: Arc<RingParams>,
    nd: NewtonData,
    twist: TwistData,
    a: Vec<RamifiedElement>,
    weight_cap: Rational,
}

impl DworkSetup {
    /// `a_residues` are the coefficients `ā_j ∈ F_q`, lifted to Teichmüller
    /// representatives in `params` (whose residue field must be `F_q`).
    /// `weight_cap = None` picks [`auto_weight_cap`].
    pub fn new(
        params: &Arc<RingParams>,
        nd: NewtonData,
        k: Vec<i64>,
        a_residues: &[FqElement],
        weight_cap: Option<Rational>,
    ) -> Result<Self, DworkError> {
        let q = params.p().pow(params.s() as u32);
        let twist = TwistData::new(k, q);
        twist_validate(&twist, &nd)?;
        let big_n = nd.config().num_columns();
        if a_residues.len() != big_n {
            return Err(DworkError::DimensionMismatch {
                got: a_residues.len(),
                expected: big_n,
            });
        }
        let field = params.residue_field();
        for x in a_residues {
            field.element(x.coeffs().to_vec())?;
        }
        let a = a_residues.iter().map(|x| teichmueller(x, params)).collect();
        let weight_cap = match weight_cap {
            Some(d) => d,
            None => auto_weight_cap(&nd, &twist, params.p(), params.precision()),
        };
        Ok(Self {
            params: params.clone(),
            nd,
            twist,
            a,
            weight_cap,
        })
    }

    pub fn params(&self) -> &Arc<RingParams> {
        &self.params
    }

    pub fn newton_data(&self) -> &NewtonData {
        &self.nd
    }

    pub fn twist(&self) -> &TwistData {
        &self.twist
    }

    pub fn coefficients(&self) -> &[RamifiedElement] {
        &self.a
    }

    pub fn weight_cap(&self) -> Rational {
        self.weight_cap
    }

    pub fn tail(&self) -> Rational {
        tail_bound(&self.nd, &self.twist, self.params.p(), self.weight_cap)
    }

    /// Basis exponents `u` with `u + γ ∈ δ`, `d(u + γ) ≤ D`.
    pub fn basis(&self) -> Result<LatticePointSet, DworkError> {
        Ok(enumerate_shifted(
            &self.nd,
            self.twist.gamma(),
            self.weight_cap,
        )?)
    }

    pub fn series(&self, m: u32) -> Result<SeriesOnCone, DworkError> {
        h_series(&self.params, &self.a, &self.twist, m, &self.nd, None)
    }

    pub fn matrix(&self) -> Result<DworkMatrix, DworkError> {
        let basis = self.basis()?;
        if basis.len() > MAX_MATRIX_DIM {
            return Err(DworkError::BudgetExceeded {
                what: "matrix dimension",
                got: basis.len() as u64,
                limit: MAX_MATRIX_DIM as u64,
            });
        }
        let series = self.series(1)?;
        matrix_build(&series, basis, self.tail())
    }

    /// `Tr(G^m)` by the requested route. The matrix route rebuilds the
    /// matrix; callers needing several levels should build it once.
    pub fn trace(&self, m: u32, route: TraceRoute) -> Result<TraceValue, DworkError> {
        match route {
            TraceRoute::MatrixPower => trace_matrix_power(&self.matrix()?, m),
            TraceRoute::LevelSeries => {
                let basis = self.basis()?;
                let series = self.series(m)?;
                trace_level_series(&series, &basis, self.tail())
            }
        }
    }
}
