use rayon::prelude::*;

use super::{DworkError, SeriesOnCone, TwistData};
use crate::padic::{char_series_division_free, RamifiedElement, RingMatrix};
use crate::polytope::{LatticePointSet, NewtonData};
use crate::Rational;

/// Largest basis for which the dense matrix is built.
pub const MAX_MATRIX_DIM: usize = 2000;

/// How `Tr(G^m)` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceRoute {
    /// Trace of the `m`-th power of the level-1 matrix.
    MatrixPower,
    /// `Σ_u` of the diagonal coefficients of the level-`m` series directly.
    LevelSeries,
}

/// A ring value together with the number of `p`-adic digits it is
/// certified to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceValue {
    pub value: RamifiedElement,
    pub certified: u32,
}

/// The truncated matrix of `G` on the basis, with `entry(w, u) = H_{qw − u}`.
#[derive(Debug, Clone)]
pub struct DworkMatrix {
    basis: LatticePointSet,
    matrix: RingMatrix,
    tail_bound: Rational,
    certified: u32,
}

impl DworkMatrix {
    pub fn basis(&self) -> &LatticePointSet {
        &self.basis
    }

    pub fn matrix(&self) -> &RingMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Lower bound on `ord_p` of everything the truncation discards.
    pub fn tail_bound(&self) -> Rational {
        self.tail_bound
    }

    /// `min(M, ⌊tail bound⌋)`.
    pub fn certified_precision(&self) -> u32 {
        self.certified
    }
}

/// `D = ⌈M p q / ((p−1)(q−1))⌉ + d(−k) + 2`, enough for the tail bound to
/// reach `M`.
pub fn auto_weight_cap(nd: &NewtonData, twist: &TwistData, p: u64, precision: u32) -> Rational {
    let q = twist.q() as i64;
    let p = p as i64;
    let base = Rational::new(precision as i64 * p * q, (p - 1) * (q - 1)).ceil();
    base + gamma_weight(nd, twist) + Rational::from(2)
}

/// `(p−1)(q−1)/(pq) · (D − d(−k))`.
pub fn tail_bound(nd: &NewtonData, twist: &TwistData, p: u64, weight_cap: Rational) -> Rational {
    let q = twist.q() as i64;
    let p = p as i64;
    Rational::new((p - 1) * (q - 1), p * q) * (weight_cap - gamma_weight(nd, twist))
}

fn gamma_weight(nd: &NewtonData, twist: &TwistData) -> Rational {
    nd.weight(&twist.scaled_gamma())
        .value()
        .unwrap_or_else(|| Rational::from(0))
}

fn certify(tail: Rational, precision: u32) -> u32 {
    let t = tail.floor().to_integer().max(0);
    (t.min(precision as i64)) as u32
}

/// Builds the matrix of `G` from the level-1 series.
pub fn matrix_build(
    series: &SeriesOnCone,
    basis: LatticePointSet,
    tail: Rational,
) -> Result<DworkMatrix, DworkError> {
    let dim = basis.len();
    if dim > MAX_MATRIX_DIM {
        return Err(DworkError::BudgetExceeded {
            what: "matrix dimension",
            got: dim as u64,
            limit: MAX_MATRIX_DIM as u64,
        });
    }
    let q = series.q_power() as i64;
    let points = basis.points();
    let rows: Vec<Vec<RamifiedElement>> = points
        .par_iter()
        .map(|w| {
            points
                .iter()
                .map(|u| {
                    let y: Vec<i64> = w.iter().zip(u).map(|(a, b)| q * a - b).collect();
                    series.coefficient(&y)
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let matrix = RingMatrix::from_fn(series.params(), dim, dim, |i, j| rows[i][j].clone());
    let certified = certify(tail, series.params().precision());
    Ok(DworkMatrix {
        basis,
        matrix,
        tail_bound: tail,
        certified,
    })
}

/// `Tr(G^m)` as the trace of a matrix power.
pub fn trace_matrix_power(dm: &DworkMatrix, m: u32) -> Result<TraceValue, DworkError> {
    let value = match m {
        0 => return Err(DworkError::ZeroLevel),
        1 => dm.matrix.trace()?,
        _ => {
            let rest = dm.matrix.pow(m as u64 - 1)?;
            dm.matrix.trace_of_product(&rest)?
        }
    };
    Ok(TraceValue {
        value,
        certified: dm.certified,
    })
}

/// `Tr(G^m) = Σ_u H^{(m)}_{(Q−1)u}` over the basis, from the level-`m`
/// series.
pub fn trace_level_series(
    series: &SeriesOnCone,
    basis: &LatticePointSet,
    tail: Rational,
) -> Result<TraceValue, DworkError> {
    let q1 = series.q_power() as i64 - 1;
    let parts: Vec<RamifiedElement> = basis
        .points()
        .par_iter()
        .map(|u| {
            let y: Vec<i64> = u.iter().map(|&x| q1 * x).collect();
            series.coefficient(&y)
        })
        .collect::<Result<_, _>>()?;
    let mut value = RamifiedElement::zero(series.params());
    for x in &parts {
        value.add_assign(x);
    }
    Ok(TraceValue {
        value,
        certified: certify(tail, series.params().precision()),
    })
}

/// `det(I − T·G) mod T^{K+1}` with its certified precision.
pub fn char_series(
    dm: &DworkMatrix,
    degree: Option<usize>,
) -> Result<(Vec<RamifiedElement>, u32), DworkError> {
    Ok((char_series_division_free(&dm.matrix, degree)?, dm.certified))
}
