use std::collections::HashMap;
use std::sync::Arc;

use super::{DworkError, TwistData};
use crate::padic::{splitting_cutoff, RamifiedElement, RingParams, SplittingSeries};
use crate::polytope::NewtonData;
use crate::Rational;

/// Coefficients of `H(t) = t^{shift} Σ_x E_x t^x` at level `m`, for `x` in
/// the cone. Every `E_x` omitted from the map is zero mod `p^M`.
#[derive(Debug, Clone)]
pub struct SeriesOnCone {
    params: Arc<RingParams>,
    nd: NewtonData,
    level: u32,
    q_power: u64,
    shift: Vec<i64>,
    terms: HashMap<Vec<i64>, RamifiedElement>,
    /// `E_x = 0` whenever `d(x) ≥ zero_weight`.
    zero_weight: Rational,
    support_cap: Rational,
}

impl SeriesOnCone {
    pub fn params(&self) -> &Arc<RingParams> {
        &self.params
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn q_power(&self) -> u64 {
        self.q_power
    }

    pub fn shift(&self) -> &[i64] {
        &self.shift
    }

    pub fn zero_weight(&self) -> Rational {
        self.zero_weight
    }

    pub fn support_cap(&self) -> Rational {
        self.support_cap
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Stored `(x, E_x)` pairs, i.e. the exponent relative to the shift.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &RamifiedElement)> {
        self.terms.iter()
    }

    /// `ord_p(E_x) ≥ (p−1)·d(x)/(p·Q)`.
    pub fn valuation_floor(&self, x: &[i64]) -> Option<Rational> {
        let p = self.params.p() as i64;
        let d = self.nd.weight(x).value()?;
        Some(d * Rational::new(p - 1, p * self.q_power as i64))
    }

    /// Coefficient of `t^y` in `H`.
    pub fn coefficient(&self, y: &[i64]) -> Result<RamifiedElement, DworkError> {
        let x: Vec<i64> = y.iter().zip(&self.shift).map(|(a, b)| a - b).collect();
        let zero = || RamifiedElement::zero(&self.params);
        let Some(d) = self.nd.weight(&x).value() else {
            return Ok(zero());
        };
        if d >= self.zero_weight {
            return Ok(zero());
        }
        if d > self.support_cap {
            return Err(DworkError::SupportTooSmall {
                exponent: x,
                weight: d,
                cap: self.support_cap,
            });
        }
        Ok(self.terms.get(&x).cloned().unwrap_or_else(zero))
    }
}

/// Expands `Π_j Σ_i c_i a_j^i t^{i w_j}` at level `m` (so `Q = q^m`).
///
/// Each term carries the least index sum `Σ i_j` among its contributions;
/// since `ord_p(c_i) ≥ (p−1)i/(pQ)`, anything whose index sum reaches the
/// splitting cutoff is zero and is never formed. The result is exact mod
/// `p^M`. Terms with `d(x) > support_cap` are dropped (`None` keeps all).
pub fn h_series(
    params: &Arc<RingParams>,
    a: &[RamifiedElement],
    twist: &TwistData,
    m: u32,
    nd: &NewtonData,
    support_cap: Option<Rational>,
) -> Result<SeriesOnCone, DworkError> {
    if m == 0 {
        return Err(DworkError::ZeroLevel);
    }
    let columns = nd.config().columns();
    if a.len() != columns.len() {
        return Err(DworkError::DimensionMismatch {
            got: a.len(),
            expected: columns.len(),
        });
    }
    let q = twist.q();
    let q_power = q.checked_pow(m).ok_or(DworkError::BudgetExceeded {
        what: "level",
        got: m as u64,
        limit: (64 / q.ilog2().max(1)) as u64,
    })?;
    for (index, x) in a.iter().enumerate() {
        if x.pow(q) != *x {
            return Err(DworkError::NotTeichmueller { index });
        }
    }
    let i_max = splitting_cutoff(params.p(), params.precision(), q_power);
    if i_max > SERIES_INDEX_LIMIT {
        return Err(DworkError::BudgetExceeded {
            what: "splitting series length",
            got: i_max,
            limit: SERIES_INDEX_LIMIT,
        });
    }
    let split = SplittingSeries::with_cutoff(params, q_power, i_max)?;
    let n = nd.n();

    let mut terms: HashMap<Vec<i64>, (RamifiedElement, u64)> = HashMap::new();
    terms.insert(vec![0; n], (RamifiedElement::one(params), 0));
    for (aj, w) in a.iter().zip(&columns) {
        if aj.is_zero() {
            continue;
        }
        // g_i = c_i a_j^i for i < i_max.
        let mut g = Vec::with_capacity(i_max as usize);
        let mut power = RamifiedElement::one(params);
        for c in &split.coeffs()[..i_max as usize] {
            g.push(c.mul(&power));
            power = power.mul(aj);
        }
        let mut next: HashMap<Vec<i64>, (RamifiedElement, u64)> =
            HashMap::with_capacity(terms.len() * 2);
        for (x, (coef, floor)) in &terms {
            for (i, gi) in g.iter().enumerate().take((i_max - floor) as usize) {
                if gi.is_zero() {
                    continue;
                }
                let prod = coef.mul(gi);
                if prod.is_zero() {
                    continue;
                }
                let key: Vec<i64> = x.iter().zip(w).map(|(a, b)| a + i as i64 * b).collect();
                let f = floor + i as u64;
                next.entry(key)
                    .and_modify(|(c, fl)| {
                        c.add_assign(&prod);
                        *fl = (*fl).min(f);
                    })
                    .or_insert((prod, f));
            }
        }
        terms = next;
    }

    let zero_weight = Rational::from(i_max as i64);
    let support_cap = support_cap.unwrap_or(zero_weight);
    let terms = terms
        .into_iter()
        .filter(|(x, (c, _))| {
            !c.is_zero() && nd.weight(x).value().is_some_and(|d| d <= support_cap)
        })
        .map(|(x, (c, _))| (x, c))
        .collect();
    Ok(SeriesOnCone {
        params: params.clone(),
        nd: nd.clone(),
        level: m,
        q_power,
        shift: twist.shift(m),
        terms,
        zero_weight,
        support_cap,
    })
}

/// Longest splitting series expanded; beyond it the term count explodes.
const SERIES_INDEX_LIMIT: u64 = 20_000;
