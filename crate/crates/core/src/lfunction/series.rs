use std::sync::Arc;

use super::LError;
use crate::padic::{ring_create, RamifiedElement, RingParams};
use crate::util::{binomial, valuation};

/// A truncated power series `Σ_{i ≤ order} c_i T^i` in which `c_i` is known
/// mod `p^{precision[i]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeriesT {
    coeffs: Vec<RamifiedElement>,
    precision: Vec<u32>,
}

impl PowerSeriesT {
    pub fn new(coeffs: Vec<RamifiedElement>, precision: Vec<u32>) -> Result<Self, LError> {
        if coeffs.len() != precision.len() {
            return Err(LError::DimensionMismatch {
                got: precision.len(),
                expected: coeffs.len(),
            });
        }
        if coeffs.is_empty() {
            return Err(LError::DimensionMismatch {
                got: 0,
                expected: 1,
            });
        }
        Ok(Self { coeffs, precision })
    }

    /// Every coefficient certified to the same precision.
    pub fn uniform(coeffs: Vec<RamifiedElement>, precision: u32) -> Result<Self, LError> {
        let precision = vec![precision; coeffs.len()];
        Self::new(coeffs, precision)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RamifiedElement] {
        &self.coeffs
    }

    pub fn precision(&self) -> &[u32] {
        &self.precision
    }

    pub fn params(&self) -> &Arc<RingParams> {
        self.coeffs[0].params()
    }

    /// Drops coefficients above `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let k = (order + 1).min(self.coeffs.len());
        Self {
            coeffs: self.coeffs[..k].to_vec(),
            precision: self.precision[..k].to_vec(),
        }
    }

    /// First index `i ≤ order` where the two series differ mod
    /// `p^{min(k, both precisions)}`.
    pub fn first_mismatch(&self, other: &Self, k: u32) -> Option<usize> {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .enumerate()
            .find(|(i, (a, b))| {
                let prec = k.min(self.precision[*i]).min(other.precision[*i]);
                !a.eq_mod(b, prec)
            })
            .map(|(i, _)| i)
    }

    /// Product truncated to the shorter order; precision is the running
    /// minimum, since no division occurs.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let params = self.params();
        let mut coeffs = vec![RamifiedElement::zero(params); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j].add_assign(&a.mul(b));
            }
        }
        let precision = running_min((0..=order).map(|i| self.precision[i].min(other.precision[i])));
        Self { coeffs, precision }
    }

    /// `1/f` for a series with constant term 1, by
    /// `b_j = −Σ_{i=1}^{j} a_i b_{j−i}`.
    pub fn inverse(&self) -> Result<Self, LError> {
        let params = self.params();
        if self.coeffs[0] != RamifiedElement::one(params) {
            return Err(LError::NonUnitConstantTerm);
        }
        let mut b = vec![RamifiedElement::one(params)];
        for j in 1..self.coeffs.len() {
            let mut acc = RamifiedElement::zero(params);
            for i in 1..=j {
                acc.add_assign(&self.coeffs[i].mul(&b[j - i]));
            }
            b.push(acc.neg());
        }
        Ok(Self {
            coeffs: b,
            precision: running_min(self.precision.iter().copied()),
        })
    }

    /// `f^e` for any integer `e`.
    pub fn powi(&self, e: i64) -> Result<Self, LError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let params = self.params();
        let mut one = vec![RamifiedElement::zero(params); self.coeffs.len()];
        one[0] = RamifiedElement::one(params);
        let mut acc = Self {
            coeffs: one,
            precision: self.precision.clone(),
        };
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

fn running_min(values: impl Iterator<Item = u32>) -> Vec<u32> {
    let mut cur = u32::MAX;
    values
        .map(|v| {
            cur = cur.min(v);
            cur
        })
        .collect()
}

/// `exp(Σ_{m ≤ m_max} S_m T^m/m)` from `(S_m, certified precision of S_m)`.
///
/// The recursion `k L_k = Σ_{i=1}^{k} S_i L_{k−i}` runs in a ring carrying
/// `ord_p(m_max!)` guard digits, so the exact divisions by `k` lose nothing
/// inside the working precision. Coefficient `k` is then certified to
/// `min_{m ≤ k}(prec(S_m) − ord_p(m))`.
pub fn l_series_from_sums(sums: &[(RamifiedElement, u32)]) -> Result<PowerSeriesT, LError> {
    let Some((first, _)) = sums.first() else {
        return Err(LError::DimensionMismatch {
            got: 0,
            expected: 1,
        });
    };
    let params = first.params().clone();
    let p = params.p();
    let m_max = sums.len() as u64;
    let guard: u32 = (1..=m_max).map(|m| valuation(m, p)).sum();
    let work = ring_create(p, params.s(), params.precision() + guard)?;
    let lifted: Vec<RamifiedElement> = sums
        .iter()
        .map(|(s, _)| s.change_precision(&work))
        .collect::<Result<_, _>>()?;

    let mut l = vec![RamifiedElement::one(&work)];
    for k in 1..=m_max {
        let mut acc = RamifiedElement::zero(&work);
        for i in 1..=k as usize {
            acc.add_assign(&lifted[i - 1].mul(&l[k as usize - i]));
        }
        let v = valuation(k, p);
        let unit = (k / p.pow(v)) as i64;
        let (divided, _) = acc.div_p_power(v)?;
        l.push(divided.mul(&RamifiedElement::from_int(&work, unit).inverse()?));
    }

    let coeffs = l
        .iter()
        .map(|c| c.change_precision(&params))
        .collect::<Result<_, _>>()?;
    let top = params.precision() as i64;
    let mut precision = vec![params.precision()];
    let mut cur = top;
    for (m, (_, prec)) in sums.iter().enumerate() {
        let loss = valuation(m as u64 + 1, p) as i64;
        cur = cur.min(*prec as i64 - loss).max(0);
        precision.push(cur as u32);
    }
    PowerSeriesT::new(coeffs, precision)
}

/// `Π_{k=0}^{n} P(q^{n−k}T)^{(−1)^{k+1} C(n,k)}` truncated at `T^{order}`,
/// where `P = det(I − T·G)` is certified to `precision`. Coefficients of
/// `P` past its length are taken to be zero.
pub fn l_from_charseries(
    charseries: &[RamifiedElement],
    precision: u32,
    n: usize,
    q: u64,
    order: usize,
) -> Result<PowerSeriesT, LError> {
    let Some(first) = charseries.first() else {
        return Err(LError::DimensionMismatch {
            got: 0,
            expected: 1,
        });
    };
    let params = first.params().clone();
    let padded: Vec<RamifiedElement> = (0..=order)
        .map(|i| {
            charseries
                .get(i)
                .cloned()
                .unwrap_or_else(|| RamifiedElement::zero(&params))
        })
        .collect();
    let q_elem = RamifiedElement::from_int(&params, (q % params.modulus()) as i64);
    let mut one = vec![RamifiedElement::zero(&params); order + 1];
    one[0] = RamifiedElement::one(&params);
    let mut result = PowerSeriesT::uniform(one, precision)?;
    for k in 0..=n {
        let scale = q_elem.pow((n - k) as u64);
        let mut c = RamifiedElement::one(&params);
        let scaled: Vec<RamifiedElement> = padded
            .iter()
            .map(|x| {
                let y = x.mul(&c);
                c = c.mul(&scale);
                y
            })
            .collect();
        let factor = PowerSeriesT::uniform(scaled, precision)?;
        let e = binomial(n as u64, k as u64) as i64 * if k % 2 == 0 { -1 } else { 1 };
        result = result.mul(&factor.powi(e)?);
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(params: &Arc<RingParams>, v: &[i64]) -> Vec<RamifiedElement> {
        v.iter()
            .map(|&x| RamifiedElement::from_int(params, x))
            .collect()
    }

    #[test]
    fn constant_minus_one_sums_give_one_minus_t() {
        let params = ring_create(3, 1, 6).unwrap();
        let sums: Vec<_> = ints(&params, &[-1; 7])
            .into_iter()
            .map(|s| (s, 6))
            .collect();
        let l = l_series_from_sums(&sums).unwrap();
        assert_eq!(l.precision(), &[6, 6, 6, 5, 5, 5, 5, 5]);
        let mut expected = ints(&params, &[0; 8]);
        expected[0] = RamifiedElement::one(&params);
        expected[1] = RamifiedElement::from_int(&params, -1);
        let expected = PowerSeriesT::uniform(expected, 6).unwrap();
        assert_eq!(l.first_mismatch(&expected, 6), None);
    }

    #[test]
    fn first_coefficient_is_s1() {
        let params = ring_create(5, 2, 4).unwrap();
        let s1 = RamifiedElement::generator(&params).add(&RamifiedElement::pi(&params));
        let s2 = RamifiedElement::from_int(&params, 7);
        let l = l_series_from_sums(&[(s1.clone(), 4), (s2, 3)]).unwrap();
        assert_eq!(l.coeffs()[1], s1);
        assert_eq!(l.precision()[2], 3);
    }

    #[test]
    fn inverse_and_powers() {
        let params = ring_create(5, 1, 4).unwrap();
        let f = PowerSeriesT::uniform(ints(&params, &[1, 2, 0, 0, 0]), 4).unwrap();
        let g = f.powi(-2).unwrap();
        // (1 + 2T)^{-2} = Σ (j+1)(−2)^j T^j
        let expected: Vec<i64> = (0..5).map(|j| (j + 1) * (-2i64).pow(j as u32)).collect();
        assert_eq!(g.coeffs(), ints(&params, &expected).as_slice());
        assert_eq!(
            f.mul(&g).mul(&f).first_mismatch(
                &PowerSeriesT::uniform(ints(&params, &[1, 0, 0, 0, 0]), 4).unwrap(),
                4
            ),
            None
        );
    }

    #[test]
    fn charseries_formula_at_n_one() {
        // n = 1: P(T)/P(qT).
        let params = ring_create(3, 1, 5).unwrap();
        let p = ints(&params, &[1, -1]);
        let l = l_from_charseries(&p, 5, 1, 3, 4).unwrap();
        // (1 − T)/(1 − 3T) = 1 + Σ_{j≥1} (3^j − 3^{j−1}) T^j
        let expected: Vec<i64> = (0..5)
            .map(|j| {
                if j == 0 {
                    1
                } else {
                    3i64.pow(j) - 3i64.pow(j - 1)
                }
            })
            .collect();
        assert_eq!(l.coeffs(), ints(&params, &expected).as_slice());
    }
}
