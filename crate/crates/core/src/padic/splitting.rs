use std::sync::Arc;

use super::ring::{PiFactorialTable, RamifiedElement, RingParams};
use super::PadicError;
use crate::finite_field::FqElement;
use crate::Rational;

/// Teichmüller lift of a residue: the unique `x` with `x^{p^s} = x` and
/// `x ≡ residue mod p`, found by iterating `x ← x^{p^s}` from any lift.
pub fn teichmueller(residue: &FqElement, params: &Arc<RingParams>) -> RamifiedElement {
    let mut x = RamifiedElement::lift_residue(params, residue);
    if residue.is_zero() {
        return x;
    }
    let q = params.p().pow(params.s() as u32);
    // Each iteration fixes one more p-adic digit.
    for _ in 0..=params.precision() {
        let next = x.pow(q);
        if next == x {
            break;
        }
        x = next;
    }
    x
}

/// Smallest `i` with `(p−1)·i / (p·Q) ≥ M`: every coefficient of
/// `exp(πz − πz^Q)` from this index on vanishes mod `p^M`.
pub fn splitting_cutoff(p: u64, precision: u32, q_power: u64) -> u64 {
    let num = precision as u128 * p as u128 * q_power as u128;
    let den = (p - 1) as u128;
    num.div_ceil(den) as u64
}

/// Coefficients `c_0..c_{i_max}` of `exp(πz − πz^Q)`, each with its floor
/// `ord_p(c_i) ≥ (p−1)·i/(p·Q)`.
#[derive(Debug, Clone)]
pub struct SplittingSeries {
    q_power: u64,
    coeffs: Vec<RamifiedElement>,
    floors: Vec<Rational>,
}

impl SplittingSeries {
    pub fn new(params: &Arc<RingParams>, q_power: u64) -> Result<Self, PadicError> {
        let i_max = splitting_cutoff(params.p(), params.precision(), q_power);
        Self::with_cutoff(params, q_power, i_max)
    }

    pub fn with_cutoff(
        params: &Arc<RingParams>,
        q_power: u64,
        i_max: u64,
    ) -> Result<Self, PadicError> {
        let p = params.p();
        if q_power < p || !is_power_of(q_power, p) {
            return Err(PadicError::NotAPowerOfP(q_power));
        }
        let needed = splitting_cutoff(p, params.precision(), q_power);
        if i_max < needed {
            return Err(PadicError::PrecisionBudgetExceeded {
                needed: needed.min(u32::MAX as u64) as u32,
                available: i_max.min(u32::MAX as u64) as u32,
            });
        }
        let table = PiFactorialTable::new(params, i_max);
        let e = table.values();
        let mut coeffs = Vec::with_capacity(i_max as usize + 1);
        for i in 0..=i_max {
            // c_i = Σ_{a + Qb = i} (π^a/a!) · (−π)^b / b!
            let mut acc = RamifiedElement::zero(params);
            let mut b = 0u64;
            while b * q_power <= i {
                let a = i - b * q_power;
                let term = e[a as usize].mul(&e[b as usize]);
                if b % 2 == 0 {
                    acc.add_assign(&term);
                } else {
                    acc = acc.sub(&term);
                }
                b += 1;
            }
            coeffs.push(acc);
        }
        let floors = (0..=i_max)
            .map(|i| Rational::new(((p - 1) * i) as i64, (p * q_power) as i64))
            .collect();
        Ok(Self {
            q_power,
            coeffs,
            floors,
        })
    }

    pub fn q_power(&self) -> u64 {
        self.q_power
    }

    pub fn coeffs(&self) -> &[RamifiedElement] {
        &self.coeffs
    }

    pub fn floors(&self) -> &[Rational] {
        &self.floors
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Evaluates the truncated series at `z` (same ring as `z` must be
    /// compatible: the coefficients are embedded by copying `π`-digits).
    pub fn evaluate(&self, z: &RamifiedElement) -> RamifiedElement {
        let params = z.params();
        let mut acc = RamifiedElement::zero(params);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z);
            acc.add_assign(&embed_pi_only(c, params));
        }
        acc
    }
}

/// Copies an element whose unramified part is trivial (`b`-degree 0) into a
/// ring with the same `p` and `M` but any `s`.
pub(crate) fn embed_pi_only(x: &RamifiedElement, target: &Arc<RingParams>) -> RamifiedElement {
    let src = x.params();
    if Arc::ptr_eq(src, target) || **src == **target {
        return x.clone();
    }
    debug_assert_eq!(src.p(), target.p());
    debug_assert_eq!(src.precision(), target.precision());
    let mut out = RamifiedElement::zero(target);
    let (ss, ts) = (src.s(), target.s());
    for i in 0..src.ramification() {
        debug_assert!((1..ss).all(|j| x.coeff(i, j) == 0));
        out.coeffs_mut()[i * ts] = x.coeff(i, 0);
    }
    out
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n % p == 0 && n > 1 {
        n /= p;
    }
    n == 1
}

/// Coefficients of `exp(πz − πz^Q)` up to `i_max`, with valuation floors.
pub fn splitting_coefficients(
    params: &Arc<RingParams>,
    q_power: u64,
    i_max: u64,
) -> Result<Vec<(RamifiedElement, Rational)>, PadicError> {
    let series = SplittingSeries::with_cutoff(params, q_power, i_max)?;
    Ok(series.coeffs.into_iter().zip(series.floors).collect())
}

/// `θ(1) = Σ_i λ_i` where `Σ λ_i z^i = exp(πz − πz^p)`, a primitive p-th root
/// of unity. Terms past `⌈M p²/(p−1)⌉ + p` vanish mod `p^M`.
pub fn theta_one(params: &Arc<RingParams>) -> RamifiedElement {
    let p = params.p();
    let cutoff = (params.precision() as u64 * p * p).div_ceil(p - 1) + p;
    let series = SplittingSeries::with_cutoff(params, p, cutoff)
        .expect("cutoff exceeds the splitting bound");
    let mut acc = RamifiedElement::zero(params);
    for c in series.coeffs() {
        acc.add_assign(c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{ring_create, PiOrd};

    #[test]
    fn teichmueller_of_two_mod_125() {
        let r = ring_create(5, 1, 3).unwrap();
        let f = r.residue_field().clone();
        let t = teichmueller(&f.from_int(2), &r);
        assert_eq!(t.as_small_int(), Some(57));
        assert_eq!(t.pow(5), t);
        let t1 = teichmueller(&f.one(), &r);
        assert_eq!(t1, RamifiedElement::one(&r));
        let tm1 = teichmueller(&f.from_int(4), &r);
        assert_eq!(tm1.coeffs()[0], 124);
        assert!(teichmueller(&f.zero(), &r).is_zero());
    }

    #[test]
    fn first_splitting_coefficients() {
        for p in [3u64, 5, 7] {
            let r = ring_create(p, 1, 5).unwrap();
            let s = SplittingSeries::new(&r, p).unwrap();
            assert_eq!(s.coeffs()[0], RamifiedElement::one(&r));
            assert_eq!(s.coeffs()[1], RamifiedElement::pi(&r));
        }
    }

    #[test]
    fn cutoff_too_small_is_rejected() {
        let r = ring_create(3, 1, 4).unwrap();
        assert!(matches!(
            SplittingSeries::with_cutoff(&r, 3, 5),
            Err(PadicError::PrecisionBudgetExceeded { .. })
        ));
        assert!(matches!(
            SplittingSeries::new(&r, 6),
            Err(PadicError::NotAPowerOfP(6))
        ));
    }

    #[test]
    fn theta_is_primitive_pth_root() {
        for p in [3u64, 5, 7] {
            let r = ring_create(p, 1, 6).unwrap();
            let theta = theta_one(&r);
            let one = RamifiedElement::one(&r);
            assert_eq!(theta.pow(p), one);
            assert_ne!(theta, one);
            assert_eq!(
                theta.sub(&one).pi_ord(),
                PiOrd::Finite(Rational::new(1, (p - 1) as i64))
            );
            let mut geometric = RamifiedElement::zero(&r);
            for k in 0..p {
                geometric.add_assign(&theta.pow(k));
            }
            assert!(geometric.is_zero());
        }
    }
}
