use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::PadicError;
use crate::finite_field::{FqElement, FqParams};
use crate::util::{checked_pow, mod_inverse, valuation};
use crate::Rational;

/// Moduli `p^M` must stay below this so that raw products (below `2^80`)
/// can be accumulated in `u128` across long dot products.
pub const MODULUS_LIMIT: u64 = 1 << 40;

/// Parameters of `R(s, M) = (W(F_{p^s}) / p^M)[π] / (π^{p-1} + p)`.
#[derive(Debug)]
pub struct RingParams {
    p: u64,
    s: usize,
    precision: u32,
    modulus: u64,
    /// Monic modulus of the unramified part; coefficients lie in `[0, p)`.
    g: Vec<u64>,
    field: FqParams,
}

/// Builds the ring for `(p, s, M)`. The unramified generator `b` is a root of
/// the same polynomial `g` the residue field `F_{p^s}` is built from.
pub fn ring_create(p: u64, s: usize, precision: u32) -> Result<Arc<RingParams>, PadicError> {
    if p == 2 {
        return Err(PadicError::UnsupportedPrime(p));
    }
    let field = FqParams::new(p, s).map_err(|e| match e {
        crate::finite_field::FieldError::NotPrime(p) => PadicError::NotPrime(p),
        other => PadicError::Field(other),
    })?;
    if precision == 0 {
        return Err(PadicError::PrecisionTooLarge { p, precision });
    }
    let modulus = checked_pow(p, precision)
        .filter(|&m| m < MODULUS_LIMIT)
        .ok_or(PadicError::PrecisionTooLarge { p, precision })?;
    let g = field.modulus().to_vec();
    Ok(Arc::new(RingParams {
        p,
        s,
        precision,
        modulus,
        g,
        field,
    }))
}

impl PartialEq for RingParams {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.s == other.s && self.precision == other.precision
    }
}

impl Eq for RingParams {}

impl RingParams {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Unramified degree.
    pub fn s(&self) -> usize {
        self.s
    }

    /// Absolute precision `M`: elements are known mod `p^M`.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn unramified_modulus(&self) -> &[u64] {
        &self.g
    }

    pub fn residue_field(&self) -> &FqParams {
        &self.field
    }

    /// Number of `π`-digits per element, `p − 1`.
    pub fn ramification(&self) -> usize {
        (self.p - 1) as usize
    }

    /// Number of coordinates of an element, `(p − 1)·s`.
    pub fn len(&self) -> usize {
        self.ramification() * self.s
    }

    pub(crate) fn raw_rows(&self) -> usize {
        2 * self.ramification() - 1
    }

    pub(crate) fn raw_cols(&self) -> usize {
        2 * self.s - 1
    }

    pub(crate) fn raw_len(&self) -> usize {
        self.raw_rows() * self.raw_cols()
    }

    pub(crate) fn reduce_int(&self, n: i128) -> u64 {
        n.rem_euclid(self.modulus as i128) as u64
    }

    /// Adds the schoolbook product of `a` and `b` into `acc` without reducing.
    #[inline]
    pub(crate) fn mul_acc_raw(&self, acc: &mut [u128], a: &[u64], b: &[u64]) {
        let s = self.s;
        let e = self.ramification();
        let cols = self.raw_cols();
        if s == 1 {
            for (i1, &x) in a.iter().enumerate().take(e) {
                if x == 0 {
                    continue;
                }
                let x = x as u128;
                for (i2, &y) in b.iter().enumerate().take(e) {
                    acc[i1 + i2] += x * y as u128;
                }
            }
            return;
        }
        for i1 in 0..e {
            for j1 in 0..s {
                let x = a[i1 * s + j1];
                if x == 0 {
                    continue;
                }
                let x = x as u128;
                for i2 in 0..e {
                    let base = (i1 + i2) * cols + j1;
                    let row = &b[i2 * s..(i2 + 1) * s];
                    for (j2, &y) in row.iter().enumerate() {
                        acc[base + j2] += x * y as u128;
                    }
                }
            }
        }
    }

    /// Reduces a raw product into canonical coordinates, applying
    /// `π^{p-1} = −p` and `g(b) = 0`.
    pub(crate) fn reduce_raw(&self, acc: &[u128], out: &mut [u64]) {
        let m = self.modulus;
        let m128 = m as u128;
        let e = self.ramification();
        let s = self.s;
        let cols = self.raw_cols();
        let rows = self.raw_rows();
        let mut tmp: Vec<u64> = acc.iter().map(|&v| (v % m128) as u64).collect();
        let p_mod = self.p % m;
        for i in (e..rows).rev() {
            for j in 0..cols {
                let v = tmp[i * cols + j];
                if v != 0 {
                    let t = &mut tmp[(i - e) * cols + j];
                    let sub = ((p_mod as u128 * v as u128) % m128) as u64;
                    *t = (*t + m - sub) % m;
                }
            }
        }
        for i in 0..e {
            let row = &mut tmp[i * cols..(i + 1) * cols];
            for j in (s..cols).rev() {
                let v = row[j];
                if v == 0 {
                    continue;
                }
                for k in 0..s {
                    let gk = self.g[k];
                    if gk != 0 {
                        let sub = ((gk as u128 * v as u128) % m128) as u64;
                        row[j - s + k] = (row[j - s + k] + m - sub) % m;
                    }
                }
            }
            out[i * s..(i + 1) * s].copy_from_slice(&row[..s]);
        }
    }

    pub(crate) fn mul_into(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        let mut acc = vec![0u128; self.raw_len()];
        self.mul_acc_raw(&mut acc, a, b);
        self.reduce_raw(&acc, out);
    }
}

/// An element `Σ c[i][j] π^i b^j` of [`RingParams`], `0 ≤ i < p − 1`, `0 ≤ j < s`.
#[derive(Clone)]
pub struct RamifiedElement {
    params: Arc<RingParams>,
    coeffs: Vec<u64>,
}

/// `ord_p` of an element: a rational in `(1/(p−1))·Z_{≥0}`, or no information
/// when every coordinate vanishes mod `p^M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PiOrd {
    Finite(Rational),
    AtLeastPrecision,
}

impl PiOrd {
    pub fn finite(self) -> Option<Rational> {
        match self {
            PiOrd::Finite(r) => Some(r),
            PiOrd::AtLeastPrecision => None,
        }
    }
}

impl fmt::Display for PiOrd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PiOrd::Finite(r) => write!(f, "{r}"),
            PiOrd::AtLeastPrecision => write!(f, ">=precision"),
        }
    }
}

/// One nonzero coordinate of an element, as it appears in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub pi_power: usize,
    pub b_power: usize,
    pub residue: u64,
}

impl RamifiedElement {
    pub fn zero(params: &Arc<RingParams>) -> Self {
        Self {
            params: params.clone(),
            coeffs: vec![0; params.len()],
        }
    }

    pub fn one(params: &Arc<RingParams>) -> Self {
        Self::from_int(params, 1)
    }

    pub fn from_int(params: &Arc<RingParams>, n: i64) -> Self {
        let mut x = Self::zero(params);
        x.coeffs[0] = params.reduce_int(n as i128);
        x
    }

    /// The uniformizer `π`.
    pub fn pi(params: &Arc<RingParams>) -> Self {
        let mut x = Self::zero(params);
        if params.ramification() > 1 {
            x.coeffs[params.s] = 1;
        } else {
            // p = 2 is rejected at construction, so this is unreachable.
            unreachable!("ramification index is at least 2");
        }
        x
    }

    /// `π^i`, reduced through `π^{p−1} = −p`.
    pub fn pi_power(params: &Arc<RingParams>, i: u64) -> Self {
        let e = params.p - 1;
        let k = (i / e) as u32;
        let r = (i % e) as usize;
        let mut x = Self::zero(params);
        let pk = checked_pow(params.p, k).filter(|&v| v < params.modulus);
        if let Some(pk) = pk {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            x.coeffs[r * params.s] = params.reduce_int(sign * pk as i128);
        }
        x
    }

    /// The unramified generator `b` (a root of `g`).
    pub fn generator(params: &Arc<RingParams>) -> Self {
        let mut x = Self::zero(params);
        if params.s > 1 {
            x.coeffs[1] = 1;
        } else {
            // s = 1: g = b − c, so b = c.
            x.coeffs[0] = params.reduce_int((params.p - params.g[0]) as i128 % params.p as i128);
        }
        x
    }

    /// Builds an element from raw coordinates `c[i*s + j]`, reducing each.
    pub fn from_coeffs(params: &Arc<RingParams>, coeffs: &[i64]) -> Result<Self, PadicError> {
        if coeffs.len() != params.len() {
            return Err(PadicError::BadLength {
                got: coeffs.len(),
                expected: params.len(),
            });
        }
        let coeffs = coeffs
            .iter()
            .map(|&c| params.reduce_int(c as i128))
            .collect();
        Ok(Self {
            params: params.clone(),
            coeffs,
        })
    }

    /// Lifts a residue-field element to the `π^0` row (not a Teichmüller lift).
    pub fn lift_residue(params: &Arc<RingParams>, residue: &FqElement) -> Self {
        let mut x = Self::zero(params);
        x.coeffs[..params.s].copy_from_slice(residue.coeffs());
        x
    }

    pub fn params(&self) -> &Arc<RingParams> {
        &self.params
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [u64] {
        &mut self.coeffs
    }

    pub(crate) fn from_raw(params: &Arc<RingParams>, coeffs: Vec<u64>) -> Self {
        debug_assert_eq!(coeffs.len(), params.len());
        Self {
            params: params.clone(),
            coeffs,
        }
    }

    /// Coordinate of `π^i b^j`.
    pub fn coeff(&self, i: usize, j: usize) -> u64 {
        self.coeffs[i * self.params.s + j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_params(&self, other: &Self) -> Result<(), PadicError> {
        if Arc::ptr_eq(&self.params, &other.params) || *self.params == *other.params {
            Ok(())
        } else {
            Err(PadicError::ParamsMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PadicError> {
        self.check_params(other)?;
        Ok(self.add(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert!(self.check_params(other).is_ok());
        let m = self.params.modulus;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a + b) % m)
            .collect();
        Self {
            params: self.params.clone(),
            coeffs,
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        let m = self.params.modulus;
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = (*a + b) % m;
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert!(self.check_params(other).is_ok());
        let m = self.params.modulus;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a + m - b) % m)
            .collect();
        Self {
            params: self.params.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        Self::zero(&self.params).sub(self)
    }

    /// Product in canonical form. Panics (in debug builds) on mismatched
    /// rings; use [`multiply`] for a checked variant.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert!(self.check_params(other).is_ok());
        let mut out = vec![0u64; self.params.len()];
        self.params.mul_into(&self.coeffs, &other.coeffs, &mut out);
        Self {
            params: self.params.clone(),
            coeffs: out,
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        let m = self.params.modulus as i128;
        let c = (c as i128).rem_euclid(m);
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| ((a as i128 * c) % m) as u64)
            .collect();
        Self {
            params: self.params.clone(),
            coeffs,
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(&self.params);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `ord_p`: minimum over nonzero coordinates of `i/(p−1) + ord_p(c[i][j])`.
    pub fn pi_ord(&self) -> PiOrd {
        let s = self.params.s;
        let e = self.params.ramification() as i64;
        let mut best: Option<Rational> = None;
        for (idx, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let i = (idx / s) as i64;
            let v = valuation(c, self.params.p) as i64;
            let ord = Rational::new(i + v * e, e);
            best = Some(best.map_or(ord, |b| b.min(ord)));
        }
        best.map_or(PiOrd::AtLeastPrecision, PiOrd::Finite)
    }

    /// Largest `k ≤ M` with `self ≡ 0 mod p^k` coordinatewise.
    pub fn p_divisibility(&self) -> u32 {
        self.coeffs
            .iter()
            .filter(|&&c| c != 0)
            .map(|&c| valuation(c, self.params.p))
            .min()
            .unwrap_or(self.params.precision)
    }

    /// True when `self ≡ other mod p^k`.
    pub fn eq_mod(&self, other: &Self, k: u32) -> bool {
        self.sub(other).p_divisibility() >= k.min(self.params.precision)
    }

    /// Reduction mod `π`, an element of the residue field `F_{p^s}`.
    pub fn residue(&self) -> FqElement {
        let p = self.params.p;
        let coeffs = self.coeffs[..self.params.s].iter().map(|c| c % p).collect();
        self.params.field.element(coeffs).expect("reduced residue")
    }

    /// Multiplicative inverse of a unit (`ord_p = 0`), by Newton iteration
    /// `y ← y(2 − xy)` from the inverse of the residue.
    pub fn inverse(&self) -> Result<Self, PadicError> {
        let residue = self.residue();
        let field = &self.params.field;
        let r_inv = field.inv(&residue).map_err(|_| PadicError::NotAUnit)?;
        let mut y = Self::lift_residue(&self.params, &r_inv);
        let two = Self::from_int(&self.params, 2);
        // Each step doubles the π-adic accuracy; M(p−1) π-digits are needed.
        let needed = self.params.precision as u64 * (self.params.p - 1);
        let mut accuracy = 1u64;
        while accuracy < needed {
            y = y.mul(&two.sub(&self.mul(&y)));
            accuracy *= 2;
        }
        Ok(y)
    }

    /// Exact division by `p^v`. Every coordinate must be divisible; the
    /// result is known mod `p^{M−v}` and returned with that precision.
    pub fn div_p_power(&self, v: u32) -> Result<(Self, u32), PadicError> {
        if v == 0 {
            return Ok((self.clone(), self.params.precision));
        }
        let prec = self.params.precision;
        if v > prec {
            return Err(PadicError::PrecisionBudgetExceeded {
                needed: v,
                available: prec,
            });
        }
        let pv = self.params.p.pow(v);
        if self.coeffs.iter().any(|&c| c % pv != 0) {
            return Err(PadicError::NotDivisible { v });
        }
        let coeffs = self.coeffs.iter().map(|&c| c / pv).collect();
        Ok((
            Self {
                params: self.params.clone(),
                coeffs,
            },
            prec - v,
        ))
    }

    /// Reinterprets the coordinates in a ring with the same `(p, s)` and a
    /// different precision (truncating or lifting by zero digits).
    pub fn change_precision(&self, target: &Arc<RingParams>) -> Result<Self, PadicError> {
        if target.p != self.params.p || target.s != self.params.s {
            return Err(PadicError::ParamsMismatch);
        }
        let m = target.modulus;
        let coeffs = self.coeffs.iter().map(|&c| c % m).collect();
        Ok(Self {
            params: target.clone(),
            coeffs,
        })
    }

    /// Nonzero coordinates, ordered by `(π power, b power)`.
    pub fn terms(&self) -> Vec<Term> {
        let s = self.params.s;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(idx, &c)| Term {
                pi_power: idx / s,
                b_power: idx % s,
                residue: c,
            })
            .collect()
    }

    /// Interprets an element with only a `π^0 b^0` coordinate as a signed
    /// integer in `(−p^M/2, p^M/2]`.
    pub fn as_small_int(&self) -> Option<i64> {
        if self.coeffs[1..].iter().any(|&c| c != 0) {
            return None;
        }
        let m = self.params.modulus;
        let c = self.coeffs[0];
        Some(if c > m / 2 {
            c as i64 - m as i64
        } else {
            c as i64
        })
    }
}

impl PartialEq for RamifiedElement {
    fn eq(&self, other: &Self) -> bool {
        *self.params == *other.params && self.coeffs == other.coeffs
    }
}

impl Eq for RamifiedElement {}

impl fmt::Debug for RamifiedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RamifiedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0 (mod {}^{})", self.params.p, self.params.precision);
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|t| match (t.pi_power, t.b_power) {
                (0, 0) => format!("{}", t.residue),
                (i, 0) => format!("{}*pi^{}", t.residue, i),
                (0, j) => format!("{}*b^{}", t.residue, j),
                (i, j) => format!("{}*pi^{}*b^{}", t.residue, i, j),
            })
            .collect();
        write!(
            f,
            "{} (mod {}^{})",
            parts.join(" + "),
            self.params.p,
            self.params.precision
        )
    }
}

/// Checked product; both factors must share ring parameters.
pub fn multiply(x: &RamifiedElement, y: &RamifiedElement) -> Result<RamifiedElement, PadicError> {
    x.check_params(y)?;
    Ok(x.mul(y))
}

/// `ord_p` of an element (see [`RamifiedElement::pi_ord`]).
pub fn pi_ord(x: &RamifiedElement) -> PiOrd {
    x.pi_ord()
}

/// `σ(m)`, the base-p digit sum, together with `ord_p(π^m / m!) = σ(m)/(p−1)`.
pub fn sigma_and_factorial_ord(m: u64, p: u64) -> (u64, Rational) {
    let sigma = crate::util::digit_sum(m, p);
    (sigma, Rational::new(sigma as i64, (p - 1) as i64))
}

/// The `δ` of the constructive bound `σ(m) ≤ εm + δ`: pick the least `x` with
/// `(p−1)(y+1) ≤ ε p^y` for all `y ≥ x`, then take `max σ(1..=p^x)`.
pub fn sigma_bound_delta(p: u64, eps: f64) -> u64 {
    assert!(eps > 0.0);
    let pf = p as f64;
    // (p-1)(y+1)/p^y is decreasing for y >= 1, so the first y that works is enough.
    let mut x = 1u32;
    while (pf - 1.0) * (x as f64 + 1.0) > eps * pf.powi(x as i32) {
        x += 1;
    }
    let limit = p.pow(x);
    (1..=limit)
        .map(|m| crate::util::digit_sum(m, p))
        .max()
        .unwrap_or(0)
}

/// `π^a / a!` exactly mod `p^M`.
///
/// With `a = (p−1)k + r`, `π^a = (−p)^k π^r` and `ord_p(a!) ≤ k`, so the
/// quotient is `(−1)^k p^{k − ord_p(a!)} π^r / unit(a!)`.
pub fn pi_power_over_factorial(params: &Arc<RingParams>, a: u64) -> RamifiedElement {
    let table = PiFactorialTable::new(params, a);
    table.get(a)
}

/// Precomputed `π^a / a!` for `a ≤ a_max`.
pub(crate) struct PiFactorialTable {
    values: Vec<RamifiedElement>,
}

impl PiFactorialTable {
    pub(crate) fn new(params: &Arc<RingParams>, a_max: u64) -> Self {
        let p = params.p;
        let m = params.modulus;
        let e = p - 1;
        let mut values = Vec::with_capacity(a_max as usize + 1);
        // unit part of a! mod p^M and ord_p(a!)
        let mut unit: u64 = 1 % m;
        let mut fact_ord: u64 = 0;
        for a in 0..=a_max {
            if a > 0 {
                let v = valuation(a, p);
                fact_ord += v as u64;
                let part = a / p.pow(v) % m;
                unit = ((unit as u128 * part as u128) % m as u128) as u64;
            }
            let k = a / e;
            let r = (a % e) as usize;
            debug_assert!(fact_ord <= k);
            let shift = k - fact_ord;
            let mut x = RamifiedElement::zero(params);
            if shift < params.precision as u64 {
                let inv = mod_inverse(unit, m).expect("unit part is invertible");
                let pk = p.pow(shift as u32);
                let mut val = (inv as u128 * pk as u128 % m as u128) as u64;
                if k % 2 == 1 {
                    val = (m - val) % m;
                }
                x.coeffs[r * params.s] = val;
            }
            values.push(x);
        }
        Self { values }
    }

    pub(crate) fn get(&self, a: u64) -> RamifiedElement {
        self.values[a as usize].clone()
    }

    pub(crate) fn values(&self) -> &[RamifiedElement] {
        &self.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relation_and_identity() {
        for p in [3u64, 5, 7] {
            let r = ring_create(p, 1, 4).unwrap();
            let pi = RamifiedElement::pi(&r);
            let top = RamifiedElement::pi_power(&r, p - 2);
            assert_eq!(pi.mul(&top), RamifiedElement::from_int(&r, -(p as i64)));
            assert_eq!(pi.pow(p - 1), RamifiedElement::pi_power(&r, p - 1));
            let one = RamifiedElement::one(&r);
            assert_eq!(one.mul(&pi), pi);
        }
    }

    #[test]
    fn one_plus_pi_times_one_minus_pi_at_three() {
        let r = ring_create(3, 1, 5).unwrap();
        let one = RamifiedElement::one(&r);
        let pi = RamifiedElement::pi(&r);
        assert_eq!(
            one.add(&pi).mul(&one.sub(&pi)),
            RamifiedElement::from_int(&r, 4)
        );
    }

    #[test]
    fn create_rejects_bad_primes() {
        assert_eq!(ring_create(4, 1, 1).unwrap_err(), PadicError::NotPrime(4));
        assert_eq!(
            ring_create(2, 1, 3).unwrap_err(),
            PadicError::UnsupportedPrime(2)
        );
        assert!(matches!(
            ring_create(3, 1, 40),
            Err(PadicError::PrecisionTooLarge { .. })
        ));
        let a = ring_create(3, 2, 2).unwrap();
        let b = ring_create(3, 2, 2).unwrap();
        assert_eq!(a.unramified_modulus(), b.unramified_modulus());
        assert_eq!(a.unramified_modulus(), &[1, 0, 1]);
    }

    #[test]
    fn valuations() {
        let r = ring_create(5, 2, 4).unwrap();
        assert_eq!(
            RamifiedElement::pi(&r).pi_ord(),
            PiOrd::Finite(Rational::new(1, 4))
        );
        assert_eq!(
            RamifiedElement::from_int(&r, 5).pi_ord(),
            PiOrd::Finite(Rational::from(1))
        );
        assert_eq!(RamifiedElement::zero(&r).pi_ord(), PiOrd::AtLeastPrecision);
        let x = RamifiedElement::pi_power(&r, 3).add(&RamifiedElement::from_int(&r, 25));
        assert_eq!(x.pi_ord(), PiOrd::Finite(Rational::new(3, 4)));
    }

    #[test]
    fn factorial_valuations_match_digit_sums() {
        // p = 3, m = 5 = 1·3 + 2: σ = 3.
        assert_eq!(sigma_and_factorial_ord(5, 3), (3, Rational::new(3, 2)));
        for p in [3u64, 5, 7] {
            let r = ring_create(p, 1, 8).unwrap();
            let table = PiFactorialTable::new(&r, 60);
            for m in 1..=60u64 {
                let (_, ord) = sigma_and_factorial_ord(m, p);
                // ord_p(m!) by Legendre, independent of digit sums.
                let mut legendre = 0;
                let mut pk = p;
                while pk <= m {
                    legendre += m / pk;
                    pk *= p;
                }
                let direct =
                    Rational::new(m as i64 - (p - 1) as i64 * legendre as i64, (p - 1) as i64);
                assert_eq!(ord, direct);
                if ord < Rational::from(8) {
                    assert_eq!(table.get(m).pi_ord(), PiOrd::Finite(ord), "p={p} m={m}");
                }
            }
        }
    }

    #[test]
    fn inverse_and_exact_division() {
        let r = ring_create(3, 2, 6).unwrap();
        let x = RamifiedElement::generator(&r)
            .add(&RamifiedElement::pi(&r))
            .add(&RamifiedElement::from_int(&r, 1));
        let y = x.inverse().unwrap();
        assert_eq!(x.mul(&y), RamifiedElement::one(&r));
        assert_eq!(
            RamifiedElement::pi(&r).inverse().unwrap_err(),
            PadicError::NotAUnit
        );
        let nine_b = RamifiedElement::generator(&r).scale(9);
        let (q, prec) = nine_b.div_p_power(2).unwrap();
        assert_eq!(q, RamifiedElement::generator(&r));
        assert_eq!(prec, 4);
        assert_eq!(
            nine_b.div_p_power(3).unwrap_err(),
            PadicError::NotDivisible { v: 3 }
        );
    }

    #[test]
    fn sigma_bound_holds_on_prefix() {
        for p in [3u64, 5, 7] {
            let delta = sigma_bound_delta(p, 0.1);
            for m in 1..=10_000u64 {
                assert!(crate::util::digit_sum(m, p) as f64 <= 0.1 * m as f64 + delta as f64);
            }
        }
    }
}
