//! Arithmetic in `F_{p^s} = F_p[b]/(g)`.
//!
//! The modulus `g` is the lexicographically smallest monic irreducible
//! polynomial of degree `s` (coefficient vectors `(g_0, .., g_{s-1})` compared
//! left to right). The p-adic ring for the same `(p, s)` reuses it, so reducing
//! a Teichmüller lift mod `p` lands on the coordinates used here.

mod poly;

use serde::Serialize;
use thiserror::Error;

use crate::util::{checked_pow, is_prime, mod_inverse};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is too large for word-sized field arithmetic")]
    PrimeTooLarge(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("division by zero in F_{p}^{degree}")]
    DivisionByZero { p: u64, degree: usize },
    #[error("F_{p}^{base} is not a subfield of F_{p}^{ext}")]
    NotASubfield { p: u64, base: usize, ext: usize },
    #[error("coordinate vector has length {got}, expected {expected}")]
    BadLength { got: usize, expected: usize },
    #[error("coordinate {value} is not reduced mod {p}")]
    BadCoordinate { value: u64, p: u64 },
    #[error("field with {p}^{degree} elements is too large to enumerate")]
    TooLarge { p: u64, degree: usize },
    #[error("modulus of F_{p}^{inner} has no root in F_{p}^{outer}")]
    NoRoot { p: u64, inner: usize, outer: usize },
}

/// Enumeration over fields larger than this is refused.
pub const ENUMERATION_LIMIT: u64 = 1 << 24;

/// An element of `F_{p^s}` as its coordinate vector in the basis `1, b, .., b^{s-1}`.
///
/// The derived ordering is lexicographic on coordinates, which is the
/// enumeration order used throughout.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FqElement {
    coeffs: Vec<u64>,
}

impl FqElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqParams {
    p: u64,
    degree: usize,
    /// Monic, `degree + 1` coefficients.
    modulus: Vec<u64>,
}

/// The lexicographically smallest monic irreducible polynomial of degree `s`
/// over `F_p`, returned with `s + 1` coefficients (leading 1 last).
pub fn select_modulus(p: u64, s: usize) -> Result<Vec<u64>, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if p >= 1 << 31 {
        return Err(FieldError::PrimeTooLarge(p));
    }
    if s == 0 {
        return Err(FieldError::ZeroDegree);
    }
    // Counting in base p with g_0 as the most significant digit walks the
    // coefficient vectors in lexicographic order.
    let mut digits = vec![0u64; s];
    loop {
        let mut g = digits.clone();
        g.push(1);
        if poly::is_irreducible(&g, p) {
            return Ok(g);
        }
        let mut k = s;
        loop {
            // Irreducible polynomials of every degree exist, so this never
            // runs past the last candidate.
            k -= 1;
            digits[k] += 1;
            if digits[k] < p {
                break;
            }
            digits[k] = 0;
        }
    }
}

impl FqParams {
    pub fn new(p: u64, degree: usize) -> Result<Self, FieldError> {
        let modulus = select_modulus(p, degree)?;
        Ok(Self { p, degree, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Field size `p^degree`, if it fits in a `u64`.
    pub fn order(&self) -> Option<u64> {
        checked_pow(self.p, self.degree as u32)
    }

    pub fn zero(&self) -> FqElement {
        FqElement {
            coeffs: vec![0; self.degree],
        }
    }

    pub fn one(&self) -> FqElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FqElement {
        let mut e = self.zero();
        e.coeffs[0] = n.rem_euclid(self.p as i64) as u64;
        e
    }

    pub fn element(&self, coeffs: Vec<u64>) -> Result<FqElement, FieldError> {
        if coeffs.len() != self.degree {
            return Err(FieldError::BadLength {
                got: coeffs.len(),
                expected: self.degree,
            });
        }
        if let Some(&value) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(FieldError::BadCoordinate { value, p: self.p });
        }
        Ok(FqElement { coeffs })
    }

    fn from_poly(&self, mut v: Vec<u64>) -> FqElement {
        v.resize(self.degree, 0);
        FqElement { coeffs: v }
    }

    pub fn add(&self, x: &FqElement, y: &FqElement) -> FqElement {
        let coeffs = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(a, b)| (a + b) % self.p)
            .collect();
        FqElement { coeffs }
    }

    pub fn sub(&self, x: &FqElement, y: &FqElement) -> FqElement {
        let coeffs = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(a, b)| (a + self.p - b) % self.p)
            .collect();
        FqElement { coeffs }
    }

    pub fn neg(&self, x: &FqElement) -> FqElement {
        self.sub(&self.zero(), x)
    }

    pub fn scale(&self, x: &FqElement, c: i64) -> FqElement {
        let c = c.rem_euclid(self.p as i64) as u64;
        FqElement {
            coeffs: x.coeffs.iter().map(|a| a * c % self.p).collect(),
        }
    }

    pub fn mul(&self, x: &FqElement, y: &FqElement) -> FqElement {
        let prod = poly::mul(&x.coeffs, &y.coeffs, self.p);
        self.from_poly(poly::rem(&prod, &self.modulus, self.p))
    }

    pub fn pow(&self, x: &FqElement, mut e: u64) -> FqElement {
        let mut acc = self.one();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Raises to a signed power; negative exponents need a nonzero base.
    pub fn pow_signed(&self, x: &FqElement, e: i64) -> Result<FqElement, FieldError> {
        if e >= 0 {
            Ok(self.pow(x, e as u64))
        } else {
            Ok(self.pow(&self.inv(x)?, e.unsigned_abs()))
        }
    }

    pub fn inv(&self, x: &FqElement) -> Result<FqElement, FieldError> {
        if x.is_zero() {
            return Err(FieldError::DivisionByZero {
                p: self.p,
                degree: self.degree,
            });
        }
        // Extended Euclid on (x, g) over F_p.
        let p = self.p;
        let mut r0 = poly::trim(self.modulus.clone());
        let mut r1 = poly::trim(x.coeffs.clone());
        let mut t0: Vec<u64> = Vec::new();
        let mut t1: Vec<u64> = vec![1];
        while r1.len() > 1 {
            let (quot, rem) = divmod(&r0, &r1, p);
            let t2 = poly::sub(&t0, &poly::mul(&quot, &t1, p), p);
            r0 = r1;
            r1 = rem;
            t0 = t1;
            t1 = t2;
        }
        let c_inv = mod_inverse(r1[0], p).expect("remainder is a unit");
        let inv: Vec<u64> = t1.iter().map(|c| c * c_inv % p).collect();
        Ok(self.from_poly(poly::rem(&inv, &self.modulus, p)))
    }

    /// `x^{p^k}`.
    pub fn frobenius(&self, x: &FqElement, k: usize) -> FqElement {
        let mut y = x.clone();
        for _ in 0..k {
            y = self.pow(&y, self.p);
        }
        y
    }

    /// Trace down to the prime field, returned as an integer in `[0, p)`.
    pub fn absolute_trace(&self, x: &FqElement) -> u64 {
        let mut acc = self.zero();
        let mut y = x.clone();
        for _ in 0..self.degree {
            acc = self.add(&acc, &y);
            y = self.pow(&y, self.p);
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0));
        acc.coeffs[0]
    }

    /// The element at position `index` of the lexicographic enumeration.
    pub fn element_at(&self, mut index: u64) -> FqElement {
        let mut coeffs = vec![0u64; self.degree];
        for slot in coeffs.iter_mut().rev() {
            *slot = index % self.p;
            index /= self.p;
        }
        FqElement { coeffs }
    }

    /// Every element, in lexicographic order of coordinate vectors.
    pub fn enumerate_all(&self) -> Result<impl Iterator<Item = FqElement> + '_, FieldError> {
        let order =
            self.order()
                .filter(|&o| o <= ENUMERATION_LIMIT)
                .ok_or(FieldError::TooLarge {
                    p: self.p,
                    degree: self.degree,
                })?;
        Ok((0..order).map(move |i| self.element_at(i)))
    }

    /// The `q − 1` nonzero elements in lexicographic order.
    pub fn enumerate_units(&self) -> Result<impl Iterator<Item = FqElement> + '_, FieldError> {
        Ok(self.enumerate_all()?.skip(1))
    }
}

fn divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = b.len() - 1;
    let lead_inv = mod_inverse(b[db], p).expect("nonzero leading coefficient");
    let mut r = poly::trim(a.to_vec());
    let mut q = vec![0u64; r.len().saturating_sub(db).max(1)];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let factor = r[dr] * lead_inv % p;
        let shift = dr - db;
        q[shift] = factor;
        for (k, &bk) in b.iter().enumerate() {
            r[shift + k] = (r[shift + k] + p - factor * bk % p) % p;
        }
        r = poly::trim(r);
    }
    (poly::trim(q), r)
}

/// The embedding `F_{p^s} → F_{p^{s'}}` sending `b` to the lexicographically
/// smallest root of the source modulus.
#[derive(Debug, Clone)]
pub struct FieldEmbedding {
    source: FqParams,
    target: FqParams,
    generator_image: FqElement,
}

impl FieldEmbedding {
    pub fn new(source: &FqParams, target: &FqParams) -> Result<Self, FieldError> {
        if source.p != target.p || target.degree % source.degree != 0 {
            return Err(FieldError::NotASubfield {
                p: source.p,
                base: source.degree,
                ext: target.degree,
            });
        }
        let root = if source.degree == 1 {
            // g = b − c for some c ∈ F_p.
            target.from_int((source.p - source.modulus[0]) as i64)
        } else {
            let mut found = None;
            for x in target.enumerate_all()? {
                if eval_poly(target, &source.modulus, &x).is_zero() {
                    found = Some(x);
                    break;
                }
            }
            found.ok_or(FieldError::NoRoot {
                p: source.p,
                inner: source.degree,
                outer: target.degree,
            })?
        };
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            generator_image: root,
        })
    }

    pub fn source(&self) -> &FqParams {
        &self.source
    }

    pub fn target(&self) -> &FqParams {
        &self.target
    }

    pub fn generator_image(&self) -> &FqElement {
        &self.generator_image
    }

    pub fn map(&self, x: &FqElement) -> FqElement {
        let t = &self.target;
        let mut acc = t.zero();
        for &c in x.coeffs.iter().rev() {
            acc = t.mul(&acc, &self.generator_image);
            acc = t.add(&acc, &t.from_int(c as i64));
        }
        acc
    }

    /// Inverse image of `y`, or `None` when `y` is outside the subfield.
    pub fn preimage(&self, y: &FqElement) -> Option<FqElement> {
        let t = &self.target;
        let p = t.p;
        let s = self.source.degree;
        let rows = t.degree;
        // Columns are the powers of the generator image; solve by elimination.
        let mut columns = Vec::with_capacity(s);
        let mut power = t.one();
        for _ in 0..s {
            columns.push(power.coeffs.clone());
            power = t.mul(&power, &self.generator_image);
        }
        let mut aug: Vec<Vec<u64>> = (0..rows)
            .map(|r| {
                let mut row: Vec<u64> = columns.iter().map(|c| c[r]).collect();
                row.push(y.coeffs[r]);
                row
            })
            .collect();
        let mut pivot_row = 0;
        let mut pivots = Vec::new();
        for col in 0..s {
            let Some(r) = (pivot_row..rows).find(|&r| aug[r][col] != 0) else {
                continue;
            };
            aug.swap(pivot_row, r);
            let inv = mod_inverse(aug[pivot_row][col], p).expect("nonzero pivot");
            for v in aug[pivot_row].iter_mut() {
                *v = *v * inv % p;
            }
            for r2 in 0..rows {
                if r2 != pivot_row && aug[r2][col] != 0 {
                    let f = aug[r2][col];
                    for c in 0..=s {
                        aug[r2][c] = (aug[r2][c] + p - f * aug[pivot_row][c] % p) % p;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        if aug[pivot_row..].iter().any(|row| row[s] != 0) {
            return None;
        }
        let mut coeffs = vec![0u64; s];
        for (r, &col) in pivots.iter().enumerate() {
            coeffs[col] = aug[r][s];
        }
        Some(FqElement { coeffs })
    }

    /// Trace and norm from the target down to the source, in source coordinates.
    pub fn trace_norm(&self, x: &FqElement) -> (FqElement, FqElement) {
        let t = &self.target;
        let steps = t.degree / self.source.degree;
        let mut trace = t.zero();
        let mut norm = t.one();
        let mut y = x.clone();
        for _ in 0..steps {
            trace = t.add(&trace, &y);
            norm = t.mul(&norm, &y);
            y = t.frobenius(&y, self.source.degree);
        }
        let pull = |z: &FqElement| {
            self.preimage(z)
                .expect("trace and norm lie in the subfield")
        };
        (pull(&trace), pull(&norm))
    }
}

fn eval_poly(field: &FqParams, coeffs: &[u64], x: &FqElement) -> FqElement {
    let mut acc = field.zero();
    for &c in coeffs.iter().rev() {
        acc = field.mul(&acc, x);
        acc = field.add(&acc, &field.from_int(c as i64));
    }
    acc
}

/// `(Tr, Norm)` of `x ∈ ext` down to the subfield `base`.
pub fn trace_norm(
    x: &FqElement,
    ext: &FqParams,
    base: &FqParams,
) -> Result<(FqElement, FqElement), FieldError> {
    Ok(FieldEmbedding::new(base, ext)?.trace_norm(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_selection() {
        assert_eq!(select_modulus(5, 1).unwrap(), vec![0, 1]);
        assert_eq!(select_modulus(3, 2).unwrap(), vec![1, 0, 1]);
        // (1, 0, 0) is x^3 + 1 = (x + 1)(x^2 + x + 1); next comes x^3 + x^2 + 1.
        assert_eq!(select_modulus(2, 3).unwrap(), vec![1, 0, 1, 1]);
        assert_eq!(select_modulus(4, 1), Err(FieldError::NotPrime(4)));
    }

    #[test]
    fn f9_generator_squares_to_minus_one() {
        let f9 = FqParams::new(3, 2).unwrap();
        let b = f9.element(vec![0, 1]).unwrap();
        assert_eq!(f9.mul(&b, &b), f9.from_int(-1));
    }

    #[test]
    fn inverse_and_lagrange() {
        let f = FqParams::new(5, 2).unwrap();
        assert_eq!(f.inv(&f.one()).unwrap(), f.one());
        for x in f.enumerate_units().unwrap() {
            assert_eq!(f.pow(&x, 24), f.one());
            assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
        }
        assert!(matches!(
            f.inv(&f.zero()),
            Err(FieldError::DivisionByZero { .. })
        ));
    }

    #[test]
    fn enumeration_order() {
        let f3 = FqParams::new(3, 1).unwrap();
        let units: Vec<_> = f3.enumerate_units().unwrap().collect();
        assert_eq!(units, vec![f3.from_int(1), f3.from_int(2)]);
        let f5 = FqParams::new(5, 1).unwrap();
        let units: Vec<u64> = f5
            .enumerate_units()
            .unwrap()
            .map(|x| x.coeffs()[0])
            .collect();
        assert_eq!(units, vec![1, 2, 3, 4]);
        let f27 = FqParams::new(3, 3).unwrap();
        let units: Vec<_> = f27.enumerate_units().unwrap().collect();
        assert_eq!(units.len(), 26);
        assert!(units.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn trace_and_norm() {
        let f3 = FqParams::new(3, 1).unwrap();
        let f9 = FqParams::new(3, 2).unwrap();
        let (tr, nm) = trace_norm(&f9.one(), &f9, &f3).unwrap();
        assert_eq!(tr, f3.from_int(2));
        assert_eq!(nm, f3.one());
        let (tr0, _) = trace_norm(&f9.zero(), &f9, &f3).unwrap();
        assert_eq!(tr0, f3.zero());
        let emb = FieldEmbedding::new(&f3, &f9).unwrap();
        for x in f9.enumerate_units().unwrap() {
            let (_, nm) = emb.trace_norm(&x);
            assert_eq!(emb.map(&nm), f9.pow(&x, 4));
        }
        let f4 = FqParams::new(3, 4).unwrap();
        let f27 = FqParams::new(3, 3).unwrap();
        assert!(matches!(
            trace_norm(&f4.one(), &f4, &f27),
            Err(FieldError::NotASubfield { .. })
        ));
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let f9 = FqParams::new(3, 2).unwrap();
        let f81 = FqParams::new(3, 4).unwrap();
        let emb = FieldEmbedding::new(&f9, &f81).unwrap();
        let elems: Vec<_> = f9.enumerate_all().unwrap().collect();
        for x in &elems {
            for y in &elems {
                assert_eq!(emb.map(&f9.mul(x, y)), f81.mul(&emb.map(x), &emb.map(y)));
                assert_eq!(emb.map(&f9.add(x, y)), f81.add(&emb.map(x), &emb.map(y)));
            }
            assert_eq!(emb.preimage(&emb.map(x)).as_ref(), Some(x));
        }
        let subfield = f81
            .enumerate_all()
            .unwrap()
            .filter(|y| emb.preimage(y).is_some())
            .count();
        assert_eq!(subfield, 9);
    }
}
