use std::sync::Arc;

use rayon::prelude::*;

use super::ring::{RamifiedElement, RingParams};
use super::PadicError;

/// Dense `rows × cols` matrix over a [`RingParams`] ring, row-major with each
/// entry's coordinates stored contiguously.
#[derive(Clone)]
pub struct RingMatrix {
    params: Arc<RingParams>,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl std::fmt::Debug for RingMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RingMatrix({}x{})", self.rows, self.cols)
    }
}

impl RingMatrix {
    pub fn zeros(params: &Arc<RingParams>, rows: usize, cols: usize) -> Self {
        let len = params.len();
        Self {
            params: params.clone(),
            rows,
            cols,
            data: vec![0; rows * cols * len],
        }
    }

    pub fn identity(params: &Arc<RingParams>, n: usize) -> Self {
        let mut m = Self::zeros(params, n, n);
        for i in 0..n {
            m.set(i, i, &RamifiedElement::one(params));
        }
        m
    }

    /// Builds a matrix from a closure; rows are filled in parallel.
    pub fn from_fn<F>(params: &Arc<RingParams>, rows: usize, cols: usize, f: F) -> Self
    where
        F: Fn(usize, usize) -> RamifiedElement + Sync,
    {
        let len = params.len();
        let mut data = vec![0u64; rows * cols * len];
        if len > 0 && cols > 0 {
            data.par_chunks_mut(cols * len)
                .enumerate()
                .for_each(|(i, row)| {
                    for j in 0..cols {
                        let x = f(i, j);
                        row[j * len..(j + 1) * len].copy_from_slice(x.coeffs());
                    }
                });
        }
        Self {
            params: params.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn params(&self) -> &Arc<RingParams> {
        &self.params
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn slot(&self, i: usize, j: usize) -> std::ops::Range<usize> {
        let len = self.params.len();
        let start = (i * self.cols + j) * len;
        start..start + len
    }

    pub(crate) fn raw_entry(&self, i: usize, j: usize) -> &[u64] {
        &self.data[self.slot(i, j)]
    }

    pub fn get(&self, i: usize, j: usize) -> RamifiedElement {
        RamifiedElement::from_raw(&self.params, self.raw_entry(i, j).to_vec())
    }

    pub fn set(&mut self, i: usize, j: usize, x: &RamifiedElement) {
        let slot = self.slot(i, j);
        self.data[slot].copy_from_slice(x.coeffs());
    }

    pub fn is_entry_zero(&self, i: usize, j: usize) -> bool {
        self.raw_entry(i, j).iter().all(|&c| c == 0)
    }

    /// Number of entries that are nonzero mod `p^M`.
    pub fn nonzero_count(&self) -> usize {
        let len = self.params.len();
        self.data
            .chunks(len)
            .filter(|c| c.iter().any(|&v| v != 0))
            .count()
    }

    fn check_same_ring(&self, other: &Self) -> Result<(), PadicError> {
        if Arc::ptr_eq(&self.params, &other.params) || *self.params == *other.params {
            Ok(())
        } else {
            Err(PadicError::ParamsMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PadicError> {
        self.check_same_ring(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(PadicError::Shape);
        }
        let m = self.params.modulus();
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| {
                let s = a + b;
                if s >= m {
                    s - m
                } else {
                    s
                }
            })
            .collect();
        Ok(Self {
            params: self.params.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: &RamifiedElement) -> Self {
        let len = self.params.len();
        let mut data = self.data.clone();
        data.par_chunks_mut(len.max(1)).for_each(|slot| {
            if slot.iter().any(|&v| v != 0) {
                let copy = slot.to_vec();
                self.params.mul_into(&copy, c.coeffs(), slot);
            }
        });
        Self {
            params: self.params.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Matrix product; output rows are computed in parallel and zero
    /// entries of `self` are skipped.
    pub fn mul(&self, other: &Self) -> Result<Self, PadicError> {
        self.check_same_ring(other)?;
        if self.cols != other.rows {
            return Err(PadicError::Shape);
        }
        let params = &self.params;
        let len = params.len();
        let raw_len = params.raw_len();
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut data = vec![0u64; n * m * len];
        if len == 0 || m == 0 {
            return Ok(Self {
                params: params.clone(),
                rows: n,
                cols: m,
                data,
            });
        }
        data.par_chunks_mut(m * len)
            .enumerate()
            .for_each(|(i, out_row)| {
                let mut acc = vec![0u128; m * raw_len];
                let mut dirty = false;
                for t in 0..k {
                    let a = self.raw_entry(i, t);
                    if a.iter().all(|&v| v == 0) {
                        continue;
                    }
                    dirty = true;
                    for j in 0..m {
                        let b = other.raw_entry(t, j);
                        if b.iter().all(|&v| v == 0) {
                            continue;
                        }
                        params.mul_acc_raw(&mut acc[j * raw_len..(j + 1) * raw_len], a, b);
                    }
                }
                if dirty {
                    for j in 0..m {
                        params.reduce_raw(
                            &acc[j * raw_len..(j + 1) * raw_len],
                            &mut out_row[j * len..(j + 1) * len],
                        );
                    }
                }
            });
        Ok(Self {
            params: params.clone(),
            rows: n,
            cols: m,
            data,
        })
    }

    pub fn pow(&self, mut e: u64) -> Result<Self, PadicError> {
        if !self.is_square() {
            return Err(PadicError::Shape);
        }
        let mut result = Self::identity(&self.params, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn trace(&self) -> Result<RamifiedElement, PadicError> {
        if !self.is_square() {
            return Err(PadicError::Shape);
        }
        let mut acc = RamifiedElement::zero(&self.params);
        for i in 0..self.rows {
            acc.add_assign(&self.get(i, i));
        }
        Ok(acc)
    }

    /// `Tr(self · other) = Σ_{i,j} self[i][j] · other[j][i]` without forming
    /// the product.
    pub fn trace_of_product(&self, other: &Self) -> Result<RamifiedElement, PadicError> {
        self.check_same_ring(other)?;
        if self.rows != other.cols || self.cols != other.rows {
            return Err(PadicError::Shape);
        }
        let params = &self.params;
        let raw_len = params.raw_len();
        let partials: Vec<Vec<u64>> = (0..self.rows)
            .into_par_iter()
            .map(|i| {
                let mut acc = vec![0u128; raw_len];
                for j in 0..self.cols {
                    let a = self.raw_entry(i, j);
                    if a.iter().all(|&v| v == 0) {
                        continue;
                    }
                    params.mul_acc_raw(&mut acc, a, other.raw_entry(j, i));
                }
                let mut out = vec![0u64; params.len()];
                params.reduce_raw(&acc, &mut out);
                out
            })
            .collect();
        let mut total = RamifiedElement::zero(params);
        for part in partials {
            total.add_assign(&RamifiedElement::from_raw(params, part));
        }
        Ok(total)
    }

    pub fn matvec(&self, v: &[RamifiedElement]) -> Result<Vec<RamifiedElement>, PadicError> {
        if v.len() != self.cols {
            return Err(PadicError::Shape);
        }
        let params = &self.params;
        let raw_len = params.raw_len();
        Ok((0..self.rows)
            .into_par_iter()
            .map(|i| {
                let mut acc = vec![0u128; raw_len];
                for (j, x) in v.iter().enumerate() {
                    params.mul_acc_raw(&mut acc, self.raw_entry(i, j), x.coeffs());
                }
                let mut out = vec![0u64; params.len()];
                params.reduce_raw(&acc, &mut out);
                RamifiedElement::from_raw(params, out)
            })
            .collect())
    }

    /// The principal submatrix on the first `n` rows and columns.
    pub fn leading_block(&self, n: usize) -> Self {
        let n = n.min(self.rows).min(self.cols);
        let len = self.params.len();
        let mut data = Vec::with_capacity(n * n * len);
        for i in 0..n {
            let start = i * self.cols * len;
            data.extend_from_slice(&self.data[start..start + n * len]);
        }
        Self {
            params: self.params.clone(),
            rows: n,
            cols: n,
            data,
        }
    }
}

impl PartialEq for RingMatrix {
    fn eq(&self, other: &Self) -> bool {
        *self.params == *other.params
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}
