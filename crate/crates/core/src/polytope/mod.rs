//! Combinatorics of the exponent matrix `A`: the polytope
//! `Δ = conv{0, w_1, .., w_N}`, its cone `δ`, the weight `d(w)`, lattice
//! points by weight, the monoid `C(A)`, a simplicial decomposition, the
//! normalized volume `n!·vol(Δ)`, and a bounded nondegeneracy test.

pub mod lattice;
mod nondegeneracy;
mod triangulate;

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::Rational;
use lattice::{det, normal_vector, rank, solve};

pub use nondegeneracy::{nondegeneracy_check, NondegeneracyVerdict};
pub use triangulate::{simplicial_decomposition, Simplex, SimplicialDecomposition};

/// Input size limits; they keep every determinant comfortably inside `i64`.
pub const MAX_DIMENSION: usize = 4;
pub const MAX_COLUMNS: usize = 10;
pub const MAX_ENTRY: i64 = 100;
/// Largest lattice-point box [`enumerate`] will scan.
pub const ENUMERATION_BUDGET: u64 = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("exponent matrix is empty")]
    Empty,
    #[error("row {row} has {got} entries, expected {expected}")]
    Ragged {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("exponent matrix has rank {rank}, expected {n}")]
    RankDeficient { rank: usize, n: usize },
    #[error("{what} is {got}, the limit is {limit}")]
    TooLarge {
        what: &'static str,
        got: u64,
        limit: u64,
    },
    #[error("vector has {got} coordinates, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("weight cap must be nonnegative")]
    NegativeCap,
    #[error(transparent)]
    Field(#[from] crate::finite_field::FieldError),
}

/// An `n × N` integer matrix of rank `n`, stored by rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentConfig {
    rows: Vec<Vec<i64>>,
}

impl ExponentConfig {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, PolytopeError> {
        let n = rows.len();
        if n == 0 || rows[0].is_empty() {
            return Err(PolytopeError::Empty);
        }
        let cols = rows[0].len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(PolytopeError::Ragged {
                    row,
                    got: r.len(),
                    expected: cols,
                });
            }
        }
        if n > MAX_DIMENSION {
            return Err(PolytopeError::TooLarge {
                what: "dimension n",
                got: n as u64,
                limit: MAX_DIMENSION as u64,
            });
        }
        if cols > MAX_COLUMNS {
            return Err(PolytopeError::TooLarge {
                what: "column count N",
                got: cols as u64,
                limit: MAX_COLUMNS as u64,
            });
        }
        if let Some(&big) = rows
            .iter()
            .flatten()
            .find(|v| v.unsigned_abs() > MAX_ENTRY as u64)
        {
            return Err(PolytopeError::TooLarge {
                what: "entry magnitude",
                got: big.unsigned_abs(),
                limit: MAX_ENTRY as u64,
            });
        }
        let wide: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| v as i128).collect())
            .collect();
        let r = rank(&wide);
        if r < n {
            return Err(PolytopeError::RankDeficient { rank: r, n });
        }
        Ok(Self { rows })
    }

    /// Dimension `n`.
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns `N`.
    pub fn num_columns(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Column `w_j`.
    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.num_columns()).map(|j| self.column(j)).collect()
    }

    pub(crate) fn wide_rows(&self) -> Vec<Vec<i128>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&v| v as i128).collect())
            .collect()
    }
}

/// A linear functional `x ↦ coeffs·x / scale` with integer data.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct IntFunctional {
    pub coeffs: Vec<i128>,
    pub scale: i128,
}

impl IntFunctional {
    fn numerator(&self, w: &[i64]) -> i128 {
        self.coeffs
            .iter()
            .zip(w)
            .map(|(&c, &x)| c * x as i128)
            .sum()
    }

    fn eval(&self, w: &[i64]) -> Rational {
        Rational::new(self.numerator(w) as i64, self.scale as i64)
    }

    fn as_rationals(&self) -> Vec<Rational> {
        self.coeffs
            .iter()
            .map(|&c| Rational::new(c as i64, self.scale as i64))
            .collect()
    }
}

/// Facet data of `Δ` and `δ`.
#[derive(Debug, Clone)]
pub struct NewtonData {
    config: ExponentConfig,
    facets: Vec<IntFunctional>,
    /// Primitive inward normals `c` with `δ = {x : c·x ≥ 0}`.
    cone_facets: Vec<Vec<i128>>,
    denom: i64,
}

/// Result of [`weight`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    Value(Rational),
    OutsideCone,
}

impl Weight {
    pub fn value(self) -> Option<Rational> {
        match self {
            Weight::Value(v) => Some(v),
            Weight::OutsideCone => None,
        }
    }
}

/// Facet functionals of `Δ` (those `ℓ ≡ 1` on a facet avoiding 0) and the
/// facet normals of `δ`, by brute force over subsets of columns.
pub fn newton_data(config: &ExponentConfig) -> Result<NewtonData, PolytopeError> {
    let n = config.n();
    let cols: Vec<Vec<i128>> = config
        .columns()
        .iter()
        .map(|c| c.iter().map(|&v| v as i128).collect())
        .collect();
    let big_n = cols.len();

    let mut facets = BTreeSet::new();
    for subset in subsets(big_n, n) {
        let m: Vec<Vec<i128>> = subset.iter().map(|&j| cols[j].clone()).collect();
        let Some((nums, d)) = solve(&m, &vec![1; n]) else {
            continue;
        };
        // ℓ(x) = nums·x / d; valid when ℓ(w_j) ≤ 1 for every column.
        let ok = cols.iter().all(|c| {
            let v: i128 = nums.iter().zip(c).map(|(a, b)| a * b).sum();
            v <= d
        });
        if ok {
            let g = nums.iter().fold(d, |g, &x| lattice::gcd(g, x));
            facets.insert(IntFunctional {
                coeffs: nums.iter().map(|x| x / g).collect(),
                scale: d / g,
            });
        }
    }

    let mut cone_facets = BTreeSet::new();
    for subset in subsets(big_n, n - 1) {
        let m: Vec<Vec<i128>> = subset.iter().map(|&j| cols[j].clone()).collect();
        let normal = if n == 1 {
            vec![1]
        } else {
            normal_vector(&m, n)
        };
        if normal.iter().all(|&x| x == 0) {
            continue;
        }
        for sign in [1i128, -1] {
            let c: Vec<i128> = normal.iter().map(|&x| sign * x).collect();
            if cols.iter().all(|w| dot(&c, w) >= 0) {
                cone_facets.insert(c);
            }
        }
    }
    // Keep only normals whose zero set meets δ in a facet.
    let cone_facets: Vec<Vec<i128>> = cone_facets
        .into_iter()
        .filter(|c| {
            let on: Vec<Vec<i128>> = cols.iter().filter(|w| dot(c, w) == 0).cloned().collect();
            n == 1 || rank(&on) == n - 1
        })
        .collect();

    let denom = facets
        .iter()
        .fold(1i64, |acc, f| num_integer::lcm(acc, f.scale as i64));
    Ok(NewtonData {
        config: config.clone(),
        facets: facets.into_iter().collect(),
        cone_facets,
        denom,
    })
}

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl NewtonData {
    pub fn config(&self) -> &ExponentConfig {
        &self.config
    }

    pub fn n(&self) -> usize {
        self.config.n()
    }

    /// Facet functionals of `Δ` as rational coefficient vectors.
    pub fn facets(&self) -> Vec<Vec<Rational>> {
        self.facets
            .iter()
            .map(IntFunctional::as_rationals)
            .collect()
    }

    pub(crate) fn int_facets(&self) -> &[IntFunctional] {
        &self.facets
    }

    /// Inward normals of `δ`; empty when `δ = R^n`.
    pub fn cone_facets(&self) -> Vec<Vec<i64>> {
        self.cone_facets
            .iter()
            .map(|c| c.iter().map(|&x| x as i64).collect())
            .collect()
    }

    /// The least `d > 0` with `d·d(w) ∈ Z` for every `w ∈ Z^n ∩ δ`.
    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn in_cone(&self, w: &[i64]) -> bool {
        self.cone_facets
            .iter()
            .all(|c| c.iter().zip(w).map(|(&a, &x)| a * x as i128).sum::<i128>() >= 0)
    }

    /// Rational points of `δ` (e.g. twist exponents) use the same test.
    pub fn in_cone_rational(&self, w: &[Rational]) -> bool {
        self.cone_facets.iter().all(|c| {
            let s: Rational = c
                .iter()
                .zip(w)
                .map(|(&a, x)| Rational::from(a as i64) * x)
                .sum();
            s >= Rational::from(0)
        })
    }

    pub fn weight(&self, w: &[i64]) -> Weight {
        if !self.in_cone(w) {
            return Weight::OutsideCone;
        }
        let best = self
            .facets
            .iter()
            .map(|f| f.eval(w))
            .max()
            .unwrap_or(Rational::from(0));
        Weight::Value(best.max(Rational::from(0)))
    }

    /// `d(w)` for a rational point of `δ`.
    pub fn weight_rational(&self, w: &[Rational]) -> Option<Rational> {
        if !self.in_cone_rational(w) {
            return None;
        }
        let best = self
            .facets()
            .iter()
            .map(|f| f.iter().zip(w).map(|(a, b)| a * b).sum::<Rational>())
            .max()
            .unwrap_or(Rational::from(0));
        Some(best.max(Rational::from(0)))
    }

    /// `d·d(w)` as an integer, for `w ∈ Z^n ∩ δ`.
    pub fn scaled_weight(&self, w: &[i64]) -> Option<i64> {
        self.weight(w)
            .value()
            .map(|v| (v * Rational::from(self.denom)).to_integer())
    }
}

/// `d(w) = max(0, max_F ℓ_F(w))` on `δ`, else [`Weight::OutsideCone`].
pub fn weight(nd: &NewtonData, w: &[i64]) -> Weight {
    nd.weight(w)
}

/// Lattice points of `δ` with `d(w) ≤ D`, sorted by `(d(w), lexicographic)`.
#[derive(Debug, Clone)]
pub struct LatticePointSet {
    points: Vec<Vec<i64>>,
    weights: Vec<Rational>,
    index: HashMap<Vec<i64>, usize>,
    cap: Rational,
}

impl LatticePointSet {
    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn cap(&self) -> Rational {
        self.cap
    }

    pub fn index_of(&self, w: &[i64]) -> Option<usize> {
        self.index.get(w).copied()
    }
}

/// Enumerates `Z^n ∩ δ` up to weight `D` by scanning the box `D·B`, where
/// `B` is the bounding box of `Δ`.
pub fn enumerate(nd: &NewtonData, cap: Rational) -> Result<LatticePointSet, PolytopeError> {
    let zero = vec![Rational::from(0); nd.n()];
    enumerate_shifted(nd, &zero, cap)
}

/// Integer points `u` with `u + shift ∈ δ` and `d(u + shift) ≤ D`, sorted
/// by `(d(u + shift), lexicographic)`; the stored weights are `d(u + shift)`.
pub fn enumerate_shifted(
    nd: &NewtonData,
    shift: &[Rational],
    cap: Rational,
) -> Result<LatticePointSet, PolytopeError> {
    if cap < Rational::from(0) {
        return Err(PolytopeError::NegativeCap);
    }
    let n = nd.n();
    if shift.len() != n {
        return Err(PolytopeError::DimensionMismatch {
            got: shift.len(),
            expected: n,
        });
    }
    let cols = nd.config.columns();
    let mut ranges = Vec::with_capacity(n);
    let mut volume: u64 = 1;
    for i in 0..n {
        let lo = cols.iter().map(|c| c[i]).min().unwrap().min(0);
        let hi = cols.iter().map(|c| c[i]).max().unwrap().max(0);
        let lo = (cap * Rational::from(lo) - shift[i]).floor().to_integer();
        let hi = (cap * Rational::from(hi) - shift[i]).ceil().to_integer();
        volume = volume.saturating_mul((hi - lo + 1) as u64);
        ranges.push((lo, hi));
    }
    if volume > ENUMERATION_BUDGET {
        return Err(PolytopeError::TooLarge {
            what: "lattice box size",
            got: volume,
            limit: ENUMERATION_BUDGET,
        });
    }
    let unshifted = shift.iter().all(|x| *x == Rational::from(0));
    let mut found: Vec<(Rational, Vec<i64>)> = Vec::new();
    let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        let d = if unshifted {
            nd.weight(&cur).value()
        } else {
            let x: Vec<Rational> = cur
                .iter()
                .zip(shift)
                .map(|(&a, b)| Rational::from(a) + b)
                .collect();
            nd.weight_rational(&x)
        };
        if let Some(d) = d {
            if d <= cap {
                found.push((d, cur.clone()));
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                found.sort();
                let index = found
                    .iter()
                    .enumerate()
                    .map(|(k, (_, w))| (w.clone(), k))
                    .collect();
                let (weights, points) = found.into_iter().unzip();
                return Ok(LatticePointSet {
                    points,
                    weights,
                    index,
                    cap,
                });
            }
            i -= 1;
            if cur[i] < ranges[i].1 {
                cur[i] += 1;
                break;
            }
            cur[i] = ranges[i].0;
        }
    }
}

/// `n!·vol(Δ)`: the sum of `|det|` over the simplices of the decomposition.
pub fn normalized_volume(config: &ExponentConfig) -> Result<u64, PolytopeError> {
    let nd = newton_data(config)?;
    let dec = simplicial_decomposition(&nd);
    Ok(dec.simplices().iter().map(|s| s.det.unsigned_abs()).sum())
}

/// Outcome of [`monoid_membership`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Membership {
    /// `w = Σ k_j w_j` with the given nonnegative witness.
    InCA(Vec<u64>),
    NotInCA,
    Unknown,
}

/// Decides `w ∈ C(A)` by breadth-first search over `Σ k_j ≤ K_max`.
///
/// `NotInCA` is reported when `w ∉ δ`, when `w` is outside the lattice
/// spanned by the columns, or when the cone is pointed and a positive
/// functional bounds `Σ k_j` below `K_max` with no hit.
pub fn monoid_membership(
    config: &ExponentConfig,
    w: &[i64],
    k_max: u64,
) -> Result<Membership, PolytopeError> {
    let n = config.n();
    if w.len() != n {
        return Err(PolytopeError::DimensionMismatch {
            got: w.len(),
            expected: n,
        });
    }
    let nd = newton_data(config)?;
    if !nd.in_cone(w) {
        return Ok(Membership::NotInCA);
    }
    let wide = config.wide_rows();
    let target: Vec<i128> = w.iter().map(|&x| x as i128).collect();
    if !lattice::in_integer_span(&wide, &target) {
        return Ok(Membership::NotInCA);
    }
    let cols = config.columns();
    let big_n = cols.len();
    if w.iter().all(|&x| x == 0) {
        return Ok(Membership::InCA(vec![0; big_n]));
    }

    // h = Σ cone normals is positive on δ \ {0} when δ is pointed.
    let h: Vec<i128> = (0..n)
        .map(|i| nd.cone_facets.iter().map(|c| c[i]).sum())
        .collect();
    let h_cols: Vec<i128> = cols
        .iter()
        .map(|c| c.iter().zip(&h).map(|(&x, &y)| x as i128 * y).sum())
        .collect();
    let step_bound = if h_cols.iter().all(|&v| v > 0) {
        let hw: i128 = w.iter().zip(&h).map(|(&x, &y)| x as i128 * y).sum();
        let min_step = *h_cols.iter().min().unwrap();
        Some((hw / min_step) as u64)
    } else {
        None
    };
    let limit = step_bound.map_or(k_max, |b| b.min(k_max));

    let mut seen: HashMap<Vec<i64>, Vec<u64>> = HashMap::new();
    seen.insert(vec![0; n], vec![0; big_n]);
    let mut frontier: VecDeque<Vec<i64>> = VecDeque::from([vec![0; n]]);
    for _ in 0..limit {
        let mut next = VecDeque::new();
        while let Some(x) = frontier.pop_front() {
            let k = seen[&x].clone();
            for (j, c) in cols.iter().enumerate() {
                let y: Vec<i64> = x.iter().zip(c).map(|(a, b)| a + b).collect();
                if seen.contains_key(&y) {
                    continue;
                }
                // Anything reaching w must leave w − y inside δ.
                let rest: Vec<i64> = w.iter().zip(&y).map(|(a, b)| a - b).collect();
                if !nd.in_cone(&rest) {
                    continue;
                }
                let mut ky = k.clone();
                ky[j] += 1;
                if y == w {
                    return Ok(Membership::InCA(ky));
                }
                seen.insert(y.clone(), ky);
                next.push_back(y);
            }
            if seen.len() > 2_000_000 {
                return Ok(Membership::Unknown);
            }
        }
        if next.is_empty() {
            return Ok(Membership::NotInCA);
        }
        frontier = next;
    }
    match step_bound {
        Some(b) if b <= k_max => Ok(Membership::NotInCA),
        _ => Ok(Membership::Unknown),
    }
}

/// `|det|` of the given columns of `A`.
pub(crate) fn columns_det(config: &ExponentConfig, idx: &[usize]) -> i128 {
    let m: Vec<Vec<i128>> = idx
        .iter()
        .map(|&j| config.column(j).iter().map(|&v| v as i128).collect())
        .collect();
    det(&m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(rows: &[&[i64]]) -> ExponentConfig {
        ExponentConfig::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn config_validation() {
        assert_eq!(ExponentConfig::new(vec![]), Err(PolytopeError::Empty));
        assert!(matches!(
            ExponentConfig::new(vec![vec![1, 2], vec![3]]),
            Err(PolytopeError::Ragged { row: 1, .. })
        ));
        assert_eq!(
            ExponentConfig::new(vec![vec![1, 2], vec![2, 4]]),
            Err(PolytopeError::RankDeficient { rank: 1, n: 2 })
        );
        assert!(matches!(
            ExponentConfig::new(vec![vec![1000]]),
            Err(PolytopeError::TooLarge { .. })
        ));
    }

    #[test]
    fn one_dimensional_data() {
        let nd = newton_data(&cfg(&[&[1]])).unwrap();
        assert_eq!(nd.facets(), vec![vec![r(1)]]);
        assert_eq!(nd.cone_facets(), vec![vec![1]]);
        assert_eq!(nd.denom(), 1);
        assert_eq!(nd.weight(&[-1]), Weight::OutsideCone);

        let kl = newton_data(&cfg(&[&[1, -1]])).unwrap();
        let mut f = kl.facets();
        f.sort();
        assert_eq!(f, vec![vec![r(-1)], vec![r(1)]]);
        assert!(kl.cone_facets().is_empty());
        assert_eq!(kl.weight(&[-4]), Weight::Value(r(4)));
    }

    #[test]
    fn unit_square() {
        let nd = newton_data(&cfg(&[&[1, 0, 1], &[0, 1, 1]])).unwrap();
        let mut f = nd.facets();
        f.sort();
        assert_eq!(f, vec![vec![r(0), r(1)], vec![r(1), r(0)]]);
        assert_eq!(nd.weight(&[2, 3]), Weight::Value(r(3)));
        assert_eq!(nd.weight(&[0, 0]), Weight::Value(r(0)));
        assert_eq!(nd.weight(&[-1, 3]), Weight::OutsideCone);
        let pts = enumerate(&nd, r(1)).unwrap();
        assert_eq!(
            pts.points(),
            &[vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
    }

    #[test]
    fn fractional_weights() {
        // Δ = conv{0, (2,0), (0,2)}... with (1,1) on the hypotenuse scaled by 1/2.
        let nd = newton_data(&cfg(&[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!(nd.denom(), 2);
        assert_eq!(nd.weight(&[1, 0]), Weight::Value(Rational::new(1, 2)));
        assert_eq!(nd.scaled_weight(&[1, 2]), Some(3));
    }

    #[test]
    fn enumeration_small_cases() {
        let nd = newton_data(&cfg(&[&[1]])).unwrap();
        let pts = enumerate(&nd, r(3)).unwrap();
        assert_eq!(pts.points(), &[vec![0], vec![1], vec![2], vec![3]]);
        let kl = newton_data(&cfg(&[&[1, -1]])).unwrap();
        let pts = enumerate(&kl, r(2)).unwrap();
        assert_eq!(
            pts.points(),
            &[vec![0], vec![-1], vec![1], vec![-2], vec![2]]
        );
        assert_eq!(pts.index_of(&[1]), Some(2));
        assert_eq!(
            enumerate(&kl, r(-1)).unwrap_err(),
            PolytopeError::NegativeCap
        );
    }

    #[test]
    fn shifted_enumeration() {
        let nd = newton_data(&cfg(&[&[1]])).unwrap();
        let pts = enumerate_shifted(&nd, &[Rational::new(1, 4)], r(2)).unwrap();
        assert_eq!(pts.points(), &[vec![0], vec![1]]);
        assert_eq!(pts.weights(), &[Rational::new(1, 4), Rational::new(5, 4)]);
        let pts = enumerate_shifted(&nd, &[Rational::new(5, 4)], r(2)).unwrap();
        assert_eq!(pts.points(), &[vec![-1], vec![0]]);
    }

    #[test]
    fn volumes() {
        assert_eq!(normalized_volume(&cfg(&[&[1]])).unwrap(), 1);
        assert_eq!(normalized_volume(&cfg(&[&[1, -1]])).unwrap(), 2);
        assert_eq!(
            normalized_volume(&cfg(&[&[1, 0, 1], &[0, 1, 1]])).unwrap(),
            2
        );
        assert_eq!(
            normalized_volume(&cfg(&[&[1, 0, -1], &[0, 1, -1]])).unwrap(),
            3
        );
        assert_eq!(normalized_volume(&cfg(&[&[3]])).unwrap(), 3);
    }

    #[test]
    fn membership() {
        let a = cfg(&[&[1, 0], &[0, 1]]);
        assert_eq!(
            monoid_membership(&a, &[1, 0], 50).unwrap(),
            Membership::InCA(vec![1, 0])
        );
        assert_eq!(
            monoid_membership(&cfg(&[&[2]]), &[1], 50).unwrap(),
            Membership::NotInCA
        );
        assert_eq!(
            monoid_membership(&cfg(&[&[1, -1]]), &[-3], 10).unwrap(),
            Membership::InCA(vec![0, 3])
        );
        // 1 is not a nonnegative combination of 2 and 3 even though 3 − 2 = 1.
        assert_eq!(
            monoid_membership(&cfg(&[&[2, 3]]), &[1], 50).unwrap(),
            Membership::NotInCA
        );
        assert_eq!(
            monoid_membership(&cfg(&[&[2, 3]]), &[7], 50).unwrap(),
            Membership::InCA(vec![2, 1])
        );
        assert_eq!(
            monoid_membership(&cfg(&[&[1]]), &[-2], 50).unwrap(),
            Membership::NotInCA
        );
        assert_eq!(
            monoid_membership(&a, &[60, 0], 50).unwrap(),
            Membership::Unknown
        );
    }
}
