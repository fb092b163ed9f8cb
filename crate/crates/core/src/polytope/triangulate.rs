use std::collections::BTreeSet;

use super::lattice::{column_echelon, rank, solve};
use super::{columns_det, NewtonData, PolytopeError};

/// A face of `Δ`, as the set of point ids it contains: id 0 is the origin,
/// id `j + 1` is the first column at a given position.
pub(crate) type Face = BTreeSet<usize>;

/// Position-deduplicated points of `Δ`: the origin, then each distinct
/// column (keeping the first index among equal columns).
pub(crate) struct PointTable {
    pub coords: Vec<Vec<i64>>,
    /// `ids[k]` is the point id of `coords[k]` (0 for the origin).
    pub ids: Vec<usize>,
}

impl PointTable {
    pub fn new(nd: &NewtonData) -> Self {
        let n = nd.n();
        let mut coords = vec![vec![0; n]];
        let mut ids = vec![0];
        for (j, w) in nd.config().columns().into_iter().enumerate() {
            if !coords.contains(&w) {
                coords.push(w);
                ids.push(j + 1);
            }
        }
        Self { coords, ids }
    }

    pub fn coords_of(&self, id: usize) -> &[i64] {
        let k = self
            .ids
            .iter()
            .position(|&x| x == id)
            .expect("known point id");
        &self.coords[k]
    }
}

/// All faces of `Δ`, closed under intersection, sorted by `(dim, ids)`.
pub(crate) fn faces(nd: &NewtonData, table: &PointTable) -> Vec<(usize, Face)> {
    let mut generators: Vec<Face> = Vec::new();
    for f in nd.int_facets() {
        let set: Face = table
            .coords
            .iter()
            .zip(&table.ids)
            .filter(|(w, _)| f.numerator(w) == f.scale)
            .map(|(_, &id)| id)
            .collect();
        generators.push(set);
    }
    for c in nd.cone_facets() {
        let set: Face = table
            .coords
            .iter()
            .zip(&table.ids)
            .filter(|(w, _)| c.iter().zip(w.iter()).map(|(a, b)| a * b).sum::<i64>() == 0)
            .map(|(_, &id)| id)
            .collect();
        generators.push(set);
    }
    let mut all: BTreeSet<Face> = generators.iter().cloned().collect();
    loop {
        let current: Vec<Face> = all.iter().cloned().collect();
        let mut grew = false;
        for a in &current {
            for g in &generators {
                let x: Face = a.intersection(g).copied().collect();
                if !x.is_empty() && all.insert(x) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    all.insert(table.ids.iter().copied().collect());
    let mut out: Vec<(usize, Face)> = all
        .into_iter()
        .map(|f| (affine_dim(table, &f), f))
        .collect();
    out.sort();
    out
}

fn affine_dim(table: &PointTable, face: &Face) -> usize {
    let mut it = face.iter();
    let base = table.coords_of(*it.next().expect("nonempty face")).to_vec();
    let rows: Vec<Vec<i128>> = it
        .map(|&id| {
            table
                .coords_of(id)
                .iter()
                .zip(&base)
                .map(|(a, b)| (*a - *b) as i128)
                .collect()
        })
        .collect();
    if rows.is_empty() {
        0
    } else {
        rank(&rows)
    }
}

/// Pulling triangulation of a face from its smallest point id: cone that
/// point over triangulations of the facets of the face avoiding it.
fn triangulate(face: &Face, dim: usize, all: &[(usize, Face)]) -> Vec<Vec<usize>> {
    let apex = *face.iter().next().expect("nonempty face");
    if dim == 0 {
        return vec![vec![apex]];
    }
    let mut out = Vec::new();
    for (d, sub) in all {
        if *d + 1 == dim && sub.is_subset(face) && !sub.contains(&apex) {
            for mut simplex in triangulate(sub, *d, all) {
                simplex.insert(0, apex);
                out.push(simplex);
            }
        }
    }
    out
}

/// One cone `δ(τ)` of the decomposition: the column indices of its
/// generators and `det(w_{i_1}, .., w_{i_n})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplex {
    pub columns: Vec<usize>,
    pub det: i64,
}

/// Cones over the simplices of a triangulation of the facets of `Δ`
/// avoiding the origin.
#[derive(Debug, Clone)]
pub struct SimplicialDecomposition {
    simplices: Vec<Simplex>,
    generators: Vec<Vec<Vec<i64>>>,
}

impl SimplicialDecomposition {
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    /// `C(τ)` generators for simplex `i`: its columns.
    pub fn generators(&self, i: usize) -> &[Vec<i64>] {
        &self.generators[i]
    }

    /// `B(τ)`: lattice points `Σ λ_k w_{i_k}` with `0 ≤ λ_k < 1`, sorted.
    /// There are exactly `|det|` of them; refused above `limit`.
    pub fn fundamental_cell(&self, i: usize, limit: u64) -> Result<Vec<Vec<i64>>, PolytopeError> {
        let s = &self.simplices[i];
        let count = s.det.unsigned_abs();
        if count > limit {
            return Err(PolytopeError::TooLarge {
                what: "fundamental cell",
                got: count,
                limit,
            });
        }
        let gens = &self.generators[i];
        let n = gens.len();
        // Rows of `v` are coordinates, columns are generators.
        let v: Vec<Vec<i128>> = (0..n)
            .map(|r| gens.iter().map(|g| g[r] as i128).collect())
            .collect();
        let (h, _, _) = column_echelon(&v);
        let diag: Vec<i128> = (0..n).map(|k| h[k][k].abs()).collect();
        let mut out = BTreeSet::new();
        let mut x = vec![0i128; n];
        loop {
            let (nums, d) = solve(&v, &x).expect("simplex generators are independent");
            // y = x − V·floor(λ)
            let floors: Vec<i128> = nums.iter().map(|&a| a.div_euclid(d)).collect();
            let y: Vec<i64> = (0..n)
                .map(|r| (x[r] - (0..n).map(|c| v[r][c] * floors[c]).sum::<i128>()) as i64)
                .collect();
            out.insert(y);
            let mut k = n;
            loop {
                if k == 0 {
                    return Ok(out.into_iter().collect());
                }
                k -= 1;
                x[k] += 1;
                if x[k] < diag[k] {
                    break;
                }
                x[k] = 0;
            }
        }
    }
}

/// Decomposes `δ` into simplicial cones `δ(τ)`, one per simplex of a
/// pulling triangulation of each facet of `Δ` not through the origin.
pub fn simplicial_decomposition(nd: &NewtonData) -> SimplicialDecomposition {
    let n = nd.n();
    let table = PointTable::new(nd);
    let all = faces(nd, &table);
    let mut simplices = Vec::new();
    let mut generators = Vec::new();
    for (dim, face) in &all {
        if *dim + 1 != n || face.contains(&0) {
            continue;
        }
        for simplex in triangulate(face, *dim, &all) {
            let columns: Vec<usize> = simplex.iter().map(|id| id - 1).collect();
            let det = columns_det(nd.config(), &columns) as i64;
            generators.push(columns.iter().map(|&j| nd.config().column(j)).collect());
            simplices.push(Simplex { columns, det });
        }
    }
    SimplicialDecomposition {
        simplices,
        generators,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{newton_data, ExponentConfig};
    use crate::Rational;

    fn decompose(rows: &[&[i64]]) -> (NewtonData, SimplicialDecomposition) {
        let cfg = ExponentConfig::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap();
        let nd = newton_data(&cfg).unwrap();
        let dec = simplicial_decomposition(&nd);
        (nd, dec)
    }

    #[test]
    fn small_decompositions() {
        let (_, dec) = decompose(&[&[1]]);
        assert_eq!(
            dec.simplices(),
            &[Simplex {
                columns: vec![0],
                det: 1
            }]
        );
        assert_eq!(dec.fundamental_cell(0, 100).unwrap(), vec![vec![0]]);

        let (_, dec) = decompose(&[&[1, -1]]);
        assert_eq!(dec.simplices().len(), 2);
        for i in 0..2 {
            assert_eq!(dec.fundamental_cell(i, 100).unwrap(), vec![vec![0]]);
        }

        let (_, dec) = decompose(&[&[1, 0, 1], &[0, 1, 1]]);
        let mut cols: Vec<Vec<usize>> = dec
            .simplices()
            .iter()
            .map(|s| {
                let mut c = s.columns.clone();
                c.sort();
                c
            })
            .collect();
        cols.sort();
        assert_eq!(cols, vec![vec![0, 2], vec![1, 2]]);
        assert!(dec.simplices().iter().all(|s| s.det.abs() == 1));
    }

    #[test]
    fn cells_have_det_many_points_and_additive_weight() {
        let (nd, dec) = decompose(&[&[2, 0, 1], &[0, 3, 1]]);
        for (i, s) in dec.simplices().iter().enumerate() {
            let cell = dec.fundamental_cell(i, 1000).unwrap();
            assert_eq!(cell.len() as i64, s.det.abs());
            for u in &cell {
                let du = nd.weight(u).value().unwrap();
                for v0 in 0..3i64 {
                    for v1 in 0..3i64 {
                        let g = dec.generators(i);
                        let x: Vec<i64> =
                            (0..2).map(|r| u[r] + v0 * g[0][r] + v1 * g[1][r]).collect();
                        assert_eq!(nd.weight(&x).value().unwrap(), du + Rational::from(v0 + v1));
                    }
                }
            }
        }
    }

    #[test]
    fn facet_with_interior_point() {
        // (1,1) sits in the middle of the facet from (2,0) to (0,2).
        let (_, dec) = decompose(&[&[2, 1, 0], &[0, 1, 2]]);
        let total: i64 = dec.simplices().iter().map(|s| s.det.abs()).sum();
        assert_eq!(total, 4);
    }
}
