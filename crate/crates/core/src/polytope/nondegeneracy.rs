use rayon::prelude::*;
use serde::Serialize;

use super::triangulate::{faces, PointTable};
use super::{NewtonData, PolytopeError};
use crate::finite_field::{FieldEmbedding, FqElement, FqParams, ENUMERATION_LIMIT};

/// Outcome of [`nondegeneracy_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum NondegeneracyVerdict {
    /// No face polynomial has a torus critical point over `F_{q^s}`,
    /// `s ≤ checked`. This is a bounded certificate only.
    NondegenerateUpTo { checked: usize, requested: usize },
    /// `t_i ∂F_τ/∂t_i` all vanish at `point ∈ (F_{q^level}^*)^n`, where
    /// `F_τ` uses the listed columns.
    DegenerateWitness {
        level: usize,
        face: Vec<usize>,
        point: Vec<FqElement>,
    },
}

/// Searches for torus points where every `t_i ∂F_τ/∂t_i` vanishes, for each
/// face `τ` of `Δ` avoiding the origin, over `F_{q^s}` for `s = 1..=s_max`.
///
/// `base` is `F_q` and `a` holds `ā_1..ā_N`. Levels whose torus exceeds the
/// enumeration limit are not searched; the verdict records the last level
/// actually covered.
pub fn nondegeneracy_check(
    nd: &NewtonData,
    base: &FqParams,
    a: &[FqElement],
    s_max: usize,
) -> Result<NondegeneracyVerdict, PolytopeError> {
    let config = nd.config();
    let n = config.n();
    let big_n = config.num_columns();
    if a.len() != big_n {
        return Err(PolytopeError::DimensionMismatch {
            got: a.len(),
            expected: big_n,
        });
    }
    let table = PointTable::new(nd);
    let columns = config.columns();
    // Faces avoiding 0, expanded to every column at their positions.
    let face_columns: Vec<Vec<usize>> = faces(nd, &table)
        .into_iter()
        .filter(|(_, f)| !f.contains(&0))
        .map(|(_, f)| {
            let positions: Vec<&[i64]> = f.iter().map(|&id| table.coords_of(id)).collect();
            (0..big_n)
                .filter(|&j| positions.contains(&columns[j].as_slice()))
                .collect()
        })
        .collect();

    let mut checked = 0;
    for level in 1..=s_max {
        let ext = match FqParams::new(base.p(), base.degree() * level) {
            Ok(f) => f,
            Err(_) => break,
        };
        let units = match ext.order() {
            Some(q) if q > 1 => q - 1,
            _ => break,
        };
        let torus = units
            .checked_pow(n as u32)
            .filter(|&t| t <= ENUMERATION_LIMIT);
        if torus.is_none() {
            break;
        }
        let emb = FieldEmbedding::new(base, &ext)?;
        let lifted: Vec<FqElement> = a.iter().map(|x| emb.map(x)).collect();
        let unit_list: Vec<FqElement> = ext
            .enumerate_units()
            .map_err(|_| PolytopeError::TooLarge {
                what: "field size",
                got: units,
                limit: ENUMERATION_LIMIT,
            })?
            .collect();

        let hits: Vec<Option<(Vec<usize>, Vec<FqElement>)>> = face_columns
            .par_iter()
            .map(|face| search_face(&ext, &unit_list, &columns, &lifted, face, n))
            .collect();
        if let Some((face, point)) = hits.into_iter().flatten().next() {
            return Ok(NondegeneracyVerdict::DegenerateWitness { level, face, point });
        }
        checked = level;
    }
    Ok(NondegeneracyVerdict::NondegenerateUpTo {
        checked,
        requested: s_max,
    })
}

fn search_face(
    field: &FqParams,
    units: &[FqElement],
    columns: &[Vec<i64>],
    a: &[FqElement],
    face: &[usize],
    n: usize,
) -> Option<(Vec<usize>, Vec<FqElement>)> {
    let mut idx = vec![0usize; n];
    loop {
        let point: Vec<FqElement> = idx.iter().map(|&k| units[k].clone()).collect();
        // Monomials a_j t^{w_j} for j on the face.
        let terms: Vec<FqElement> = face
            .iter()
            .map(|&j| {
                let mut m = a[j].clone();
                for (i, t) in point.iter().enumerate() {
                    let e = columns[j][i];
                    let tp = field.pow_signed(t, e).expect("torus points are units");
                    m = field.mul(&m, &tp);
                }
                m
            })
            .collect();
        let critical = (0..n).all(|i| {
            let mut acc = field.zero();
            for (term, &j) in terms.iter().zip(face) {
                acc = field.add(&acc, &field.scale(term, columns[j][i]));
            }
            acc.is_zero()
        });
        if critical {
            return Some((face.to_vec(), point));
        }
        let mut k = n;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < units.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}
