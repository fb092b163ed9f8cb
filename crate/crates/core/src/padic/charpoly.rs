use rayon::prelude::*;

use super::matrix::RingMatrix;
use super::ring::RamifiedElement;
use super::PadicError;

/// Coefficients `c_0..c_K` of `det(I − T·A) mod T^{K+1}` for square `A`,
/// `K = min(degree, n)` (`degree = None` gives the full polynomial).
///
/// The ring has zero divisors and non-units, so the computation avoids
/// division entirely: bordering `A_{k+1} = [[B, C], [R, a]]` gives
///
/// `det(I − T A_{k+1}) = det(I − T B) · (1 − a T − Σ_{j≥0} R B^j C · T^{j+2})`,
///
/// and only `j ≤ K − 2` matters. Cost is `O(K n³)` ring operations.
pub fn char_series_division_free(
    mat: &RingMatrix,
    degree: Option<usize>,
) -> Result<Vec<RamifiedElement>, PadicError> {
    if !mat.is_square() {
        return Err(PadicError::Shape);
    }
    let params = mat.params();
    let n = mat.rows();
    let k_max = degree.unwrap_or(n).min(n);
    let mut poly = vec![RamifiedElement::zero(params); k_max + 1];
    poly[0] = RamifiedElement::one(params);
    let raw_len = params.raw_len();
    let len = params.len();

    for k in 0..n {
        let mut factor = vec![RamifiedElement::zero(params); k_max + 1];
        factor[0] = RamifiedElement::one(params);
        if k_max >= 1 {
            factor[1] = mat.get(k, k).neg();
        }
        if k > 0 && k_max >= 2 {
            let mut v: Vec<Vec<u64>> = (0..k).map(|i| mat.raw_entry(i, k).to_vec()).collect();
            for j in 0..=k_max - 2 {
                let mut acc = vec![0u128; raw_len];
                for (t, vt) in v.iter().enumerate() {
                    params.mul_acc_raw(&mut acc, mat.raw_entry(k, t), vt);
                }
                let mut out = vec![0u64; len];
                params.reduce_raw(&acc, &mut out);
                factor[j + 2] = RamifiedElement::from_raw(params, out).neg();
                if j + 2 == k_max {
                    break;
                }
                v = (0..k)
                    .into_par_iter()
                    .map(|i| {
                        let mut acc = vec![0u128; raw_len];
                        for (t, vt) in v.iter().enumerate() {
                            let a = mat.raw_entry(i, t);
                            if a.iter().all(|&x| x == 0) {
                                continue;
                            }
                            params.mul_acc_raw(&mut acc, a, vt);
                        }
                        let mut out = vec![0u64; len];
                        params.reduce_raw(&acc, &mut out);
                        out
                    })
                    .collect();
            }
        }
        poly = truncated_product(&poly, &factor, k_max);
    }
    Ok(poly)
}

fn truncated_product(
    a: &[RamifiedElement],
    b: &[RamifiedElement],
    k_max: usize,
) -> Vec<RamifiedElement> {
    let params = a[0].params();
    (0..=k_max)
        .map(|d| {
            let mut acc = RamifiedElement::zero(params);
            for i in 0..=d {
                if !a[i].is_zero() && !b[d - i].is_zero() {
                    acc.add_assign(&a[i].mul(&b[d - i]));
                }
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::ring_create;

    #[test]
    fn diagonal_pi_and_p() {
        let r = ring_create(3, 1, 4).unwrap();
        let pi = RamifiedElement::pi(&r);
        let p = RamifiedElement::from_int(&r, 3);
        let mut m = RingMatrix::zeros(&r, 2, 2);
        m.set(0, 0, &pi);
        m.set(1, 1, &p);
        let c = char_series_division_free(&m, None).unwrap();
        assert_eq!(c[0], RamifiedElement::one(&r));
        assert_eq!(c[1], pi.add(&p).neg());
        assert_eq!(c[2], pi.mul(&p));
    }

    #[test]
    fn integer_matrix_against_cofactor_expansion() {
        let r = ring_create(5, 1, 6).unwrap();
        let rows: [[i64; 3]; 3] = [[2, -1, 4], [7, 0, 3], [-5, 6, 1]];
        let m = RingMatrix::from_fn(&r, 3, 3, |i, j| RamifiedElement::from_int(&r, rows[i][j]));
        let c = char_series_division_free(&m, None).unwrap();
        // det(I − TA) = 1 − tr·T + e2·T² − det·T³, with e2 the sum of
        // principal 2×2 minors.
        let a = |i: usize, j: usize| rows[i][j];
        let minor = |i: usize, j: usize| a(i, i) * a(j, j) - a(i, j) * a(j, i);
        let tr = a(0, 0) + a(1, 1) + a(2, 2);
        let e2 = minor(0, 1) + minor(0, 2) + minor(1, 2);
        let det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
            - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
            + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
        assert_eq!((tr, e2, det), (3, 11, 154));
        let expect = [1, -tr, e2, -det];
        for (ci, &e) in c.iter().zip(&expect) {
            assert_eq!(*ci, RamifiedElement::from_int(&r, e));
        }
        let truncated = char_series_division_free(&m, Some(1)).unwrap();
        assert_eq!(truncated.len(), 2);
        assert_eq!(truncated[..], c[..2]);
    }
}
