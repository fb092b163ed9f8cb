use std::sync::Arc;

use proptest::prelude::*;

use gkz_dwork::dwork::{char_series, trace_matrix_power, DworkSetup, TraceRoute};
use gkz_dwork::finite_field::FqParams;
use gkz_dwork::lfunction::{
    l_series_from_sums, sums_oracle_characters, sums_oracle_series, SumProblem,
};
use gkz_dwork::padic::{
    char_series_division_free, ring_create, ring_embed, teichmueller, RamifiedElement, RingMatrix,
    RingParams,
};
use gkz_dwork::polytope::{enumerate, newton_data, normalized_volume, ExponentConfig};
use gkz_dwork::Rational;

fn element(params: &Arc<RingParams>, coeffs: &[i64]) -> RamifiedElement {
    let len = params.len();
    let v: Vec<i64> = (0..len)
        .map(|i| coeffs.get(i).copied().unwrap_or(0))
        .collect();
    RamifiedElement::from_coeffs(params, &v).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-500i64..500, 8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in coeffs(), b in coeffs(), c in coeffs(), p in prop::sample::select(vec![3u64, 5, 7])) {
        let params = ring_create(p, 2, 4).unwrap();
        let (x, y, z) = (element(&params, &a), element(&params, &b), element(&params, &c));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert_eq!(x.sub(&x), RamifiedElement::zero(&params));
    }

    #[test]
    fn teichmueller_is_multiplicative_and_embeds(i in 0u64..25, j in 0u64..25) {
        let small = ring_create(5, 2, 4).unwrap();
        let large = ring_create(5, 4, 4).unwrap();
        let f = small.residue_field().clone();
        let (u, v) = (f.element_at(i), f.element_at(j));
        let tu = teichmueller(&u, &small);
        let tv = teichmueller(&v, &small);
        prop_assert_eq!(teichmueller(&f.mul(&u, &v), &small), tu.mul(&tv));
        prop_assert_eq!(tu.residue(), u);
        let up = ring_embed(&tu, &large).unwrap();
        prop_assert_eq!(up.pow(625), up.clone());
        prop_assert_eq!(ring_embed(&tu.mul(&tv), &large).unwrap(), up.mul(&ring_embed(&tv, &large).unwrap()));
    }

    #[test]
    fn weight_is_homogeneous_and_subadditive(
        u in prop::collection::vec(-6i64..7, 2),
        v in prop::collection::vec(-6i64..7, 2),
        k in 1i64..5,
    ) {
        let cfg = ExponentConfig::new(vec![vec![2, 0, -1], vec![0, 3, -1]]).unwrap();
        let nd = newton_data(&cfg).unwrap();
        let du = nd.weight(&u).value().unwrap();
        let dv = nd.weight(&v).value().unwrap();
        let ku: Vec<i64> = u.iter().map(|x| k * x).collect();
        prop_assert_eq!(nd.weight(&ku).value().unwrap(), du * Rational::from(k));
        let sum: Vec<i64> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
        prop_assert!(nd.weight(&sum).value().unwrap() <= du + dv);
    }

    #[test]
    fn charseries_linear_term_is_minus_trace(entries in prop::collection::vec(-40i64..40, 16)) {
        let params = ring_create(3, 1, 5).unwrap();
        let m = RingMatrix::from_fn(&params, 4, 4, |i, j| RamifiedElement::from_int(&params, entries[4 * i + j]));
        let c = char_series_division_free(&m, None).unwrap();
        prop_assert_eq!(c.len(), 5);
        prop_assert_eq!(c[1].clone(), m.trace().unwrap().neg());
        let truncated = char_series_division_free(&m, Some(2)).unwrap();
        prop_assert_eq!(&truncated[..], &c[..3]);
    }

    #[test]
    fn exp_of_power_sums_of_integers(alpha in -6i64..7, beta in -6i64..7) {
        // S_m = α^m + β^m gives L = 1/((1 − αT)(1 − βT)) = Σ_j h_j T^j.
        let params = ring_create(5, 1, 6).unwrap();
        let sums: Vec<_> = (1..=6u32)
            .map(|m| (RamifiedElement::from_int(&params, alpha.pow(m) + beta.pow(m)), 6))
            .collect();
        let l = l_series_from_sums(&sums).unwrap();
        for j in 0..=6u32 {
            let h: i64 = (0..=j).map(|i| alpha.pow(i) * beta.pow(j - i)).sum();
            let prec = l.precision()[j as usize];
            prop_assert!(l.coeffs()[j as usize].eq_mod(&RamifiedElement::from_int(&params, h), prec));
        }
    }
}

/// Twice the area of the convex hull of `points`, by monotone chain and the
/// shoelace formula.
fn doubled_hull_area(mut points: Vec<(i64, i64)>) -> i64 {
    points.sort();
    points.dedup();
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(i64, i64)>> = if pass == 0 {
            Box::new(points.iter())
        } else {
            Box::new(points.iter().rev())
        };
        for &pt in iter {
            while hull.len() >= start + 2
                && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0
            {
                hull.pop();
            }
            hull.push(pt);
        }
        hull.pop();
    }
    let k = hull.len();
    (0..k)
        .map(|i| cross((0, 0), hull[i], hull[(i + 1) % k]))
        .sum::<i64>()
        .abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn planar_volume_matches_the_hull_area(cols in prop::collection::vec((-4i64..5, -4i64..5), 2..5)) {
        let rows = vec![cols.iter().map(|c| c.0).collect(), cols.iter().map(|c| c.1).collect()];
        let Ok(cfg) = ExponentConfig::new(rows) else {
            // Rank-deficient draws are rejected by the constructor.
            return Ok(());
        };
        let mut points = cols.clone();
        points.push((0, 0));
        let area = doubled_hull_area(points);
        prop_assume!(area > 0);
        prop_assert_eq!(normalized_volume(&cfg).unwrap() as i64, area);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn oracles_agree_on_random_coefficients(a in prop::collection::vec(0i64..3, 3), k0 in -1i64..1) {
        let params = ring_create(3, 1, 5).unwrap();
        let f = FqParams::new(3, 1).unwrap();
        let config = ExponentConfig::new(vec![vec![1, 0, 1], vec![0, 1, 2]]).unwrap();
        let residues = a.iter().map(|&c| f.from_int(c)).collect();
        let problem = SumProblem::new(&params, config, vec![k0, 0], residues).unwrap();
        for m in 1..=2 {
            prop_assert_eq!(
                sums_oracle_characters(&problem, m).unwrap(),
                sums_oracle_series(&problem, m).unwrap()
            );
        }
    }
}

#[test]
fn enumeration_is_sorted_and_capped() {
    let cfg = ExponentConfig::new(vec![vec![1, 0, -1], vec![0, 1, -1]]).unwrap();
    let nd = newton_data(&cfg).unwrap();
    let pts = enumerate(&nd, Rational::from(4)).unwrap();
    let keyed: Vec<_> = pts.weights().iter().zip(pts.points()).collect();
    assert!(keyed.windows(2).all(|w| w[0] < w[1]));
    assert!(pts.weights().iter().all(|d| *d <= Rational::from(4)));
    // Ehrhart polynomial of the triangle (1,0), (0,1), (−1,−1): 3k²/2 + 3k/2 + 1.
    assert_eq!(pts.len(), 31);
}

#[test]
fn trivial_coefficients_give_a_single_unit_eigenvalue() {
    let params = ring_create(3, 1, 6).unwrap();
    let f = params.residue_field().clone();
    let cfg = ExponentConfig::new(vec![vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
    let nd = newton_data(&cfg).unwrap();
    let setup = DworkSetup::new(
        &params,
        nd,
        vec![0, 0],
        &[f.zero(), f.zero(), f.zero()],
        None,
    )
    .unwrap();
    let matrix = setup.matrix().unwrap();
    let (c, _) = char_series(&matrix, Some(4)).unwrap();
    let one = RamifiedElement::one(&params);
    assert_eq!(c[0], one);
    assert_eq!(c[1], one.neg());
    assert!(c[2..].iter().all(|x| x.is_zero()));
    for m in 1..=3 {
        assert_eq!(trace_matrix_power(&matrix, m).unwrap().value, one);
    }
}

#[test]
fn trace_routes_agree_up_to_level_three() {
    let params = ring_create(5, 1, 5).unwrap();
    let f = params.residue_field().clone();
    let cfg = ExponentConfig::new(vec![vec![1, -1]]).unwrap();
    let nd = newton_data(&cfg).unwrap();
    let setup = DworkSetup::new(&params, nd, vec![0], &[f.one(), f.from_int(2)], None).unwrap();
    let matrix = setup.matrix().unwrap();
    for m in 1..=3 {
        let a = trace_matrix_power(&matrix, m).unwrap();
        let b = setup.trace(m, TraceRoute::LevelSeries).unwrap();
        assert!(
            a.value.eq_mod(&b.value, a.certified.min(b.certified)),
            "m = {m}"
        );
    }
}

#[test]
fn twist_outside_the_cone_is_rejected() {
    let params = ring_create(5, 1, 4).unwrap();
    let f = params.residue_field().clone();
    let nd = newton_data(&ExponentConfig::new(vec![vec![1]]).unwrap()).unwrap();
    let err = DworkSetup::new(&params, nd, vec![1], &[f.one()], None).unwrap_err();
    assert!(matches!(
        err,
        gkz_dwork::dwork::DworkError::TwistOutsideCone { .. }
    ));
}
