use gkz_dwork::dwork::{char_series, DworkSetup};
use gkz_dwork::lfunction::{
    comparison_precision, l_from_charseries, l_series_from_sums, newton_polygon,
    rational_recognition, sums_oracle_characters, LError, PowerSeriesT, SumProblem,
};
use gkz_dwork::padic::{ring_create, RamifiedElement};
use gkz_dwork::polytope::{newton_data, normalized_volume, ExponentConfig};
use gkz_dwork::Rational;

struct Run {
    from_sums: PowerSeriesT,
    from_matrix: PowerSeriesT,
    m_prime: u32,
    degree: usize,
    n: usize,
}

fn run(p: u64, rows: &[&[i64]], k: &[i64], a: &[i64], precision: u32) -> Run {
    let params = ring_create(p, 1, precision).unwrap();
    let field = params.residue_field().clone();
    let a: Vec<_> = a.iter().map(|&c| field.from_int(c)).collect();
    let config = ExponentConfig::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap();
    let degree = normalized_volume(&config).unwrap() as usize;
    let n = config.n();
    let m_max = (degree + 3).max(2);
    let problem = SumProblem::new(&params, config.clone(), k.to_vec(), a.clone()).unwrap();
    let sums: Vec<_> = (1..=m_max as u32)
        .map(|m| (sums_oracle_characters(&problem, m).unwrap(), precision))
        .collect();
    let from_sums = l_series_from_sums(&sums).unwrap();
    let setup =
        DworkSetup::new(&params, newton_data(&config).unwrap(), k.to_vec(), &a, None).unwrap();
    let matrix = setup.matrix().unwrap();
    let (charpoly, certified) = char_series(&matrix, Some(m_max)).unwrap();
    let from_matrix = l_from_charseries(&charpoly, certified, n, p, m_max).unwrap();
    Run {
        from_sums,
        from_matrix,
        m_prime: comparison_precision(precision, p, m_max as u64),
        degree,
        n,
    }
}

#[test]
fn l_identity_on_desk_configs() {
    let cases: [(u64, &[&[i64]], &[i64], &[i64]); 4] = [
        (3, &[&[1]], &[0], &[1]),
        (5, &[&[1, -1]], &[0], &[1, 1]),
        (3, &[&[1, 0, 1], &[0, 1, 1]], &[0, 0], &[1, 1, 1]),
        (5, &[&[1]], &[-1], &[1]),
    ];
    for (p, rows, k, a) in cases {
        let r = run(p, rows, k, a, 6);
        assert_eq!(
            r.from_sums.first_mismatch(&r.from_matrix, r.m_prime),
            None,
            "{rows:?}"
        );
        let poly = rational_recognition(&r.from_sums, r.degree, r.n).unwrap();
        assert_eq!(poly.degree(), r.degree, "{rows:?}");
    }
}

#[test]
fn kloosterman_polygon() {
    let r = run(5, &[&[1, -1]], &[0], &[1, 1], 6);
    let poly = rational_recognition(&r.from_sums, 2, 1).unwrap();
    let np = newton_polygon(&poly).unwrap();
    assert_eq!(np.slope_list(), vec![Rational::from(0), Rational::from(1)]);
    assert_eq!(poly.coeffs()[2].pi_ord().finite(), Some(Rational::from(1)));
}

#[test]
fn line_is_one_minus_t() {
    let r = run(3, &[&[1]], &[0], &[1], 6);
    let poly = rational_recognition(&r.from_sums, 1, 1).unwrap();
    let params = poly.coeffs()[0].params().clone();
    assert!(poly.coeffs()[1].eq_mod(&RamifiedElement::from_int(&params, -1), r.m_prime));
}

#[test]
fn degenerate_coefficients_are_not_polynomial() {
    for (p, rows, k, a) in [
        (3u64, &[&[1i64][..]][..], &[0i64][..], &[0i64][..]),
        (5, &[&[1, -1]], &[0], &[0, 0]),
    ] {
        let r = run(p, rows, k, a, 6);
        let err = rational_recognition(&r.from_sums, r.degree, r.n).unwrap_err();
        assert!(matches!(err, LError::NotPolynomial { .. }), "{err:?}");
        assert_eq!(r.from_sums.first_mismatch(&r.from_matrix, r.m_prime), None);
    }
}
