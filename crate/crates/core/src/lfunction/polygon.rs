use serde::Serialize;

use super::{LError, PowerSeriesT};
use crate::padic::RamifiedElement;
use crate::Rational;

/// `L^{(−1)^{n−1}}` recognised as a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LPolynomial {
    coeffs: Vec<RamifiedElement>,
    precision: Vec<u32>,
    /// The exponent `(−1)^{n−1}` that turns `L` into this polynomial.
    sign: i32,
}

impl LPolynomial {
    pub fn coeffs(&self) -> &[RamifiedElement] {
        &self.coeffs
    }

    pub fn precision(&self) -> &[u32] {
        &self.precision
    }

    pub fn sign(&self) -> i32 {
        self.sign
    }

    /// Highest index whose coefficient is nonzero at its precision.
    pub fn degree(&self) -> usize {
        (0..self.coeffs.len())
            .rev()
            .find(|&i| self.coeffs[i].p_divisibility() < self.precision[i])
            .unwrap_or(0)
    }
}

/// Raises `series` to `(−1)^{n−1}` and checks that every coefficient past
/// `expected_degree` vanishes at its certified precision.
pub fn rational_recognition(
    series: &PowerSeriesT,
    expected_degree: usize,
    n: usize,
) -> Result<LPolynomial, LError> {
    let need = expected_degree + 3;
    if series.order() < need {
        return Err(LError::InsufficientOrder {
            have: series.order(),
            need,
        });
    }
    let sign = if n % 2 == 1 { 1 } else { -1 };
    let f = series.powi(sign as i64)?;
    for i in expected_degree + 1..=f.order() {
        if f.coeffs()[i].p_divisibility() < f.precision()[i] {
            return Err(LError::NotPolynomial { index: i });
        }
    }
    let f = f.truncate(expected_degree);
    Ok(LPolynomial {
        coeffs: f.coeffs().to_vec(),
        precision: f.precision().to_vec(),
        sign,
    })
}

/// Lower convex hull of `(i, ord_p(c_i))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    pub vertices: Vec<(usize, Rational)>,
    /// `(slope, multiplicity)`, slopes increasing.
    pub slopes: Vec<(Rational, usize)>,
    /// Interior indices whose coefficient vanishes at its precision; they
    /// are left out of the hull.
    pub flagged: Vec<usize>,
}

impl NewtonPolygon {
    /// Slopes repeated by multiplicity.
    pub fn slope_list(&self) -> Vec<Rational> {
        self.slopes
            .iter()
            .flat_map(|&(s, k)| std::iter::repeat(s).take(k))
            .collect()
    }
}

/// Newton polygon of a polynomial with constant term 1. The leading
/// coefficient must be visible at its precision.
pub fn newton_polygon(poly: &LPolynomial) -> Result<NewtonPolygon, LError> {
    let degree = poly.coeffs.len() - 1;
    if poly.coeffs[0] != RamifiedElement::one(poly.coeffs[0].params()) {
        return Err(LError::NonUnitConstantTerm);
    }
    let mut points = Vec::new();
    let mut flagged = Vec::new();
    for (i, c) in poly.coeffs.iter().enumerate() {
        let ord = c
            .pi_ord()
            .finite()
            .filter(|o| *o < Rational::from(poly.precision[i] as i64));
        match ord {
            Some(o) => points.push((i, o)),
            None if i == degree => return Err(LError::CoefficientBelowPrecision { index: i }),
            None => flagged.push(i),
        }
    }
    let mut hull: Vec<(usize, Rational)> = Vec::new();
    for pt in points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // Drop b when it lies on or above the segment a–pt.
            let lhs = (b.1 - a.1) * Rational::from((pt.0 - a.0) as i64);
            let rhs = (pt.1 - a.1) * Rational::from((b.0 - a.0) as i64);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let slopes = hull
        .windows(2)
        .map(|w| {
            let len = w[1].0 - w[0].0;
            ((w[1].1 - w[0].1) / Rational::from(len as i64), len)
        })
        .collect();
    Ok(NewtonPolygon {
        vertices: hull,
        slopes,
        flagged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::ring_create;

    fn poly(p: u64, v: &[i64], prec: u32) -> LPolynomial {
        let params = ring_create(p, 1, prec).unwrap();
        LPolynomial {
            coeffs: v
                .iter()
                .map(|&x| RamifiedElement::from_int(&params, x))
                .collect(),
            precision: vec![prec; v.len()],
            sign: 1,
        }
    }

    #[test]
    fn simple_polygons() {
        let np = newton_polygon(&poly(3, &[1, -1], 5)).unwrap();
        assert_eq!(np.slopes, vec![(Rational::from(0), 1)]);
        let np = newton_polygon(&poly(5, &[1, 5], 5)).unwrap();
        assert_eq!(np.slopes, vec![(Rational::from(1), 1)]);
        let np = newton_polygon(&poly(5, &[1, 3, 5], 5)).unwrap();
        assert_eq!(np.slope_list(), vec![Rational::from(0), Rational::from(1)]);
        // Collinear middle point is not a vertex.
        let np = newton_polygon(&poly(3, &[1, 3, 9], 5)).unwrap();
        assert_eq!(np.vertices.len(), 2);
        assert_eq!(np.slopes, vec![(Rational::from(1), 2)]);
    }

    #[test]
    fn invisible_coefficients() {
        let np = newton_polygon(&poly(3, &[1, 0, 9], 5)).unwrap();
        assert_eq!(np.flagged, vec![1]);
        assert_eq!(np.slopes, vec![(Rational::from(1), 2)]);
        let err = newton_polygon(&poly(3, &[1, 1, 243], 5)).unwrap_err();
        assert_eq!(err, LError::CoefficientBelowPrecision { index: 2 });
    }

    #[test]
    fn recognition_of_one_minus_t() {
        let params = ring_create(3, 1, 5).unwrap();
        let mut c = vec![RamifiedElement::zero(&params); 5];
        c[0] = RamifiedElement::one(&params);
        c[1] = RamifiedElement::from_int(&params, -1);
        let s = PowerSeriesT::uniform(c.clone(), 5).unwrap();
        let l = rational_recognition(&s, 1, 1).unwrap();
        assert_eq!(l.degree(), 1);
        assert_eq!(l.sign(), 1);
        // For n = 2 the series is inverted first: 1/(1 − T) is not a polynomial.
        assert_eq!(
            rational_recognition(&s, 1, 2),
            Err(LError::NotPolynomial { index: 2 })
        );
        assert!(matches!(
            rational_recognition(&s.truncate(3), 1, 1),
            Err(LError::InsufficientOrder { .. })
        ));
    }
}
