//! JSON encodings shared by all reports.

use serde_json::{json, Value};

use gkz_dwork::lfunction::{LPolynomial, PowerSeriesT};
use gkz_dwork::padic::RamifiedElement;
use gkz_dwork::Rational;

pub fn rational(r: Rational) -> Value {
    json!([r.numer(), r.denom()])
}

/// Balanced representative mod `p^certified` when `x` lies in `Z/p^M`.
fn small_integer(x: &RamifiedElement, certified: u32) -> Option<i64> {
    let v = x.as_small_int()? as i128;
    let p = x.params().p() as i128;
    let modulus = p.checked_pow(certified)?;
    if modulus == 1 {
        return Some(0);
    }
    let r = v.rem_euclid(modulus);
    let r = if r > modulus / 2 { r - modulus } else { r };
    i64::try_from(r).ok()
}

/// Nonzero coordinates of `x` in the basis `π^i b^j` and the number of
/// `p`-adic digits that are certified.
pub fn padic(x: &RamifiedElement, certified: u32) -> Value {
    let mut v = json!({ "terms": x.terms(), "certified": certified });
    if let Some(n) = small_integer(x, certified) {
        v["integer"] = json!(n);
    }
    v
}

pub fn series(s: &PowerSeriesT) -> Value {
    Value::Array(
        s.coeffs()
            .iter()
            .zip(s.precision())
            .map(|(c, &k)| padic(c, k))
            .collect(),
    )
}

pub fn polynomial(poly: &LPolynomial) -> Value {
    let coeffs: Vec<Value> = poly
        .coeffs()
        .iter()
        .zip(poly.precision())
        .map(|(c, &k)| padic(c, k))
        .collect();
    json!({ "coefficients": coeffs, "degree": poly.degree(), "sign": poly.sign() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use gkz_dwork::padic::ring_create;

    #[test]
    fn integers_are_balanced_at_their_precision() {
        let params = ring_create(5, 1, 4).unwrap();
        let x = RamifiedElement::from_int(&params, -49);
        assert_eq!(padic(&x, 4)["integer"], json!(-49));
        assert_eq!(padic(&x, 2)["integer"], json!(1));
        assert_eq!(padic(&x, 0)["integer"], json!(0));
        let pi = RamifiedElement::pi(&params);
        assert!(padic(&pi, 4).get("integer").is_none());
        assert_eq!(rational(Rational::new(-6, 4)), json!([-3, 2]));
    }
}
