use std::sync::Arc;

use super::ring::{RamifiedElement, RingParams};
use super::PadicError;
use crate::finite_field::FieldEmbedding;

/// Ring homomorphism `R(s, M) → R(s', M)` for `s | s'`, fixing `π`.
///
/// The generator `b` (a root of `g_s`) goes to the Hensel lift of the
/// lexicographically smallest root of `g_s` in `F_{p^{s'}}`, so the map on
/// residue fields agrees with [`FieldEmbedding`].
#[derive(Debug, Clone)]
pub struct RingEmbedding {
    source: Arc<RingParams>,
    target: Arc<RingParams>,
    /// Powers `ρ^0 .. ρ^{s−1}` of the image of `b`.
    powers: Vec<RamifiedElement>,
}

impl RingEmbedding {
    pub fn new(source: &Arc<RingParams>, target: &Arc<RingParams>) -> Result<Self, PadicError> {
        if source.p() != target.p() || source.precision() != target.precision() {
            return Err(PadicError::ParamsMismatch);
        }
        if target.s() % source.s() != 0 {
            return Err(PadicError::NotASubring {
                inner: source.s(),
                outer: target.s(),
            });
        }
        let field_emb = FieldEmbedding::new(source.residue_field(), target.residue_field())
            .map_err(|_| PadicError::NoRoot)?;
        let g = source.unramified_modulus();
        let mut rho = RamifiedElement::lift_residue(target, field_emb.generator_image());
        // Newton: ρ ← ρ − g(ρ)/g'(ρ). g is separable mod p, so g'(ρ) is a unit.
        for _ in 0..=usize::BITS - target.precision().leading_zeros() + 1 {
            let (value, deriv) = eval_with_derivative(g, &rho, target);
            if value.is_zero() {
                break;
            }
            let inv = deriv.inverse().map_err(|_| PadicError::NoRoot)?;
            rho = rho.sub(&value.mul(&inv));
        }
        let (check, _) = eval_with_derivative(g, &rho, target);
        if !check.is_zero() {
            return Err(PadicError::NoRoot);
        }
        let mut powers = Vec::with_capacity(source.s());
        let mut acc = RamifiedElement::one(target);
        for _ in 0..source.s() {
            powers.push(acc.clone());
            acc = acc.mul(&rho);
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            powers,
        })
    }

    pub fn source(&self) -> &Arc<RingParams> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RingParams> {
        &self.target
    }

    pub fn apply(&self, x: &RamifiedElement) -> RamifiedElement {
        let (ss, ts) = (self.source.s(), self.target.s());
        let mut out = RamifiedElement::zero(&self.target);
        for i in 0..self.source.ramification() {
            // Σ_j c[i][j] ρ^j lands in row i of the target.
            let mut row = RamifiedElement::zero(&self.target);
            for j in 0..ss {
                let c = x.coeff(i, j);
                if c != 0 {
                    row.add_assign(&self.powers[j].scale(c as i64));
                }
            }
            for j in 0..ts {
                out.coeffs_mut()[i * ts + j] = row.coeff(0, j);
            }
        }
        out
    }

    /// Inverse image of `y` when it lies in the subring, found by solving
    /// `Σ_j c_j ρ^j = row` mod `p^M` for every `π`-row.
    pub fn preimage(&self, y: &RamifiedElement) -> Option<RamifiedElement> {
        let (ss, ts) = (self.source.s(), self.target.s());
        let m = self.source.modulus();
        let p = self.source.p();
        // Columns are the coordinates of ρ^j in the target.
        let basis: Vec<Vec<u64>> = (0..ts)
            .map(|r| (0..ss).map(|j| self.powers[j].coeff(0, r)).collect())
            .collect();
        let mut out = RamifiedElement::zero(&self.source);
        for i in 0..self.source.ramification() {
            let rhs: Vec<u64> = (0..ts).map(|r| y.coeff(i, r)).collect();
            let c = solve_unit_pivots(&basis, &rhs, m, p)?;
            for (j, v) in c.into_iter().enumerate() {
                out.coeffs_mut()[i * ss + j] = v;
            }
        }
        (self.apply(&out) == *y).then_some(out)
    }
}

/// Solves the overdetermined system `B c = rhs` mod `m = p^M` by elimination
/// with unit pivots; `None` if no unit pivot exists in some column.
fn solve_unit_pivots(b: &[Vec<u64>], rhs: &[u64], m: u64, p: u64) -> Option<Vec<u64>> {
    let rows = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<u64>> = b
        .iter()
        .zip(rhs)
        .map(|(r, &v)| {
            let mut row = r.clone();
            row.push(v);
            row
        })
        .collect();
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % m as u128) as u64;
    let mut pivot_rows = Vec::with_capacity(cols);
    for c in 0..cols {
        let r = (0..rows).find(|&r| !pivot_rows.contains(&r) && a[r][c] % p != 0)?;
        let inv = crate::util::mod_inverse(a[r][c], m)?;
        for v in a[r].iter_mut() {
            *v = mulm(*v, inv);
        }
        for other in 0..rows {
            if other != r && a[other][c] != 0 {
                let f = a[other][c];
                for k in 0..=cols {
                    let sub = mulm(f, a[r][k]);
                    a[other][k] = (a[other][k] + m - sub) % m;
                }
            }
        }
        pivot_rows.push(r);
    }
    Some(pivot_rows.iter().map(|&r| a[r][cols]).collect())
}

fn eval_with_derivative(
    g: &[u64],
    x: &RamifiedElement,
    params: &Arc<RingParams>,
) -> (RamifiedElement, RamifiedElement) {
    let mut value = RamifiedElement::zero(params);
    let mut deriv = RamifiedElement::zero(params);
    for &c in g.iter().rev() {
        deriv = deriv.mul(x).add(&value);
        value = value
            .mul(x)
            .add(&RamifiedElement::from_int(params, c as i64));
    }
    (value, deriv)
}

/// Embeds `x` into `target` (see [`RingEmbedding`]).
pub fn ring_embed(
    x: &RamifiedElement,
    target: &Arc<RingParams>,
) -> Result<RamifiedElement, PadicError> {
    Ok(RingEmbedding::new(x.params(), target)?.apply(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{ring_create, teichmueller};

    #[test]
    fn embedding_fixes_one_and_pi() {
        let r2 = ring_create(3, 2, 4).unwrap();
        let r4 = ring_create(3, 4, 4).unwrap();
        let one = RamifiedElement::one(&r2);
        assert_eq!(ring_embed(&one, &r4).unwrap(), RamifiedElement::one(&r4));
        let pi = RamifiedElement::pi(&r2);
        assert_eq!(ring_embed(&pi, &r4).unwrap(), RamifiedElement::pi(&r4));
        assert_eq!(ring_embed(&pi, &r4).unwrap().pi_ord(), pi.pi_ord());
    }

    #[test]
    fn embedding_commutes_with_teichmueller_and_products() {
        let r2 = ring_create(3, 2, 5).unwrap();
        let r4 = ring_create(3, 4, 5).unwrap();
        let emb = RingEmbedding::new(&r2, &r4).unwrap();
        let femb = FieldEmbedding::new(r2.residue_field(), r4.residue_field()).unwrap();
        let f9 = r2.residue_field().clone();
        for x in f9.enumerate_all().unwrap() {
            let lifted = teichmueller(&x, &r2);
            let direct = teichmueller(&femb.map(&x), &r4);
            assert_eq!(emb.apply(&lifted), direct);
        }
        let b = RamifiedElement::generator(&r2);
        let pi = RamifiedElement::pi(&r2);
        let x = b.add(&pi).mul(&b);
        let y = b.scale(7).add(&RamifiedElement::from_int(&r2, 2));
        assert_eq!(emb.apply(&x.mul(&y)), emb.apply(&x).mul(&emb.apply(&y)));
        assert_eq!(emb.apply(&x.add(&y)), emb.apply(&x).add(&emb.apply(&y)));
    }

    #[test]
    fn preimage_inverts_the_embedding() {
        let r2 = ring_create(5, 2, 4).unwrap();
        let r4 = ring_create(5, 4, 4).unwrap();
        let emb = RingEmbedding::new(&r2, &r4).unwrap();
        let x = RamifiedElement::generator(&r2)
            .scale(17)
            .add(&RamifiedElement::pi_power(&r2, 3).mul(&RamifiedElement::generator(&r2)));
        assert_eq!(emb.preimage(&emb.apply(&x)), Some(x));
        let outside = RamifiedElement::generator(&r4);
        assert_eq!(emb.preimage(&outside), None);
    }

    #[test]
    fn non_dividing_degree_is_rejected() {
        let r2 = ring_create(3, 2, 4).unwrap();
        let r3 = ring_create(3, 3, 4).unwrap();
        assert!(matches!(
            RingEmbedding::new(&r2, &r3),
            Err(PadicError::NotASubring { .. })
        ));
    }
}
