//! The GKZ system of `(A, γ)`: relation lattice `Λ = ker_Z(A)`, box
//! operators `□_λ`, Euler operators `E_{i,γ}`, and the map `φ` sending
//! `∂^v / π^{|v|}` to `t^{Av}`.

mod saturation;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::polytope::{lattice, ExponentConfig};
use crate::Rational;

pub use saturation::{toric_saturation, DEFAULT_STEP_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GkzError {
    #[error("vector {0:?} is not in the relation lattice of A")]
    NotARelation(Vec<i64>),
    #[error("vector has {got} entries, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("saturation exceeded its budget of {0} reduction steps")]
    Timeout(usize),
}

/// A basis of `ker_Z(A)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LatticeBasis {
    pub vectors: Vec<Vec<i64>>,
}

/// Saturated integer kernel of `A` by unimodular column reduction; each
/// vector has its first nonzero entry positive. Holds `N − n` vectors.
pub fn lattice_kernel(config: &ExponentConfig) -> LatticeBasis {
    let vectors = lattice::integer_kernel(&config.wide_rows())
        .into_iter()
        .map(|v| v.into_iter().map(|x| x as i64).collect())
        .collect();
    LatticeBasis { vectors }
}

fn apply(config: &ExponentConfig, v: &[i64]) -> Vec<i64> {
    config
        .rows()
        .iter()
        .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// `□_λ = Π_{λ_j>0} (π^{-1}∂_j)^{λ_j} − Π_{λ_j<0} (π^{-1}∂_j)^{−λ_j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoxOperator {
    pub lambda: Vec<i64>,
    pub lambda_plus: Vec<u64>,
    pub lambda_minus: Vec<u64>,
}

impl BoxOperator {
    pub fn is_zero(&self) -> bool {
        self.lambda_plus == self.lambda_minus
    }

    pub fn to_operator(&self) -> DOperator {
        let n = self.lambda.len();
        DOperator {
            terms: vec![
                DTerm::new(Rational::from(1), 0, vec![0; n], self.lambda_plus.clone()),
                DTerm::new(Rational::from(-1), 0, vec![0; n], self.lambda_minus.clone()),
            ],
        }
        .normalized()
    }
}

pub fn box_operator(config: &ExponentConfig, lambda: &[i64]) -> Result<BoxOperator, GkzError> {
    let big_n = config.num_columns();
    if lambda.len() != big_n {
        return Err(GkzError::DimensionMismatch {
            got: lambda.len(),
            expected: big_n,
        });
    }
    if apply(config, lambda).iter().any(|&x| x != 0) {
        return Err(GkzError::NotARelation(lambda.to_vec()));
    }
    Ok(BoxOperator {
        lambda: lambda.to_vec(),
        lambda_plus: lambda.iter().map(|&x| x.max(0) as u64).collect(),
        lambda_minus: lambda.iter().map(|&x| (-x).max(0) as u64).collect(),
    })
}

/// `E_{i,γ} = Σ_j w_{ij} x_j ∂_j + γ_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerOperator {
    pub row: Vec<i64>,
    pub gamma: Rational,
}

impl EulerOperator {
    /// As a normalized operator: `x_j ∂_j = π · x_j (π^{-1}∂_j)`.
    pub fn to_operator(&self) -> DOperator {
        let n = self.row.len();
        let mut terms = vec![DTerm::new(self.gamma, 0, vec![0; n], vec![0; n])];
        for (j, &w) in self.row.iter().enumerate() {
            let mut e = vec![0; n];
            e[j] = 1;
            terms.push(DTerm::new(Rational::from(w), 1, e.clone(), e));
        }
        DOperator { terms }.normalized()
    }
}

/// The twist `γ_i = k_i / (1 − q)` for every row.
pub fn gamma_from_k(k: &[i64], q: u64) -> Vec<Rational> {
    k.iter()
        .map(|&ki| Rational::new(ki, 1 - q as i64))
        .collect()
}

/// `c · π^{pi_power} · x^{x_exps} · Π_j (π^{-1}∂_j)^{d_exps_j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DTerm {
    pub coeff: Rational,
    pub pi_power: i32,
    pub x_exps: Vec<u64>,
    pub d_exps: Vec<u64>,
}

impl DTerm {
    pub fn new(coeff: Rational, pi_power: i32, x_exps: Vec<u64>, d_exps: Vec<u64>) -> Self {
        Self {
            coeff,
            pi_power,
            x_exps,
            d_exps,
        }
    }
}

/// A finite sum of [`DTerm`]s with `x` to the left of derivations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DOperator {
    pub terms: Vec<DTerm>,
}

impl DOperator {
    /// Merges equal monomials and drops zero coefficients.
    pub fn normalized(self) -> Self {
        let mut acc: BTreeMap<(i32, Vec<u64>, Vec<u64>), Rational> = BTreeMap::new();
        for t in self.terms {
            *acc.entry((t.pi_power, t.x_exps, t.d_exps))
                .or_insert(Rational::from(0)) += t.coeff;
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| *c != Rational::from(0))
            .map(|((pi_power, x_exps, d_exps), coeff)| DTerm {
                coeff,
                pi_power,
                x_exps,
                d_exps,
            })
            .collect();
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `φ(∂^v / π^{|v|}) = t^{v_1 w_1 + ⋯ + v_N w_N}`.
pub fn phi_image(config: &ExponentConfig, v: &[u64]) -> Vec<i64> {
    let signed: Vec<i64> = v.iter().map(|&x| x as i64).collect();
    apply(config, &signed)
}

/// A Laurent polynomial in `t` with coefficients `c · π^k · x^a`, keyed by
/// `(k, a, t-exponent)`.
pub type TPolynomial = BTreeMap<(i32, Vec<u64>, Vec<i64>), Rational>;

/// `φ` extended linearly: `x^a ∂^v/π^{|v|} ↦ x^a t^{Av}`, zero terms dropped.
pub fn phi_operator(config: &ExponentConfig, op: &DOperator) -> TPolynomial {
    let mut out = TPolynomial::new();
    for t in &op.terms {
        let key = (t.pi_power, t.x_exps.clone(), phi_image(config, &t.d_exps));
        *out.entry(key).or_insert(Rational::from(0)) += t.coeff;
    }
    out.retain(|_, c| *c != Rational::from(0));
    out
}

/// `F_{i,γ}(1) = γ_i + π Σ_j w_{ij} x_j t^{w_j}`, read off the definition of
/// `F_{i,γ}` rather than through `φ`.
pub fn f_operator_on_one(config: &ExponentConfig, i: usize, gamma: Rational) -> TPolynomial {
    let big_n = config.num_columns();
    let mut out = TPolynomial::new();
    if gamma != Rational::from(0) {
        out.insert((0, vec![0; big_n], vec![0; config.n()]), gamma);
    }
    for j in 0..big_n {
        let w = config.rows()[i][j];
        if w != 0 {
            let mut x = vec![0; big_n];
            x[j] = 1;
            *out.entry((1, x, config.column(j)))
                .or_insert(Rational::from(0)) += Rational::from(w);
        }
    }
    out.retain(|_, c| *c != Rational::from(0));
    out
}

/// The emitted system: `n` Euler equations, one box equation per basis
/// vector, and optional saturation extras.
#[derive(Debug, Clone, Serialize)]
pub struct SystemPresentation {
    pub euler: Vec<EulerOperator>,
    #[serde(rename = "box")]
    pub boxes: Vec<BoxOperator>,
    pub lattice_basis: LatticeBasis,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub saturation_extras: Vec<Vec<i64>>,
}

pub fn emit_system(
    config: &ExponentConfig,
    gamma: &[Rational],
) -> Result<SystemPresentation, GkzError> {
    if gamma.len() != config.n() {
        return Err(GkzError::DimensionMismatch {
            got: gamma.len(),
            expected: config.n(),
        });
    }
    let basis = lattice_kernel(config);
    let boxes = basis
        .vectors
        .iter()
        .map(|l| box_operator(config, l))
        .collect::<Result<Vec<_>, _>>()?;
    let euler = config
        .rows()
        .iter()
        .zip(gamma)
        .map(|(row, &g)| EulerOperator {
            row: row.clone(),
            gamma: g,
        })
        .collect();
    Ok(SystemPresentation {
        euler,
        boxes,
        lattice_basis: basis,
        saturation_extras: Vec::new(),
    })
}

impl SystemPresentation {
    /// Adds saturation generators not already among the box operators.
    pub fn with_saturation(
        mut self,
        config: &ExponentConfig,
        budget: usize,
    ) -> Result<Self, GkzError> {
        let all = toric_saturation(config, &self.lattice_basis, budget)?;
        for l in all {
            if !self.lattice_basis.vectors.contains(&l) {
                self.boxes.push(box_operator(config, &l)?);
                self.saturation_extras.push(l);
            }
        }
        Ok(self)
    }

    /// Human-readable equations, one per line.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        for (i, e) in self.euler.iter().enumerate() {
            let mut parts = Vec::new();
            for (j, &w) in e.row.iter().enumerate() {
                match w {
                    0 => {}
                    1 => parts.push(format!("x{0} d{0} f", j + 1)),
                    -1 => parts.push(format!("-x{0} d{0} f", j + 1)),
                    w => parts.push(format!("{w} x{0} d{0} f", j + 1)),
                }
            }
            let gamma = if *e.gamma.denom() == 1 {
                format!("{}", e.gamma.numer())
            } else {
                format!("({}/{})", e.gamma.numer(), e.gamma.denom())
            };
            if e.gamma != Rational::from(0) {
                parts.push(format!("{gamma} f"));
            }
            let _ = writeln!(
                out,
                "E{}: {} = 0",
                i + 1,
                parts.join(" + ").replace("+ -", "- ")
            );
        }
        for (i, b) in self.boxes.iter().enumerate() {
            let side = |e: &[u64]| {
                let factors: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(j, &k)| {
                        if k == 1 {
                            format!("(1/pi d{})", j + 1)
                        } else {
                            format!("(1/pi d{})^{k}", j + 1)
                        }
                    })
                    .collect();
                if factors.is_empty() {
                    "1".to_string()
                } else {
                    factors.join(" ")
                }
            };
            let _ = writeln!(
                out,
                "B{}: [{} - {}] f = 0",
                i + 1,
                side(&b.lambda_plus),
                side(&b.lambda_minus)
            );
        }
        out
    }
}
