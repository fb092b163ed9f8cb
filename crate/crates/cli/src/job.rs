//! Job files: parsing (shape only) and validation (every invariant the
//! engine relies on, each failure naming the invariant).

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use gkz_dwork::dwork::{twist_validate, TwistData};
use gkz_dwork::finite_field::FqElement;
use gkz_dwork::padic::{ring_create, PadicError, RingParams};
use gkz_dwork::polytope::{newton_data, normalized_volume, ExponentConfig, NewtonData};
use gkz_dwork::Rational;

use crate::CliError;

pub const MAX_PRECISION: u32 = 30;
pub const MAX_DEGREE: u32 = 12;
pub const MAX_LEVEL: usize = 12;
pub const MAX_NONDEGENERACY_LEVEL: usize = 6;
pub const MAX_MEMBERSHIP_CAP: u64 = 1000;
pub const DEFAULT_MEMBERSHIP_CAP: u64 = 50;

/// A rational given either as an integer or as `[num, den]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalInput {
    Integer(i64),
    Pair([i64; 2]),
}

impl RationalInput {
    fn value(self) -> Option<Rational> {
        match self {
            RationalInput::Integer(n) => Some(Rational::from(n)),
            RationalInput::Pair([_, 0]) => None,
            RationalInput::Pair([n, d]) => Some(Rational::new(n, d)),
        }
    }
}

/// An element of `F_q` as a coordinate vector. A bare integer is accepted
/// when `f = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoefficientInput {
    Scalar(u64),
    Vector(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrecisionConfig {
    #[serde(rename = "M")]
    pub m: u32,
    #[serde(rename = "D", default, skip_serializing_if = "Option::is_none")]
    pub d: Option<RationalInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_max: Option<usize>,
    #[serde(rename = "K_max", default, skip_serializing_if = "Option::is_none")]
    pub k_max: Option<u64>,
}

/// The job file as written.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub p: u64,
    pub f: u32,
    #[serde(rename = "A")]
    pub a_matrix: Vec<Vec<i64>>,
    pub gamma_k: Vec<i64>,
    pub a: Vec<CoefficientInput>,
    pub precision: PrecisionConfig,
}

/// Parses a job. Only shape is checked here: JSON syntax, field types and
/// rectangular `A`.
pub fn parse_job(text: &str) -> Result<JobConfig, CliError> {
    let job: JobConfig = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    if let Some(first) = job.a_matrix.first() {
        if let Some((i, row)) = job
            .a_matrix
            .iter()
            .enumerate()
            .find(|(_, r)| r.len() != first.len())
        {
            return Err(CliError::Parse(format!(
                "A is ragged: row {i} has {} entries, row 0 has {}",
                row.len(),
                first.len()
            )));
        }
    }
    Ok(job)
}

/// A job that passed validation, with everything the commands need.
#[derive(Debug, Clone)]
pub struct Job {
    pub raw: JobConfig,
    pub params: Arc<RingParams>,
    pub config: ExponentConfig,
    pub nd: NewtonData,
    pub twist: TwistData,
    pub a: Vec<FqElement>,
    pub precision: u32,
    pub weight_cap: Option<Rational>,
    pub m_max: usize,
    pub s_max: usize,
    /// Search cap for membership in the monoid `C(A)`.
    pub k_max: u64,
    /// `n!·vol(Δ)`, the expected degree of the L-polynomial.
    pub volume: u64,
}

impl Job {
    pub fn p(&self) -> u64 {
        self.raw.p
    }

    pub fn q(&self) -> u64 {
        self.twist.q()
    }

    pub fn n(&self) -> usize {
        self.config.n()
    }
}

fn invalid(invariant: &'static str, detail: impl Into<String>) -> CliError {
    CliError::Validation {
        invariant,
        detail: detail.into(),
    }
}

pub fn validate(raw: JobConfig) -> Result<Job, CliError> {
    let prec = raw.precision.clone();
    if raw.f == 0 || raw.f > MAX_DEGREE {
        return Err(invalid(
            "f in range",
            format!("f = {} outside 1..={MAX_DEGREE}", raw.f),
        ));
    }
    if prec.m == 0 || prec.m > MAX_PRECISION {
        return Err(invalid(
            "M in range",
            format!("M = {} outside 1..={MAX_PRECISION}", prec.m),
        ));
    }
    let params = ring_create(raw.p, raw.f as usize, prec.m).map_err(|e| match e {
        PadicError::NotPrime(_) => invalid("p prime", e.to_string()),
        PadicError::UnsupportedPrime(_) => invalid("p odd", e.to_string()),
        other => invalid("p^M representable", other.to_string()),
    })?;
    let config = ExponentConfig::new(raw.a_matrix.clone())
        .map_err(|e| invalid("A full rank and within size limits", e.to_string()))?;
    let nd = newton_data(&config).map_err(|e| invalid("Newton polytope", e.to_string()))?;
    let n = config.n();
    let big_n = config.num_columns();

    if raw.gamma_k.len() != n {
        return Err(invalid(
            "gamma_k has one entry per row of A",
            format!("{} entries for {n} rows", raw.gamma_k.len()),
        ));
    }
    let q = raw.p.pow(raw.f);
    let twist = TwistData::new(raw.gamma_k.clone(), q);
    twist_validate(&twist, &nd).map_err(|e| invalid("gamma in the cone", e.to_string()))?;

    if raw.a.len() != big_n {
        return Err(invalid(
            "a has one entry per column of A",
            format!("{} entries for {big_n} columns", raw.a.len()),
        ));
    }
    let field = params.residue_field();
    let a = raw
        .a
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let v = match c {
                CoefficientInput::Scalar(x) if raw.f == 1 => vec![*x],
                CoefficientInput::Scalar(_) => {
                    return Err(invalid(
                        "a_j in F_q",
                        format!("a_{j} is a bare integer but f = {}", raw.f),
                    ))
                }
                CoefficientInput::Vector(v) => v.clone(),
            };
            field
                .element(v)
                .map_err(|e| invalid("a_j in F_q", format!("a_{j}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let volume = normalized_volume(&config).map_err(|e| invalid("volume", e.to_string()))?;
    let m_max = prec.m_max.unwrap_or_else(|| (volume as usize + 3).max(2));
    if m_max == 0 || m_max > MAX_LEVEL {
        return Err(invalid(
            "m_max in range",
            format!("m_max = {m_max} outside 1..={MAX_LEVEL}"),
        ));
    }
    let s_max = prec.s_max.unwrap_or(2);
    if s_max > MAX_NONDEGENERACY_LEVEL {
        return Err(invalid(
            "s_max in range",
            format!("s_max = {s_max} above {MAX_NONDEGENERACY_LEVEL}"),
        ));
    }
    let k_max = prec.k_max.unwrap_or(DEFAULT_MEMBERSHIP_CAP);
    if k_max > MAX_MEMBERSHIP_CAP {
        return Err(invalid(
            "K_max in range",
            format!("K_max = {k_max} above {MAX_MEMBERSHIP_CAP}"),
        ));
    }
    let weight_cap = match prec.d {
        None => None,
        Some(d) => match d.value() {
            Some(v) if v > Rational::from(0) => Some(v),
            _ => return Err(invalid("D positive", format!("{d:?}"))),
        },
    };
    Ok(Job {
        raw,
        params,
        config,
        nd,
        twist,
        a,
        precision: prec.m,
        weight_cap,
        m_max,
        s_max,
        k_max,
        volume,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const LINE: &str =
        r#"{"p":3,"f":1,"A":[[1]],"gamma_k":[0],"a":[[1]],"precision":{"M":6,"m_max":2}}"#;

    #[test]
    fn parses_and_validates_the_line() {
        let job = validate(parse_job(LINE).unwrap()).unwrap();
        assert_eq!(
            (job.p(), job.q(), job.n(), job.volume, job.m_max),
            (3, 3, 1, 1, 2)
        );
        assert_eq!(job.k_max, 50);
        assert_eq!(job.s_max, 2);
    }

    #[test]
    fn rationals_as_pairs() {
        let text = LINE.replace(r#""m_max":2"#, r#""D":[33,2]"#);
        let job = validate(parse_job(&text).unwrap()).unwrap();
        assert_eq!(job.weight_cap, Some(Rational::new(33, 2)));
        assert_eq!(job.m_max, 4);
    }

    #[test]
    fn coefficients_as_vectors_or_bare_integers() {
        let vector = LINE.replace(r#""a":[[1]]"#, r#""a":[[2]]"#);
        let scalar = LINE.replace(r#""a":[[1]]"#, r#""a":[2]"#);
        let a = validate(parse_job(&vector).unwrap()).unwrap().a;
        assert_eq!(validate(parse_job(&scalar).unwrap()).unwrap().a, a);
        let f2 = LINE.replace(r#""f":1"#, r#""f":2"#);
        match validate(parse_job(&f2.replace(r#""a":[[1]]"#, r#""a":[1]"#)).unwrap()) {
            Err(CliError::Validation { invariant, .. }) => assert_eq!(invariant, "a_j in F_q"),
            other => panic!("{other:?}"),
        }
        let short = validate(parse_job(&f2).unwrap());
        assert!(matches!(
            short,
            Err(CliError::Validation {
                invariant: "a_j in F_q",
                ..
            })
        ));
        assert!(
            validate(parse_job(&f2.replace(r#""a":[[1]]"#, r#""a":[[1,2]]"#)).unwrap()).is_ok()
        );
    }

    #[test]
    fn shape_errors_are_parse_errors() {
        let ragged = LINE.replace(r#""A":[[1]]"#, r#""A":[[1,0],[1]]"#);
        assert!(matches!(parse_job(&ragged), Err(CliError::Parse(_))));
        assert!(matches!(parse_job("{"), Err(CliError::Parse(_))));
        let extra = LINE.replace(r#""p":3"#, r#""p":3,"q":3"#);
        assert!(matches!(parse_job(&extra), Err(CliError::Parse(_))));
        let float = LINE.replace(r#""A":[[1]]"#, r#""A":[[1.5]]"#);
        assert!(matches!(parse_job(&float), Err(CliError::Parse(_))));
    }

    #[test]
    fn validation_names_the_invariant() {
        let cases = [
            (LINE.replace(r#""p":3"#, r#""p":9"#), "p prime"),
            (LINE.replace(r#""p":3"#, r#""p":2"#), "p odd"),
            (
                LINE.replace(r#""gamma_k":[0]"#, r#""gamma_k":[1]"#),
                "gamma in the cone",
            ),
            (LINE.replace(r#""a":[[1]]"#, r#""a":[[3]]"#), "a_j in F_q"),
            (
                LINE.replace(r#""A":[[1]]"#, r#""A":[[0]]"#),
                "A full rank and within size limits",
            ),
            (LINE.replace(r#""M":6"#, r#""M":40"#), "M in range"),
        ];
        for (text, expected) in cases {
            match validate(parse_job(&text).unwrap()) {
                Err(CliError::Validation { invariant, .. }) => assert_eq!(invariant, expected),
                other => panic!("{text}: {other:?}"),
            }
        }
    }
}
