use std::time::Instant;

use serde_json::{json, Value};

use gkz_dwork::dwork::{char_series, trace_matrix_power, DworkMatrix, DworkSetup, TraceRoute};
use gkz_dwork::gkz::{emit_system, gamma_from_k, GkzError, DEFAULT_STEP_BUDGET};
use gkz_dwork::lfunction::{
    comparison_precision, hyp_table, l_from_charseries, l_series_from_sums, newton_polygon,
    rational_recognition, sums_oracle_characters, sums_oracle_series, LError, PowerSeriesT,
    SumProblem,
};
use gkz_dwork::padic::RamifiedElement;
use gkz_dwork::polytope::{
    enumerate, monoid_membership, nondegeneracy_check, simplicial_decomposition,
    NondegeneracyVerdict,
};
use gkz_dwork::Rational;

use crate::job::Job;
use crate::report::{padic, polynomial, rational, series};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Polytope,
    Gkz,
    Sums,
    Hyp,
    Trace,
    Charpoly,
    Lfunction,
    Check,
    Nondegeneracy,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Polytope => "polytope",
            Command::Gkz => "gkz",
            Command::Sums => "sums",
            Command::Hyp => "hyp",
            Command::Trace => "trace",
            Command::Charpoly => "charpoly",
            Command::Lfunction => "lfunction",
            Command::Check => "check",
            Command::Nondegeneracy => "nondegeneracy",
        }
    }
}

/// A finished report. `passed` is false only when `check` found an identity
/// that does not hold.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub passed: bool,
}

pub fn run(command: Command, job: &Job) -> Result<Report, CliError> {
    let start = Instant::now();
    let (result, passed) = match command {
        Command::Polytope => (polytope(job)?, true),
        Command::Gkz => (gkz(job)?, true),
        Command::Sums => (sums(job)?, true),
        Command::Hyp => (hyp(job)?, true),
        Command::Trace => (trace(job)?, true),
        Command::Charpoly => (charpoly(job)?, true),
        Command::Lfunction => (lfunction(job)?, true),
        Command::Nondegeneracy => (nondegeneracy(job)?, true),
        Command::Check => check(job)?,
    };
    log::info!("{} finished in {:.2?}", command.name(), start.elapsed());
    let json = json!({
        "schema": 1,
        "command": command.name(),
        "job": job_summary(job),
        "result": result,
    });
    Ok(Report { json, passed })
}

fn job_summary(job: &Job) -> Value {
    json!({
        "p": job.p(),
        "f": job.raw.f,
        "q": job.q(),
        "n": job.n(),
        "N": job.config.num_columns(),
        "A": job.config.rows(),
        "gamma_k": job.twist.k(),
        "gamma": job.twist.gamma().iter().map(|&g| rational(g)).collect::<Vec<_>>(),
        "a": job.a.iter().map(|x| x.coeffs()).collect::<Vec<_>>(),
        "M": job.precision,
        "m_max": job.m_max,
        "s_max": job.s_max,
        "K_max": job.k_max,
        "expected_degree": job.volume,
    })
}

fn problem(job: &Job) -> Result<SumProblem, CliError> {
    Ok(SumProblem::new(
        &job.params,
        job.config.clone(),
        job.twist.k().to_vec(),
        job.a.clone(),
    )?)
}

fn oracle_sums(problem: &SumProblem, levels: usize) -> Result<Vec<RamifiedElement>, CliError> {
    (1..=levels as u32)
        .map(|m| {
            let t = Instant::now();
            let s = sums_oracle_characters(problem, m)?;
            log::info!("S_{m} by characters in {:.2?}", t.elapsed());
            Ok(s)
        })
        .collect()
}

fn setup(job: &Job) -> Result<DworkSetup, CliError> {
    Ok(DworkSetup::new(
        &job.params,
        job.nd.clone(),
        job.twist.k().to_vec(),
        &job.a,
        job.weight_cap,
    )?)
}

fn matrix(setup: &DworkSetup) -> Result<DworkMatrix, CliError> {
    let t = Instant::now();
    let m = setup.matrix()?;
    log::info!(
        "matrix of dimension {} built in {:.2?}",
        m.dim(),
        t.elapsed()
    );
    Ok(m)
}

fn matrix_header(job: &Job, setup: &DworkSetup, dm: &DworkMatrix) -> Value {
    json!({
        "D": rational(setup.weight_cap()),
        "D_source": if job.weight_cap.is_some() { "job" } else { "auto" },
        "D_formula": "ceil(M p q / ((p-1)(q-1))) + d(-k) + 2",
        "basis_dim": dm.dim(),
        "tail_bound": rational(dm.tail_bound()),
        "certified": dm.certified_precision(),
    })
}

fn l_from_sums(sums: &[RamifiedElement], precision: u32) -> Result<PowerSeriesT, CliError> {
    let pairs: Vec<_> = sums.iter().map(|s| (s.clone(), precision)).collect();
    Ok(l_series_from_sums(&pairs)?)
}

fn polytope(job: &Job) -> Result<Value, CliError> {
    let nd = &job.nd;
    let decomposition = simplicial_decomposition(nd);
    let simplices: Vec<Value> = decomposition
        .simplices()
        .iter()
        .map(|s| json!({ "columns": s.columns, "det": s.det }))
        .collect();
    let facets: Vec<Vec<Value>> = nd
        .facets()
        .into_iter()
        .map(|f| f.into_iter().map(rational).collect())
        .collect();
    // Lattice points of Δ and whether each lies in the monoid C(A).
    let points = enumerate(nd, Rational::from(1))?;
    let monoid = points
        .points()
        .iter()
        .map(|w| Ok(json!({ "w": w, "membership": monoid_membership(&job.config, w, job.k_max)? })))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(json!({
        "volume": job.volume,
        "monoid_cap": job.k_max,
        "lattice_points": monoid,
        "denom": nd.denom(),
        "facets": facets,
        "cone_facets": nd.cone_facets(),
        "simplices": simplices,
    }))
}

fn gkz(job: &Job) -> Result<Value, CliError> {
    let gamma = gamma_from_k(job.twist.k(), job.q());
    let system = emit_system(&job.config, &gamma)?;
    let (system, saturation) = match system
        .clone()
        .with_saturation(&job.config, DEFAULT_STEP_BUDGET)
    {
        Ok(s) => (s, json!({ "status": "complete" })),
        Err(GkzError::Timeout(budget)) => {
            log::warn!("saturation stopped after {budget} steps");
            (system, json!({ "status": "timeout", "budget": budget }))
        }
        Err(e) => return Err(e.into()),
    };
    let pretty: Vec<String> = system.pretty().lines().map(str::to_string).collect();
    Ok(json!({ "system": system, "saturation": saturation, "pretty": pretty }))
}

fn sums(job: &Job) -> Result<Value, CliError> {
    let sums = oracle_sums(&problem(job)?, job.m_max)?;
    let values: Vec<Value> = sums
        .iter()
        .enumerate()
        .map(|(i, s)| json!({ "m": i + 1, "value": padic(s, job.precision) }))
        .collect();
    Ok(json!({ "oracle": "characters", "sums": values }))
}

fn hyp(job: &Job) -> Result<Value, CliError> {
    let table = hyp_table(&problem(job)?)?;
    let rows: Vec<Value> = table
        .iter()
        .map(|(x, v)| {
            json!({
                "x": x.iter().map(|c| c.coeffs()).collect::<Vec<_>>(),
                "value": padic(v, job.precision),
            })
        })
        .collect();
    Ok(json!({ "order": "lexicographic", "values": rows }))
}

fn trace(job: &Job) -> Result<Value, CliError> {
    let setup = setup(job)?;
    let dm = matrix(&setup)?;
    let n = job.n() as u64;
    let mut traces = Vec::new();
    for m in 1..=job.m_max as u32 {
        let t = trace_matrix_power(&dm, m)?;
        let qm = job.q().pow(m) as i64;
        let factor = RamifiedElement::from_int(&job.params, qm - 1).pow(n);
        traces.push(json!({
            "m": m,
            "trace": padic(&t.value, t.certified),
            "scaled": padic(&t.value.mul(&factor), t.certified),
        }));
    }
    let mut out = matrix_header(job, &setup, &dm);
    out["route"] = json!("matrix_power");
    out["traces"] = Value::Array(traces);
    Ok(out)
}

fn charpoly(job: &Job) -> Result<Value, CliError> {
    let setup = setup(job)?;
    let dm = matrix(&setup)?;
    let (coeffs, certified) = char_series(&dm, Some(job.m_max))?;
    let mut out = matrix_header(job, &setup, &dm);
    out["degree"] = json!(job.m_max);
    out["coefficients"] = Value::Array(coeffs.iter().map(|c| padic(c, certified)).collect());
    Ok(out)
}

fn recognition(job: &Job, from_sums: &PowerSeriesT) -> Result<Value, CliError> {
    let degree = job.volume as usize;
    Ok(match rational_recognition(from_sums, degree, job.n()) {
        Ok(poly) => {
            let polygon = match newton_polygon(&poly) {
                Ok(np) => json!({
                    "vertices": np.vertices.iter().map(|&(i, o)| json!([i, rational(o)])).collect::<Vec<_>>(),
                    "slopes": np.slope_list().into_iter().map(rational).collect::<Vec<_>>(),
                    "flagged": np.flagged,
                }),
                Err(e) => json!({ "error": e.to_string() }),
            };
            json!({ "status": "polynomial", "polynomial": polynomial(&poly), "newton_polygon": polygon })
        }
        Err(LError::NotPolynomial { index }) => {
            json!({ "status": "not_polynomial", "index": index })
        }
        Err(LError::InsufficientOrder { have, need }) => {
            json!({ "status": "insufficient_order", "have": have, "need": need })
        }
        Err(e) => return Err(e.into()),
    })
}

fn lfunction(job: &Job) -> Result<Value, CliError> {
    let sums = oracle_sums(&problem(job)?, job.m_max)?;
    let from_sums = l_from_sums(&sums, job.precision)?;
    let setup = setup(job)?;
    let dm = matrix(&setup)?;
    let (cp, certified) = char_series(&dm, Some(job.m_max))?;
    let from_matrix = l_from_charseries(&cp, certified, job.n(), job.q(), job.m_max)?;
    let m_prime = comparison_precision(job.precision, job.p(), job.m_max as u64);
    let mismatch = from_sums.first_mismatch(&from_matrix, m_prime);
    Ok(json!({
        "order": job.m_max,
        "M_prime": m_prime,
        "from_sums": series(&from_sums),
        "from_matrix": series(&from_matrix),
        "agree": mismatch.is_none(),
        "first_mismatch": mismatch,
        "matrix": matrix_header(job, &setup, &dm),
        "recognition": recognition(job, &from_sums)?,
    }))
}

fn nondegeneracy(job: &Job) -> Result<Value, CliError> {
    let verdict = nondegeneracy_check(&job.nd, job.params.residue_field(), &job.a, job.s_max)?;
    Ok(json!({ "verdict": verdict }))
}

fn outcome(name: &str, passed: bool, precision: Option<u32>, detail: Value) -> Value {
    json!({ "name": name, "passed": passed, "precision": precision, "detail": detail })
}

fn check(job: &Job) -> Result<(Value, bool), CliError> {
    let problem = problem(job)?;
    let p = job.p();
    let n = job.n() as u64;
    let low = job.m_max.min(2);
    let mut outcomes = Vec::new();

    let verdict = nondegeneracy_check(&job.nd, job.params.residue_field(), &job.a, job.s_max)?;
    let recognition_order = job.m_max.max(job.volume as usize + 3);
    let sums = oracle_sums(&problem, recognition_order)?;

    let m2 = comparison_precision(job.precision, p, low as u64);
    let mut bad = None;
    for m in 1..=low {
        let by_series = sums_oracle_series(&problem, m as u32)?;
        if !by_series.eq_mod(&sums[m - 1], m2) {
            bad = Some(m);
            break;
        }
    }
    outcomes.push(outcome(
        "oracle_equivalence",
        bad.is_none(),
        Some(m2),
        json!({ "levels": low, "first_failure": bad }),
    ));

    let setup = setup(job)?;
    let dm = matrix(&setup)?;
    let mut bad = None;
    let mut precision = m2;
    for m in 1..=low as u32 {
        let t = trace_matrix_power(&dm, m)?;
        let level = setup.trace(m, TraceRoute::LevelSeries)?;
        let k = m2.min(t.certified).min(level.certified);
        precision = precision.min(k);
        let factor = RamifiedElement::from_int(&job.params, job.q().pow(m) as i64 - 1).pow(n);
        let scaled = t.value.mul(&factor);
        if !scaled.eq_mod(&sums[m as usize - 1], k) || !t.value.eq_mod(&level.value, k) {
            bad = Some(m);
            break;
        }
    }
    outcomes.push(outcome(
        "trace_formula",
        bad.is_none(),
        Some(precision),
        json!({ "levels": low, "first_failure": bad }),
    ));

    let m_prime = comparison_precision(job.precision, p, job.m_max as u64);
    let from_sums = l_from_sums(&sums[..job.m_max], job.precision)?;
    let (cp, certified) = char_series(&dm, Some(job.m_max))?;
    let from_matrix = l_from_charseries(&cp, certified, job.n(), job.q(), job.m_max)?;
    let k = m_prime.min(certified);
    let mismatch = from_sums.first_mismatch(&from_matrix, k);
    outcomes.push(outcome(
        "l_identity",
        mismatch.is_none(),
        Some(k),
        json!({ "order": job.m_max, "first_mismatch": mismatch }),
    ));

    let degree_law = match &verdict {
        NondegeneracyVerdict::NondegenerateUpTo { checked, .. } if *checked > 0 => {
            let series = l_from_sums(&sums, job.precision)?;
            let detail = recognition(job, &series)?;
            let ok = detail["status"] == "polynomial"
                && detail["polynomial"]["degree"] == json!(job.volume);
            outcome("degree_law", ok, None, detail)
        }
        _ => json!({ "name": "degree_law", "passed": Value::Null, "status": "not_applicable" }),
    };
    outcomes.push(degree_law);

    let passed = outcomes.iter().all(|o| o["passed"] != json!(false));
    let sums_json: Vec<Value> = sums
        .iter()
        .enumerate()
        .map(|(i, s)| json!({ "m": i + 1, "value": padic(s, job.precision) }))
        .collect();
    Ok((
        json!({
            "passed": passed,
            "identities": outcomes,
            "nondegeneracy": verdict,
            "sums": sums_json,
            "matrix": matrix_header(job, &setup, &dm),
        }),
        passed,
    ))
}
