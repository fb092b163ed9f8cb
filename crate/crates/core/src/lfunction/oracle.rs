use std::sync::Arc;

use rayon::prelude::*;

use super::LError;
use crate::finite_field::{FieldEmbedding, FqElement, FqParams, ENUMERATION_LIMIT};
use crate::padic::{
    ring_create, teichmueller, theta_one, RamifiedElement, RingEmbedding, RingParams,
    SplittingSeries,
};
use crate::polytope::ExponentConfig;
use crate::util::prime_factors;

/// Largest `(q^m−1)·N·i_max` accepted by the series oracle, counted in ring
/// multiplications for its evaluation table.
const SERIES_ORACLE_BUDGET: u64 = 50_000_000;

/// The data defining `S_m`: the ring `R(f, M)` whose residue field is `F_q`,
/// the exponent matrix, character exponents `k` and coefficients `ā ∈ F_q^N`.
#[derive(Debug, Clone)]
pub struct SumProblem {
    params: Arc<RingParams>,
    config: ExponentConfig,
    k: Vec<i64>,
    a: Vec<FqElement>,
}

impl SumProblem {
    pub fn new(
        params: &Arc<RingParams>,
        config: ExponentConfig,
        k: Vec<i64>,
        a: Vec<FqElement>,
    ) -> Result<Self, LError> {
        if k.len() != config.n() {
            return Err(LError::DimensionMismatch {
                got: k.len(),
                expected: config.n(),
            });
        }
        if a.len() != config.num_columns() {
            return Err(LError::DimensionMismatch {
                got: a.len(),
                expected: config.num_columns(),
            });
        }
        for x in &a {
            params.residue_field().element(x.coeffs().to_vec())?;
        }
        Ok(Self {
            params: params.clone(),
            config,
            k,
            a,
        })
    }

    pub fn params(&self) -> &Arc<RingParams> {
        &self.params
    }

    pub fn config(&self) -> &ExponentConfig {
        &self.config
    }

    pub fn k(&self) -> &[i64] {
        &self.k
    }

    pub fn coefficients(&self) -> &[FqElement] {
        &self.a
    }

    pub fn with_coefficients(&self, a: Vec<FqElement>) -> Result<Self, LError> {
        Self::new(&self.params, self.config.clone(), self.k.clone(), a)
    }

    fn q(&self) -> u64 {
        self.params.p().pow(self.params.s() as u32)
    }
}

/// The level-`m` extension with a generator of its unit group and the
/// exponent vectors, shared by both oracles.
struct Torus {
    ext: FqParams,
    big: Arc<RingParams>,
    generator: FqElement,
    units: u64,
    lifted_a: Vec<FqElement>,
    columns: Vec<Vec<i64>>,
    n: usize,
}

impl Torus {
    fn new(problem: &SumProblem, m: u32) -> Result<Self, LError> {
        if m == 0 {
            return Err(LError::ZeroLevel);
        }
        let params = &problem.params;
        let base = params.residue_field();
        let degree = params.s() * m as usize;
        let ext = FqParams::new(params.p(), degree)?;
        let units =
            ext.order()
                .filter(|&o| o <= ENUMERATION_LIMIT)
                .ok_or(LError::BudgetExceeded {
                    what: "extension degree",
                    got: degree as u64,
                    limit: ENUMERATION_LIMIT.ilog(params.p()) as u64,
                })?
                - 1;
        let n = problem.config.n();
        let torus = units.checked_pow(n as u32).unwrap_or(u64::MAX);
        if torus > ENUMERATION_LIMIT {
            return Err(LError::BudgetExceeded {
                what: "torus size",
                got: torus,
                limit: ENUMERATION_LIMIT,
            });
        }
        let emb = FieldEmbedding::new(base, &ext)?;
        let lifted_a = problem.a.iter().map(|x| emb.map(x)).collect();
        let generator = primitive_element(&ext, units);
        let big = ring_create(params.p(), degree, params.precision())?;
        Ok(Self {
            ext,
            big,
            generator,
            units,
            lifted_a,
            columns: problem.config.columns(),
            n,
        })
    }

    fn points(&self) -> u64 {
        self.units.pow(self.n as u32)
    }

    /// Discrete logs `e` of the torus point with flat index `idx`.
    fn decode(&self, mut idx: u64, e: &mut [u64]) {
        for slot in e.iter_mut().rev() {
            *slot = idx % self.units;
            idx /= self.units;
        }
    }

    /// `⟨e, w⟩ mod (Q−1)`.
    fn pair(&self, e: &[u64], w: &[i64]) -> usize {
        let u = self.units as i128;
        let s: i128 = e.iter().zip(w).map(|(&a, &b)| a as i128 * b as i128).sum();
        s.rem_euclid(u) as usize
    }

    /// Brings a level-`m` value back to the base ring.
    fn descend(
        &self,
        params: &Arc<RingParams>,
        x: &RamifiedElement,
    ) -> Result<RamifiedElement, LError> {
        let emb = RingEmbedding::new(params, &self.big)?;
        emb.preimage(x).ok_or(LError::NotInBaseRing)
    }
}

fn primitive_element(field: &FqParams, units: u64) -> FqElement {
    let primes = prime_factors(units);
    (1..)
        .map(|i| field.element_at(i))
        .find(|x| {
            !x.is_zero()
                && primes
                    .iter()
                    .all(|&r| field.pow(x, units / r) != field.one())
        })
        .expect("the unit group is cyclic")
}

/// `S_m` by characters: with `u_i = g^{e_i}`, the summand is
/// `ζ^{Σ e_i k_i} · θ(1)^{Tr(F(ā, u))}` where `ζ = T(Norm g)`. Points are
/// tallied by the pair of exponents, so the ring work is independent of the
/// torus size.
pub fn sums_oracle_characters(problem: &SumProblem, m: u32) -> Result<RamifiedElement, LError> {
    let torus = Torus::new(problem, m)?;
    let ext = &torus.ext;
    let p = ext.p();
    let q = problem.q();
    let units = torus.units as usize;

    let mut g_pow = Vec::with_capacity(units);
    let mut x = ext.one();
    for _ in 0..units {
        g_pow.push(x.clone());
        x = ext.mul(&x, &torus.generator);
    }
    let basis_traces: Vec<u64> = (0..ext.degree())
        .map(|i| {
            let mut c = vec![0; ext.degree()];
            c[i] = 1;
            ext.absolute_trace(&ext.element(c).expect("basis vector"))
        })
        .collect();
    let trace = |x: &FqElement| -> usize {
        (x.coeffs()
            .iter()
            .zip(&basis_traces)
            .map(|(a, b)| a * b)
            .sum::<u64>()
            % p) as usize
    };
    // trace_table[j][t] = Tr(ā_j g^t)
    let trace_table: Vec<Vec<u8>> = torus
        .lifted_a
        .par_iter()
        .map(|a| {
            g_pow
                .iter()
                .map(|gt| trace(&ext.mul(a, gt)) as u8)
                .collect()
        })
        .collect();

    let q1 = q - 1;
    let pu = p as usize;
    let counts = (0..torus.points())
        .into_par_iter()
        .fold(
            || (vec![0u64; q1 as usize * pu], vec![0u64; torus.n]),
            |(mut counts, mut e), idx| {
                torus.decode(idx, &mut e);
                let mut tr = 0usize;
                for (table, w) in trace_table.iter().zip(&torus.columns) {
                    tr += table[torus.pair(&e, w)] as usize;
                }
                let chi: i128 = e
                    .iter()
                    .zip(&problem.k)
                    .map(|(&a, &b)| a as i128 * b as i128)
                    .sum();
                let chi = chi.rem_euclid(q1 as i128) as usize;
                counts[chi * pu + tr % pu] += 1;
                (counts, e)
            },
        )
        .map(|(c, _)| c)
        .reduce(
            || vec![0u64; q1 as usize * pu],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );

    let big = &torus.big;
    let theta = theta_one(big);
    let norm_gen = ext.pow(&torus.generator, torus.units / q1);
    let zeta = teichmueller(&norm_gen, big);
    let theta_pows: Vec<RamifiedElement> = (0..p).map(|c| theta.pow(c)).collect();
    let mut total = RamifiedElement::zero(big);
    let mut zeta_c = RamifiedElement::one(big);
    for chi in 0..q1 as usize {
        for (tr, th) in theta_pows.iter().enumerate() {
            let n = counts[chi * pu + tr];
            if n > 0 {
                total.add_assign(&zeta_c.mul(th).scale(n as i64));
            }
        }
        zeta_c = zeta_c.mul(&zeta);
    }
    torus.descend(&problem.params, &total)
}

/// `S_m = Σ_{u^{Q−1}=1} u^{k(1+q+…+q^{m−1})} Π_j θ_Q(a_j u^{w_j})` with
/// `θ_Q(z) = exp(πz − πz^Q)` summed up to its vanishing cutoff.
pub fn sums_oracle_series(problem: &SumProblem, m: u32) -> Result<RamifiedElement, LError> {
    let torus = Torus::new(problem, m)?;
    let big = &torus.big;
    let q_power = torus.units + 1;
    let split = SplittingSeries::new(big, q_power)?;
    let cost = torus
        .units
        .saturating_mul(problem.config.num_columns() as u64)
        .saturating_mul(split.len() as u64);
    if cost > SERIES_ORACLE_BUDGET {
        return Err(LError::BudgetExceeded {
            what: "series oracle work",
            got: cost,
            limit: SERIES_ORACLE_BUDGET,
        });
    }
    let omega = teichmueller(&torus.generator, big);
    let mut omega_pow = Vec::with_capacity(torus.units as usize);
    let mut x = RamifiedElement::one(big);
    for _ in 0..torus.units {
        omega_pow.push(x.clone());
        x = x.mul(&omega);
    }
    let a_big: Vec<RamifiedElement> = torus
        .lifted_a
        .iter()
        .map(|a| teichmueller(a, big))
        .collect();
    // values[j][t] = θ_Q(a_j ω^t)
    let values: Vec<Vec<RamifiedElement>> = a_big
        .iter()
        .map(|a| {
            omega_pow
                .par_iter()
                .map(|w| split.evaluate(&a.mul(w)))
                .collect()
        })
        .collect();
    let q = problem.q() as i64;
    let geometric: i64 = (0..m).map(|i| q.pow(i)).sum();
    let shift: Vec<i64> = problem.k.iter().map(|&k| k * geometric).collect();

    let total = (0..torus.points())
        .into_par_iter()
        .fold(
            || (RamifiedElement::zero(big), vec![0u64; torus.n]),
            |(mut acc, mut e), idx| {
                torus.decode(idx, &mut e);
                let mut term = omega_pow[torus.pair(&e, &shift)].clone();
                for (vals, w) in values.iter().zip(&torus.columns) {
                    term = term.mul(&vals[torus.pair(&e, w)]);
                }
                acc.add_assign(&term);
                (acc, e)
            },
        )
        .map(|(acc, _)| acc)
        .reduce(|| RamifiedElement::zero(big), |a, b| a.add(&b));
    torus.descend(&problem.params, &total)
}

/// `S_1` at every `x ∈ F_q^N`, in lexicographic order of `x` (first
/// coordinate most significant, each coordinate in field enumeration order).
pub fn hyp_table(problem: &SumProblem) -> Result<Vec<(Vec<FqElement>, RamifiedElement)>, LError> {
    let field = problem.params.residue_field();
    let q = problem.q();
    let big_n = problem.config.num_columns() as u32;
    let n = problem.config.n() as u32;
    let work = q
        .checked_pow(big_n)
        .and_then(|x| x.checked_mul((q - 1).pow(n)))
        .unwrap_or(u64::MAX);
    if work > ENUMERATION_LIMIT {
        return Err(LError::BudgetExceeded {
            what: "hypergeometric table work",
            got: work,
            limit: ENUMERATION_LIMIT,
        });
    }
    let total = q.pow(big_n);
    (0..total)
        .map(|mut idx| {
            let mut x = vec![field.zero(); big_n as usize];
            for slot in x.iter_mut().rev() {
                *slot = field.element_at(idx % q);
                idx /= q;
            }
            let s = sums_oracle_characters(&problem.with_coefficients(x.clone())?, 1)?;
            Ok((x, s))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(p: u64, rows: &[&[i64]], k: Vec<i64>, a: &[i64], m: u32) -> SumProblem {
        let params = ring_create(p, 1, m).unwrap();
        let f = params.residue_field().clone();
        let config = ExponentConfig::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap();
        SumProblem::new(
            &params,
            config,
            k,
            a.iter().map(|&c| f.from_int(c)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn line_sum_is_minus_one() {
        let pr = problem(3, &[&[1]], vec![0], &[1], 6);
        for m in 1..=3 {
            let s = sums_oracle_characters(&pr, m).unwrap();
            assert_eq!(s.as_small_int(), Some(-1), "m = {m}");
        }
        assert_eq!(sums_oracle_series(&pr, 1).unwrap().as_small_int(), Some(-1));
    }

    #[test]
    fn zero_coefficients_count_the_torus() {
        let pr = problem(5, &[&[1, 0, 1], &[0, 1, 1]], vec![0, 0], &[0, 0, 0], 4);
        for m in 1..=2u32 {
            let expected = RamifiedElement::from_int(pr.params(), (5i64.pow(m) - 1).pow(2));
            assert_eq!(sums_oracle_characters(&pr, m).unwrap(), expected);
            assert_eq!(sums_oracle_series(&pr, m).unwrap(), expected);
        }
    }

    #[test]
    fn kloosterman_by_hand() {
        let pr = problem(5, &[&[1, -1]], vec![0], &[1, 1], 5);
        let params = pr.params().clone();
        let theta = theta_one(&params);
        // t + 1/t over F_5^*: 2, 0, 0, 3.
        let expected = RamifiedElement::from_int(&params, 2)
            .add(&theta.pow(2))
            .add(&theta.pow(3));
        assert_eq!(sums_oracle_characters(&pr, 1).unwrap(), expected);
        assert_eq!(sums_oracle_series(&pr, 1).unwrap(), expected);
    }

    #[test]
    fn hyp_table_for_the_line() {
        let pr = problem(3, &[&[1]], vec![0], &[0], 4);
        let table: Vec<Option<i64>> = hyp_table(&pr)
            .unwrap()
            .into_iter()
            .map(|(_, s)| s.as_small_int())
            .collect();
        assert_eq!(table, vec![Some(2), Some(-1), Some(-1)]);
    }
}
