//! Toric saturation `I_L : (x_1⋯x_N)^∞` of the lattice-basis ideal, by
//! Buchberger's algorithm on binomials with an extra variable `y` and the
//! relation `y·x_1⋯x_N − 1`, then eliminating `y`.

use std::cmp::Ordering;

use super::{GkzError, LatticeBasis};
use crate::polytope::ExponentConfig;

pub const DEFAULT_STEP_BUDGET: usize = 20_000;

type Mono = Vec<u32>;

/// `lead − tail` with `lead > tail` in the term order.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Binomial {
    lead: Mono,
    tail: Mono,
}

/// Elimination order: `y`-degree (last slot) first, then grevlex on `x`.
fn cmp(a: &Mono, b: &Mono) -> Ordering {
    let y = a.len() - 1;
    a[y].cmp(&b[y]).then_with(|| {
        let da: u32 = a[..y].iter().sum();
        let db: u32 = b[..y].iter().sum();
        da.cmp(&db).then_with(|| {
            for i in (0..y).rev() {
                if a[i] != b[i] {
                    return b[i].cmp(&a[i]);
                }
            }
            Ordering::Equal
        })
    })
}

fn make(a: Mono, b: Mono) -> Option<Binomial> {
    match cmp(&a, &b) {
        Ordering::Equal => None,
        Ordering::Greater => Some(Binomial { lead: a, tail: b }),
        Ordering::Less => Some(Binomial { lead: b, tail: a }),
    }
}

fn divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Full reduction of `m` modulo the basis; returns the normal form monomial.
fn reduce_mono(
    mut m: Mono,
    basis: &[Binomial],
    steps: &mut usize,
    budget: usize,
) -> Result<Mono, GkzError> {
    'outer: loop {
        for g in basis {
            if divides(&g.lead, &m) {
                *steps += 1;
                if *steps > budget {
                    return Err(GkzError::Timeout(budget));
                }
                for i in 0..m.len() {
                    m[i] = m[i] - g.lead[i] + g.tail[i];
                }
                continue 'outer;
            }
        }
        return Ok(m);
    }
}

fn reduce(
    b: &Binomial,
    basis: &[Binomial],
    steps: &mut usize,
    budget: usize,
) -> Result<Option<Binomial>, GkzError> {
    let l = reduce_mono(b.lead.clone(), basis, steps, budget)?;
    let t = reduce_mono(b.tail.clone(), basis, steps, budget)?;
    Ok(make(l, t))
}

fn s_pair(f: &Binomial, g: &Binomial) -> Option<Binomial> {
    let lcm: Mono = f.lead.iter().zip(&g.lead).map(|(a, b)| *a.max(b)).collect();
    let a: Mono = (0..lcm.len())
        .map(|i| lcm[i] - f.lead[i] + f.tail[i])
        .collect();
    let b: Mono = (0..lcm.len())
        .map(|i| lcm[i] - g.lead[i] + g.tail[i])
        .collect();
    make(a, b)
}

fn coprime(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Generators of `I_A = I_L : (x_1⋯x_N)^∞` as exponent differences,
/// starting with the input basis and followed by any new ones.
pub fn toric_saturation(
    config: &ExponentConfig,
    basis: &LatticeBasis,
    budget: usize,
) -> Result<Vec<Vec<i64>>, GkzError> {
    let big_n = config.num_columns();
    if basis.vectors.is_empty() {
        return Ok(Vec::new());
    }
    let mut gens: Vec<Binomial> = Vec::new();
    for l in &basis.vectors {
        if l.len() != big_n {
            return Err(GkzError::DimensionMismatch {
                got: l.len(),
                expected: big_n,
            });
        }
        let mut plus: Mono = l.iter().map(|&x| x.max(0) as u32).collect();
        let mut minus: Mono = l.iter().map(|&x| (-x).max(0) as u32).collect();
        plus.push(0);
        minus.push(0);
        gens.extend(make(plus, minus));
    }
    gens.extend(make(vec![1u32; big_n + 1], vec![0; big_n + 1]));

    let mut steps = 0usize;
    let mut g: Vec<Binomial> = Vec::new();
    for b in gens {
        if let Some(r) = reduce(&b, &g, &mut steps, budget)? {
            g.push(r);
        }
    }
    let mut pairs: Vec<(usize, usize)> = (0..g.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    while let Some((i, j)) = pairs.pop() {
        steps += 1;
        if steps > budget {
            return Err(GkzError::Timeout(budget));
        }
        if coprime(&g[i].lead, &g[j].lead) {
            continue;
        }
        let Some(s) = s_pair(&g[i], &g[j]) else {
            continue;
        };
        if let Some(r) = reduce(&s, &g, &mut steps, budget)? {
            let k = g.len();
            g.push(r);
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }

    // Interreduce, keep y-free elements.
    g.sort_by(|a, b| cmp(&a.lead, &b.lead));
    let mut minimal: Vec<Binomial> = Vec::new();
    for (k, b) in g.iter().enumerate() {
        let redundant = g
            .iter()
            .enumerate()
            .any(|(m, o)| m != k && divides(&o.lead, &b.lead) && (o.lead != b.lead || m < k));
        if !redundant {
            minimal.push(b.clone());
        }
    }
    let mut reduced = Vec::new();
    for k in 0..minimal.len() {
        let others: Vec<Binomial> = minimal
            .iter()
            .enumerate()
            .filter(|(m, _)| *m != k)
            .map(|(_, b)| b.clone())
            .collect();
        let tail = reduce_mono(minimal[k].tail.clone(), &others, &mut steps, budget)?;
        if let Some(b) = make(minimal[k].lead.clone(), tail) {
            reduced.push(b);
        }
    }

    let mut out: Vec<Vec<i64>> = basis.vectors.clone();
    for b in reduced {
        if b.lead[big_n] != 0 || b.tail[big_n] != 0 {
            continue;
        }
        let mut l: Vec<i64> = (0..big_n)
            .map(|i| b.lead[i] as i64 - b.tail[i] as i64)
            .collect();
        if l.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            l.iter_mut().for_each(|x| *x = -*x);
        }
        if !out.contains(&l) {
            out.push(l);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gkz::lattice_kernel;

    fn cfg(rows: &[&[i64]]) -> ExponentConfig {
        ExponentConfig::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn already_saturated_inputs() {
        for rows in [
            &[&[1i64, 1][..]][..],
            &[&[1, 1, 1], &[0, 1, 2]],
            &[&[1, -1]],
        ] {
            let a = cfg(rows);
            let basis = lattice_kernel(&a);
            assert_eq!(
                toric_saturation(&a, &basis, DEFAULT_STEP_BUDGET).unwrap(),
                basis.vectors
            );
        }
        let a = cfg(&[&[1]]);
        assert!(toric_saturation(&a, &lattice_kernel(&a), 10)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn twisted_cubic_needs_more_generators() {
        let a = cfg(&[&[1, 1, 1, 1], &[0, 1, 2, 3]]);
        let basis = lattice_kernel(&a);
        assert_eq!(basis.vectors.len(), 2);
        let sat = toric_saturation(&a, &basis, DEFAULT_STEP_BUDGET).unwrap();
        for q in [[1i64, -2, 1, 0], [0, 1, -2, 1], [1, -1, -1, 1]] {
            let neg: Vec<i64> = q.iter().map(|x| -x).collect();
            assert!(
                sat.iter().any(|l| l.as_slice() == q || *l == neg),
                "{q:?} in {sat:?}"
            );
        }
    }

    #[test]
    fn budget_is_enforced() {
        let a = cfg(&[&[1, 1, 1, 1], &[0, 1, 2, 3]]);
        let basis = lattice_kernel(&a);
        assert_eq!(toric_saturation(&a, &basis, 1), Err(GkzError::Timeout(1)));
    }
}
