//! Exact integer linear algebra on small matrices (entries in `i128`).

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Rank over `Q` of the given rows.
pub fn rank(rows: &[Vec<i128>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        for i in r + 1..a.len() {
            if a[i][c] != 0 {
                let (x, y) = (a[r][c], a[i][c]);
                for j in c..cols {
                    a[i][j] = a[i][j] * x - a[r][j] * y;
                }
                let g = a[i].iter().fold(0i128, |g, &v| gcd(g, v));
                if g > 1 {
                    a[i].iter_mut().for_each(|v| *v /= g);
                }
            }
        }
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A generator of the rational kernel of `n − 1` rows in `Z^n`, as the
/// vector of signed maximal minors, divided by its content. Zero when the
/// rows are dependent.
pub fn normal_vector(rows: &[Vec<i128>], n: usize) -> Vec<i128> {
    debug_assert_eq!(rows.len() + 1, n);
    let mut out = Vec::with_capacity(n);
    for skip in 0..n {
        let minor: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let d = det(&minor);
        out.push(if skip % 2 == 0 { d } else { -d });
    }
    primitive(out)
}

pub fn primitive(mut v: Vec<i128>) -> Vec<i128> {
    let g = v.iter().fold(0i128, |g, &x| gcd(g, x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
    v
}

/// Solves `M x = rhs` for square nonsingular `M` by Cramer's rule, returning
/// `(numerators, denominator)` with positive denominator.
pub fn solve(m: &[Vec<i128>], rhs: &[i128]) -> Option<(Vec<i128>, i128)> {
    let n = m.len();
    let d = det(m);
    if d == 0 {
        return None;
    }
    let mut nums = Vec::with_capacity(n);
    for j in 0..n {
        let mj: Vec<Vec<i128>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| if k == j { rhs[i] } else { m[i][k] })
                    .collect()
            })
            .collect();
        nums.push(det(&mj));
    }
    if d < 0 {
        nums.iter_mut().for_each(|x| *x = -*x);
    }
    Some((nums, d.abs()))
}

/// Column echelon form of an `n × N` matrix under unimodular column
/// operations: returns `(H, U)` with `H = A·U`, `U` unimodular, and the
/// pivot columns of `H` first. Columns of `U` past the rank span `ker_Z(A)`.
pub fn column_echelon(a: &[Vec<i128>]) -> (Vec<Vec<i128>>, Vec<Vec<i128>>, usize) {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut h: Vec<Vec<i128>> = a.to_vec();
    let mut u: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| i128::from(i == j)).collect())
        .collect();
    let col_op = |m: &mut Vec<Vec<i128>>, dst: usize, src: usize, f: i128| {
        for row in m.iter_mut() {
            row[dst] -= f * row[src];
        }
    };
    let swap = |m: &mut Vec<Vec<i128>>, x: usize, y: usize| {
        for row in m.iter_mut() {
            row.swap(x, y);
        }
    };
    let mut pivot = 0;
    for r in 0..rows {
        if pivot == cols {
            break;
        }
        // Euclid across columns pivot.. on row r.
        loop {
            let nz: Vec<usize> = (pivot..cols).filter(|&c| h[r][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let &best = nz.iter().min_by_key(|&&c| h[r][c].abs()).unwrap();
            if best != pivot {
                swap(&mut h, best, pivot);
                swap(&mut u, best, pivot);
            }
            let mut done = true;
            for c in pivot + 1..cols {
                if h[r][c] != 0 {
                    let f = h[r][c].div_euclid(h[r][pivot]);
                    col_op(&mut h, c, pivot, f);
                    col_op(&mut u, c, pivot, f);
                    if h[r][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[r][pivot] != 0 {
            pivot += 1;
        }
    }
    (h, u, pivot)
}

/// Integer basis of `ker_Z(A)`; each vector is normalized so its first
/// nonzero entry is positive.
pub fn integer_kernel(a: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let cols = a.first().map_or(0, |r| r.len());
    let (_, u, rank) = column_echelon(a);
    (rank..cols)
        .map(|c| {
            let mut v: Vec<i128> = u.iter().map(|row| row[c]).collect();
            if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                v.iter_mut().for_each(|x| *x = -*x);
            }
            v
        })
        .collect()
}

/// Whether `w` is an integer combination of the columns of `a`.
pub fn in_integer_span(a: &[Vec<i128>], w: &[i128]) -> bool {
    let (h, _, rank) = column_echelon(a);
    let mut rest: Vec<i128> = w.to_vec();
    let mut row = 0;
    for c in 0..rank {
        while row < h.len() && h[row][c] == 0 {
            if rest[row] != 0 {
                return false;
            }
            row += 1;
        }
        if row == h.len() {
            return false;
        }
        if rest[row] % h[row][c] != 0 {
            return false;
        }
        let f = rest[row] / h[row][c];
        for (r, x) in rest.iter_mut().enumerate() {
            *x -= f * h[r][c];
        }
        row += 1;
    }
    rest.iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i128]]) -> Vec<Vec<i128>> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn determinants_and_rank() {
        assert_eq!(det(&m(&[&[2, 1], &[1, 3]])), 5);
        assert_eq!(det(&m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 4]])), -4);
        assert_eq!(det(&m(&[&[1, 2], &[2, 4]])), 0);
        assert_eq!(rank(&m(&[&[1, 2, 3], &[2, 4, 6]])), 1);
        assert_eq!(rank(&m(&[&[1, 0, 1], &[0, 1, 1]])), 2);
    }

    #[test]
    fn kernels() {
        assert_eq!(integer_kernel(&m(&[&[1, 1]])), vec![vec![1, -1]]);
        assert_eq!(integer_kernel(&m(&[&[1, -1]])), vec![vec![1, 1]]);
        assert_eq!(
            integer_kernel(&m(&[&[1, 1, 1], &[0, 1, 2]])),
            vec![vec![1, -2, 1]]
        );
        assert!(integer_kernel(&m(&[&[3]])).is_empty());
    }

    #[test]
    fn span_membership() {
        let a = m(&[&[2, 4]]);
        assert!(in_integer_span(&a, &[6]));
        assert!(!in_integer_span(&a, &[3]));
        let b = m(&[&[1, 1], &[1, -1]]);
        assert!(in_integer_span(&b, &[2, 0]));
        assert!(!in_integer_span(&b, &[1, 0]));
    }

    #[test]
    fn normals_and_solves() {
        assert_eq!(normal_vector(&m(&[&[1, 1]]), 2), vec![1, -1]);
        let (x, d) = solve(&m(&[&[1, 1], &[0, 1]]), &[1, 1]).unwrap();
        assert_eq!((x, d), (vec![0, 1], 1));
        assert!(solve(&m(&[&[1, 2], &[2, 4]]), &[1, 1]).is_none());
    }
}
