//! Dense polynomials over `F_p`, coefficients little-endian.

use crate::util::mod_inverse;

pub(crate) fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero `g`.
pub(crate) fn rem(a: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let g = trim(g.to_vec());
    let dg = g.len() - 1;
    let lead_inv = mod_inverse(g[dg], p).expect("nonzero leading coefficient");
    let mut r = trim(a.to_vec());
    while r.len() > dg {
        let dr = r.len() - 1;
        let factor = r[dr] * lead_inv % p;
        let shift = dr - dg;
        for (k, &gk) in g.iter().enumerate() {
            r[shift + k] = (r[shift + k] + p - factor * gk % p) % p;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mul_mod(a: &[u64], b: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), g, p)
}

fn pow_mod(base: &[u64], mut e: u64, g: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rem(base, g, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, g, p);
        }
        b = mul_mod(&b, &b, g, p);
        e >>= 1;
    }
    acc
}

/// Ben-Or test: `g` (monic, degree `d`) is irreducible iff
/// `gcd(x^{p^i} − x, g) = 1` for `1 ≤ i ≤ d/2`.
pub(crate) fn is_irreducible(g: &[u64], p: u64) -> bool {
    let g = trim(g.to_vec());
    let d = g.len().saturating_sub(1);
    if d == 0 {
        return false;
    }
    let x = vec![0u64, 1];
    let mut frob = rem(&x, &g, p);
    for _ in 1..=d / 2 {
        frob = pow_mod(&frob, p, &g, p);
        let h = sub(&frob, &x, p);
        if gcd(&h, &g, p).len() > 1 {
            return false;
        }
    }
    true
}
