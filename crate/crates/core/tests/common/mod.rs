//! Independent reference implementations used by the integration tests.
//!
//! Nothing here calls into the statistics, q-series or enumeration code of
//! the library; only `Relation::contains` is shared.

#![allow(dead_code)]

use mahonian::Relation;

/// Every word with `alpha[i]` copies of letter `i + 1`, by recursion on the first letter.
pub fn all_words(alpha: &[u32]) -> Vec<Vec<u32>> {
    fn go(left: &mut [u32], prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left.iter().all(|&c| c == 0) {
            out.push(prefix.clone());
            return;
        }
        for x in 0..left.len() {
            if left[x] > 0 {
                left[x] -= 1;
                prefix.push(x as u32 + 1);
                go(left, prefix, out);
                prefix.pop();
                left[x] += 1;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut alpha.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Every word of length `m` over `1..=n`.
pub fn all_strings(n: u32, m: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|w| {
                (1..=n).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn inv(u: &Relation, w: &[u32]) -> u64 {
    let mut s = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if u.contains(w[i], w[j]) {
                s += 1;
            }
        }
    }
    s
}

pub fn maj(u: &Relation, w: &[u32]) -> u64 {
    (1..w.len()).filter(|&i| u.contains(w[i - 1], w[i])).map(|i| i as u64).sum()
}

/// Selection sort moving the rightmost copy of the current maximum.
pub fn sor_rightmost(u: &Relation, w: &[u32]) -> u64 {
    let mut w = w.to_vec();
    let mut total = 0;
    for i in (0..w.len()).rev() {
        let mut j = 0;
        for p in 0..=i {
            if w[p] >= w[j] {
                j = p;
            }
        }
        for h in j + 1..=i {
            if u.contains(w[j], w[h]) {
                total += 1;
            }
        }
        w.swap(j, i);
    }
    total
}

/// Coefficient vector of the statistic's distribution, trailing zeros dropped.
pub fn histogram(values: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut h = Vec::new();
    for v in values {
        let v = v as usize;
        if h.len() <= v {
            h.resize(v + 1, 0);
        }
        h[v] += 1;
    }
    while h.last() == Some(&0) {
        h.pop();
    }
    h
}

fn mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut c = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

/// Exact division by a monic-at-constant polynomial (`b[0] = 1`).
fn div(a: &[i128], b: &[i128]) -> Vec<i128> {
    assert_eq!(b[0], 1);
    let mut rem = a.to_vec();
    let mut q = vec![0; a.len() - b.len() + 1];
    for i in 0..q.len() {
        q[i] = rem[i];
        for (j, y) in b.iter().enumerate() {
            rem[i + j] -= q[i] * y;
        }
    }
    assert!(rem.iter().all(|&r| r == 0), "inexact division");
    q
}

fn q_factorial(n: u64) -> Vec<i128> {
    (1..=n).fold(vec![1], |acc, k| mul(&acc, &vec![1; k as usize]))
}

/// `[Σ parts]_q! / ∏ [part]_q!` by polynomial division.
pub fn q_multinomial(parts: &[u64]) -> Vec<u64> {
    let total: u64 = parts.iter().sum();
    let den = parts.iter().fold(vec![1], |acc, &p| mul(&acc, &q_factorial(p)));
    div(&q_factorial(total), &den).into_iter().map(|c| c as u64).collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `U` and its complement are both transitive, checked over all triples.
pub fn is_bipartitional_by_definition(u: &Relation) -> bool {
    let n = u.n() as u32;
    let trans = |r: &dyn Fn(u32, u32) -> bool| {
        (1..=n).all(|x| (1..=n).all(|y| (1..=n).all(|z| !(r(x, y) && r(y, z)) || r(x, z))))
    };
    trans(&|x, y| u.contains(x, y)) && trans(&|x, y| !u.contains(x, y))
}
