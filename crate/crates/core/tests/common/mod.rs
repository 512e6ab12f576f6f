//! Independent cohomology counts used as oracles: dense elimination over a
//! prime field, and plain enumeration of cochains for small complexes.

#![allow(dead_code)]

use bordcat::complex::{SimplicialComplex, SimplicialPair};
use std::collections::HashSet;

/// Relative coboundary `C^k(X, A; ℤ) → C^{k+1}(X, A; ℤ)` rebuilt from vertex
/// lists: rows are relative `(k+1)`-simplices, columns relative `k`-simplices.
pub fn coboundary_rows(pair: &SimplicialPair, k: usize) -> (Vec<Vec<(usize, i64)>>, usize) {
    let x: &SimplicialComplex = &pair.total;
    let relative = |d: usize| -> Vec<usize> { (0..x.count(d)).filter(|&i| !pair.sub.contains(d, i)).collect() };
    let cols = relative(k);
    let col_of: std::collections::HashMap<usize, usize> = cols.iter().enumerate().map(|(c, &i)| (i, c)).collect();
    let rows = relative(k + 1)
        .into_iter()
        .map(|i| {
            let s = x.simplex(k + 1, i);
            (0..s.len())
                .filter_map(|j| {
                    let face: Vec<u32> = s.iter().enumerate().filter(|&(t, _)| t != j).map(|(_, &v)| v).collect();
                    let f = x.index_of(&face).expect("faces of simplices are simplices");
                    col_of.get(&f).map(|&c| (c, if j % 2 == 0 { 1 } else { -1 }))
                })
                .collect()
        })
        .collect();
    (rows, cols.len())
}

fn relative_count(pair: &SimplicialPair, k: usize) -> usize {
    (0..pair.total.count(k)).filter(|&i| !pair.sub.contains(k, i)).count()
}

/// Rank of a sparse integer matrix reduced mod a prime.
pub fn rank_mod_p(rows: &[Vec<(usize, i64)>], cols: usize, p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![0; cols];
            for &(c, x) in r {
                v[c] = (v[c] + x).rem_euclid(p);
            }
            v
        })
        .collect();
    let inv = |a: i64| (1..p).find(|b| a * b % p == 1).expect("nonzero mod a prime");
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, pivot);
        let s = inv(m[rank][c]);
        for x in m[rank].iter_mut() {
            *x = *x * s % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for j in c..cols {
                    m[r][j] = (m[r][j] - f * m[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim H^k(X, A; 𝔽_p)`.
pub fn betti_mod_p(pair: &SimplicialPair, k: usize, p: i64) -> usize {
    let (rows, cols) = coboundary_rows(pair, k);
    let rank_out = rank_mod_p(&rows, cols, p);
    let rank_in = if k == 0 {
        0
    } else {
        let (rows, cols) = coboundary_rows(pair, k - 1);
        rank_mod_p(&rows, cols, p)
    };
    relative_count(pair, k) - rank_out - rank_in
}

/// `|H^k(X, A; ℤ_n)|` by listing every cochain, or `None` if there are more
/// than `limit` cochains in degree `k − 1` or `k`.
pub fn enumerated_order(pair: &SimplicialPair, k: usize, n: u64, limit: u64) -> Option<u128> {
    let size = |d: usize| (n as u128).checked_pow(relative_count(pair, d) as u32).filter(|&s| s <= limit as u128);
    let all = size(k)?;
    let before = if k == 0 { 1 } else { size(k - 1)? };
    let apply = |rows: &[Vec<(usize, i64)>], x: &[i64]| -> Vec<i64> {
        rows.iter().map(|r| r.iter().map(|&(c, s)| s * x[c]).sum::<i64>().rem_euclid(n as i64)).collect()
    };
    let digits = |mut idx: u128, len: usize| -> Vec<i64> {
        (0..len)
            .map(|_| {
                let d = (idx % n as u128) as i64;
                idx /= n as u128;
                d
            })
            .collect()
    };
    let (rows, cols) = coboundary_rows(pair, k);
    let cocycles = (0..all).filter(|&i| apply(&rows, &digits(i, cols)).iter().all(|&x| x == 0)).count() as u128;
    let coboundaries = if k == 0 {
        1
    } else {
        let (rows, cols) = coboundary_rows(pair, k - 1);
        (0..before).map(|i| apply(&rows, &digits(i, cols))).collect::<HashSet<_>>().len() as u128
    };
    Some(cocycles / coboundaries)
}
