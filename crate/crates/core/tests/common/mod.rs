//! Small, deliberately naive exact linear algebra used as a reference in tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use ncg_core::Q;
use num_traits::Zero;

/// Rank of a family of sparse vectors by plain dense Gaussian elimination.
pub fn rank_of<K: Ord + Clone>(vectors: &[BTreeMap<K, Q>]) -> usize {
    let mut keys: Vec<K> = vectors.iter().flat_map(|v| v.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let col = |k: &K| keys.binary_search(k).unwrap();
    let mut rows: Vec<Vec<Q>> = vectors
        .iter()
        .map(|v| {
            let mut r = vec![Q::zero(); keys.len()];
            for (k, c) in v {
                r[col(k)] = c.clone();
            }
            r
        })
        .collect();
    dense_rank(&mut rows)
}

pub fn dense_rank(rows: &mut [Vec<Q>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c].clone() / pivot.clone();
                for k in c..ncols {
                    let t = rows[rank][k].clone() * f.clone();
                    rows[r][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}
