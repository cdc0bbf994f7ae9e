use std::collections::HashMap;

use super::SearchError;
use crate::poset::{are_isomorphic, Poset};

pub const MAX_ENUMERATION_SIZE: usize = 7;

/// One poset per isomorphism class of `k`-element posets, elements named
/// `p1..pk`.
///
/// Classes of size `k` come from classes of size `k - 1` by adding a new
/// last element with a down-set `D` and up-set `U` (`D` down-closed, `U`
/// up-closed, every member of `D` below every member of `U`), then dropping
/// anything isomorphic to an earlier result. The order is deterministic.
pub fn enumerate_posets(k: usize) -> Result<Vec<Poset>, SearchError> {
    if k == 0 || k > MAX_ENUMERATION_SIZE {
        return Err(SearchError::SizeTooLarge(k));
    }
    let mut level: Vec<Vec<u32>> = vec![vec![0b1]];
    for size in 2..=k {
        level = extend_level(&level, size - 1);
    }
    Ok(level.iter().map(|down| to_poset(down)).collect())
}

/// `down[i]` is the bitmask of elements `<= i`, including `i`.
fn to_poset(down: &[u32]) -> Poset {
    let n = down.len();
    let names: Vec<String> = (1..=n).map(|i| format!("p{i}")).collect();
    let rel: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| down[j] >> i & 1 == 1).collect())
        .collect();
    Poset::from_relation(&names, &rel).expect("extension preserves partial order")
}

fn extend_level(level: &[Vec<u32>], n: usize) -> Vec<Vec<u32>> {
    let mut classes: Vec<Vec<u32>> = Vec::new();
    let mut posets: Vec<Poset> = Vec::new();
    let mut buckets: HashMap<Vec<(u32, u32)>, Vec<usize>> = HashMap::new();
    for down in level {
        let up: Vec<u32> = (0..n)
            .map(|i| (0..n).filter(|&j| down[j] >> i & 1 == 1).fold(0, |m, j| m | 1 << j))
            .collect();
        for d in 0u32..1 << n {
            if (0..n).any(|i| d >> i & 1 == 1 && down[i] & !d != 0) {
                continue;
            }
            for u in 0u32..1 << n {
                if u & d != 0 {
                    continue;
                }
                if (0..n).any(|i| u >> i & 1 == 1 && up[i] & !u != 0) {
                    continue;
                }
                // every element of d must lie below every element of u
                if (0..n).any(|j| u >> j & 1 == 1 && down[j] & d != d) {
                    continue;
                }
                let mut next: Vec<u32> = down
                    .iter()
                    .enumerate()
                    .map(|(j, &m)| if u >> j & 1 == 1 { m | d | 1 << n } else { m })
                    .collect();
                next.push(d | 1 << n);
                let key = invariant(&next);
                let candidate = to_poset(&next);
                let bucket = buckets.entry(key).or_default();
                if bucket.iter().any(|&c| are_isomorphic(&posets[c], &candidate)) {
                    continue;
                }
                bucket.push(classes.len());
                classes.push(next);
                posets.push(candidate);
            }
        }
    }
    classes
}

fn invariant(down: &[u32]) -> Vec<(u32, u32)> {
    let n = down.len();
    let mut sig: Vec<(u32, u32)> = (0..n)
        .map(|i| {
            let ups = (0..n).filter(|&j| down[j] >> i & 1 == 1).count() as u32;
            (down[i].count_ones(), ups)
        })
        .collect();
    sig.sort_unstable();
    sig
}
