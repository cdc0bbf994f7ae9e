//! Independent oracles and generators shared by the integration tests.
//! Nothing here calls the search, enumeration, or matching code under test.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use posetcube::embedding::{is_induced_copy, CoordSet, Embedding};
use posetcube::Poset;
use rand::seq::SliceRandom;
use rand::Rng;

/// All partial orders on `k` labeled points, one per isomorphism class,
/// found by brute force: every assignment of {none, i<j, j<i} to the pairs,
/// kept when transitive, deduplicated by the lexicographically least
/// relation over all `k!` relabelings.
pub fn naive_poset_classes(k: usize) -> Vec<Vec<Vec<bool>>> {
    naive_posets(k, true)
}

/// Every partial order on `k` labeled points.
pub fn naive_labeled_posets(k: usize) -> Vec<Vec<Vec<bool>>> {
    naive_posets(k, false)
}

fn naive_posets(k: usize, dedup: bool) -> Vec<Vec<Vec<bool>>> {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let perms = permutations(k);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let total = 3usize.pow(pairs.len() as u32);
    for code in 0..total {
        let mut rel = vec![vec![false; k]; k];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        let mut c = code;
        for &(i, j) in &pairs {
            match c % 3 {
                1 => rel[i][j] = true,
                2 => rel[j][i] = true,
                _ => {}
            }
            c /= 3;
        }
        let transitive = (0..k).all(|a| {
            (0..k).all(|b| (0..k).all(|c| !(rel[a][b] && rel[b][c]) || rel[a][c]))
        });
        if !transitive {
            continue;
        }
        if !dedup {
            out.push(rel);
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut bits = Vec::with_capacity(k * k);
                for a in 0..k {
                    for b in 0..k {
                        bits.push(rel[p[a]][p[b]]);
                    }
                }
                bits
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(rel);
        }
    }
    out
}

pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

pub fn poset_from_matrix(rel: &[Vec<bool>]) -> Poset {
    let names: Vec<String> = (1..=rel.len()).map(|i| format!("q{i}")).collect();
    Poset::from_relation(&names, rel).unwrap()
}

/// Does an induced copy exist using subsets of `[w]` of size at most `h`?
/// Tries every assignment, no pruning and no symmetry breaking.
pub fn naive_feasible(p: &Poset, w: usize, h: usize) -> bool {
    let subsets: Vec<CoordSet> = (0u32..1 << w)
        .filter(|m| m.count_ones() as usize <= h)
        .map(|m| (0..w).filter(|b| m >> b & 1 == 1).map(|b| b + 1).collect())
        .collect();
    let n = p.len();
    let mut choice = vec![0usize; n];
    loop {
        let ok = (0..n).all(|i| {
            (0..n).all(|j| {
                i == j || (p.leq(i, j) == subsets[choice[i]].is_subset(&subsets[choice[j]]))
            })
        });
        if ok {
            return true;
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == n {
                return false;
            }
            choice[pos] += 1;
            if choice[pos] < subsets.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// Largest matching by trying every injective choice.
pub fn brute_max_matching(adj: &[Vec<usize>], right: usize) -> usize {
    fn go(adj: &[Vec<usize>], i: usize, used: &mut Vec<bool>) -> usize {
        if i == adj.len() {
            return 0;
        }
        let mut best = go(adj, i + 1, used);
        for &r in &adj[i] {
            if !used[r] {
                used[r] = true;
                best = best.max(1 + go(adj, i + 1, used));
                used[r] = false;
            }
        }
        best
    }
    go(adj, 0, &mut vec![false; right])
}

/// Hall's condition by checking every left subset.
pub fn brute_hall_holds(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    (1u32..1 << n).all(|w| {
        let nbrs: BTreeSet<usize> = (0..n)
            .filter(|i| w >> i & 1 == 1)
            .flat_map(|i| adj[i].iter().copied())
            .collect();
        nbrs.len() >= w.count_ones() as usize
    })
}

/// Neighbourhood of a left subset.
pub fn neighbourhood(adj: &[Vec<usize>], subset: &[usize]) -> BTreeSet<usize> {
    subset.iter().flat_map(|&i| adj[i].iter().copied()).collect()
}

/// A random induced copy derived from `base` by validity-preserving moves:
/// copying a coordinate, adding a private coordinate to an element and
/// everything above it, or adding a coordinate to every set. The result is
/// then scattered over a larger ground by a random injection. With
/// `max_height` set, moves that would exceed it are skipped.
pub fn randomize_embedding<R: Rng>(
    p: &Poset,
    base: &Embedding,
    max_height: Option<usize>,
    rng: &mut R,
) -> Embedding {
    let mut sets: Vec<CoordSet> = base.sets().to_vec();
    let mut next = sets.iter().flatten().copied().max().unwrap_or(0) + 1;
    let moves = rng.gen_range(0..=4);
    for _ in 0..moves {
        let proposal: Vec<CoordSet> = match rng.gen_range(0..3) {
            0 => {
                let used: Vec<usize> = sets.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
                let Some(&c) = used.choose(rng) else { continue };
                sets.iter()
                    .map(|s| {
                        let mut s = s.clone();
                        if s.contains(&c) {
                            s.insert(next);
                        }
                        s
                    })
                    .collect()
            }
            1 if !p.is_empty() => {
                let e = rng.gen_range(0..p.len());
                sets.iter()
                    .enumerate()
                    .map(|(i, s)| {
                        let mut s = s.clone();
                        if p.leq(e, i) {
                            s.insert(next);
                        }
                        s
                    })
                    .collect()
            }
            _ => sets
                .iter()
                .map(|s| {
                    let mut s = s.clone();
                    s.insert(next);
                    s
                })
                .collect(),
        };
        let height = proposal.iter().map(BTreeSet::len).max().unwrap_or(0);
        if max_height.is_some_and(|h| height > h) {
            continue;
        }
        sets = proposal;
        next += 1;
    }

    let used: Vec<usize> = sets.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let ground = used.len() + rng.gen_range(0..=4);
    let mut targets: Vec<usize> = (1..=ground).collect();
    targets.shuffle(rng);
    let relabel: std::collections::HashMap<usize, usize> =
        used.iter().copied().zip(targets.iter().copied()).collect();
    let sets = sets
        .iter()
        .map(|s| s.iter().map(|c| relabel[c]).collect())
        .collect();
    let emb = Embedding::new(ground, sets).unwrap();
    assert!(is_induced_copy(p, &emb), "generator produced an invalid embedding");
    emb
}
