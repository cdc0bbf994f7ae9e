//! Width compression of induced embeddings.
//!
//! Both rewrites start from a decomposition of the embedded family into a
//! *deficient* part `X` (its sets use fewer coordinates than it has members)
//! and a remainder `Y` that admits a system of distinct representatives
//! `f(B) ∈ B` avoiding the coordinates of `X`. Every member of `Y` then only
//! needs its representative coordinate, which bounds the output width by
//! `|X| + |Y| = |P|` without growing any set.

use std::collections::{BTreeMap, BTreeSet};

use indexmap::IndexMap;
use serde::Serialize;
use thiserror::Error;

use crate::embedding::{normalize, verify_induced, CoordSet, Embedding, EmbeddingError};
use crate::matching::{hall_violator, maximum_matching, BipartiteGraph};
use crate::poset::Poset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompressionError {
    #[error("input is not an induced copy of the poset")]
    InvalidEmbedding,
    #[error("poset is not two-layered")]
    NotTwoLayered,
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Which elements may enter the deficient family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    AllElements,
    MinimalElementsOnly,
}

/// The decomposition behind a compression, in the input's coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CompressionTrace {
    /// Deficient family (element indices).
    pub deficient: BTreeSet<usize>,
    /// In-scope elements outside the deficient family.
    pub rest: BTreeSet<usize>,
    /// Coordinates used by the deficient family.
    pub deficient_coords: CoordSet,
    /// Coordinates used by in-scope sets but not by the deficient family.
    pub free_coords: CoordSet,
    /// Representative coordinate for each member of `rest`.
    pub representative: BTreeMap<usize, usize>,
    /// Fresh coordinates added to maximal elements (two-layer rewrite only).
    pub fresh: BTreeMap<usize, usize>,
}

/// JSON form of a trace, with element identifiers in place of indices.
#[derive(Debug, Clone, Serialize)]
pub struct TraceDocument {
    #[serde(rename = "X")]
    pub x: Vec<String>,
    #[serde(rename = "Y")]
    pub y: Vec<String>,
    #[serde(rename = "G")]
    pub g: Vec<usize>,
    #[serde(rename = "G_prime")]
    pub g_prime: Vec<usize>,
    pub f: IndexMap<String, usize>,
    pub fresh: IndexMap<String, usize>,
}

impl CompressionTrace {
    pub fn to_document(&self, poset: &Poset) -> TraceDocument {
        let name = |i: &usize| poset.name(*i).to_string();
        TraceDocument {
            x: self.deficient.iter().map(name).collect(),
            y: self.rest.iter().map(name).collect(),
            g: self.deficient_coords.iter().copied().collect(),
            g_prime: self.free_coords.iter().copied().collect(),
            f: self.representative.iter().map(|(k, v)| (name(k), *v)).collect(),
            fresh: self.fresh.iter().map(|(k, v)| (name(k), *v)).collect(),
        }
    }

    /// Checks the properties the rewrites depend on: the deficient family is
    /// empty or uses fewer coordinates than members, and `f` is an injective
    /// choice of free coordinates with `f(B) ∈ B` on all of `rest`.
    pub fn check(&self, emb: &Embedding) -> Result<(), CompressionError> {
        let fail = |m: &str| Err(CompressionError::Invariant(m.to_string()));
        if !self.deficient.is_empty() && self.deficient_coords.len() >= self.deficient.len() {
            return fail("deficient family is not deficient");
        }
        let union: CoordSet = self
            .deficient
            .iter()
            .flat_map(|&a| emb.set(a).iter().copied())
            .collect();
        if union != self.deficient_coords {
            return fail("G is not the union of the deficient family");
        }
        if self.representative.keys().copied().collect::<BTreeSet<_>>() != self.rest {
            return fail("representatives do not cover Y exactly");
        }
        let mut image = BTreeSet::new();
        for (&b, &x) in &self.representative {
            if !image.insert(x) {
                return fail("representatives are not distinct");
            }
            if !emb.set(b).contains(&x) || !self.free_coords.contains(&x) {
                return fail("representative outside B ∩ G'");
            }
        }
        Ok(())
    }
}

fn require_induced(poset: &Poset, emb: &Embedding) -> Result<(), CompressionError> {
    if verify_induced(poset, emb)?.valid {
        Ok(())
    } else {
        Err(CompressionError::InvalidEmbedding)
    }
}

/// Grows a deficient family until the remaining in-scope sets have a system
/// of distinct representatives outside it.
///
/// Starts from `X = ∅`. While the maximum matching from `Y` to the free
/// coordinates leaves some member unmatched, the Hall violator `S` of that
/// matching is merged into `X`. Since `|N(S)| < |S|` and `N(S)` is exactly
/// the new coordinates `S` brings in, `X ∪ S` stays deficient. The loop ends
/// with a `Y`-saturating matching, returned as the representatives.
pub fn extract_deficient_family(
    poset: &Poset,
    emb: &Embedding,
    scope: Scope,
) -> Result<CompressionTrace, CompressionError> {
    require_induced(poset, emb)?;
    let pool: Vec<usize> = poset
        .linear_extension()
        .into_iter()
        .filter(|&i| scope == Scope::AllElements || poset.is_minimal(i))
        .collect();
    let pool_coords: CoordSet = pool
        .iter()
        .flat_map(|&i| emb.set(i).iter().copied())
        .collect();

    let mut deficient = BTreeSet::new();
    loop {
        let deficient_coords: CoordSet = deficient
            .iter()
            .flat_map(|&a: &usize| emb.set(a).iter().copied())
            .collect();
        let free: Vec<usize> = pool_coords.difference(&deficient_coords).copied().collect();
        let rest: Vec<usize> = pool
            .iter()
            .copied()
            .filter(|i| !deficient.contains(i))
            .collect();
        let edges = rest.iter().flat_map(|&b| {
            emb.set(b)
                .iter()
                .filter(|x| !deficient_coords.contains(x))
                .map(move |&x| (b, x))
        });
        let graph = BipartiteGraph::new(rest.clone(), free.clone(), edges)
            .expect("edges only join declared vertices");
        let matching = maximum_matching(&graph);
        let violator = hall_violator(&graph, &matching)
            .map_err(|e| CompressionError::Invariant(e.to_string()))?;
        match violator {
            Some(s) => deficient.extend(s),
            None => {
                let trace = CompressionTrace {
                    deficient,
                    rest: rest.into_iter().collect(),
                    deficient_coords,
                    free_coords: free.into_iter().collect(),
                    representative: matching.pairs,
                    fresh: BTreeMap::new(),
                };
                trace.check(emb)?;
                return Ok(trace);
            }
        }
    }
}

/// Rewrites an induced copy into one of width at most `|P|`, shrinking every
/// set: `A ↦ (A ∩ G) ∪ {f(B) : B ∈ Y, B ⊆ A}`. The output is normalized; the
/// trace keeps the input's coordinates.
pub fn compress_general(
    poset: &Poset,
    emb: &Embedding,
) -> Result<(Embedding, CompressionTrace), CompressionError> {
    let (raw, trace) = compress_general_raw(poset, emb)?;
    Ok((normalize(&raw), trace))
}

/// [`compress_general`] without the final relabeling, so the output can be
/// compared set-by-set with the input.
pub fn compress_general_raw(
    poset: &Poset,
    emb: &Embedding,
) -> Result<(Embedding, CompressionTrace), CompressionError> {
    let trace = extract_deficient_family(poset, emb, Scope::AllElements)?;
    let sets: Vec<CoordSet> = (0..poset.len())
        .map(|a| {
            let mut s: CoordSet = emb
                .set(a)
                .intersection(&trace.deficient_coords)
                .copied()
                .collect();
            for (&b, &x) in &trace.representative {
                if emb.set(b).is_subset(emb.set(a)) {
                    s.insert(x);
                }
            }
            s
        })
        .collect();
    let out = Embedding::new(emb.ground(), sets)?;

    for a in 0..poset.len() {
        if !out.set(a).is_subset(emb.set(a)) {
            return Err(CompressionError::Invariant(format!(
                "image of `{}` is not contained in its input set",
                poset.name(a)
            )));
        }
    }
    check_output(poset, &out, emb.height())?;
    Ok((out, trace))
}

fn check_output(poset: &Poset, out: &Embedding, height_cap: usize) -> Result<(), CompressionError> {
    if !verify_induced(poset, out)?.valid {
        return Err(CompressionError::Invariant(
            "output is not an induced copy".into(),
        ));
    }
    if out.width() > poset.len() {
        return Err(CompressionError::Invariant(format!(
            "output width {} exceeds |P| = {}",
            out.width(),
            poset.len()
        )));
    }
    if out.height() > height_cap {
        return Err(CompressionError::Invariant(format!(
            "output height {} exceeds input height {}",
            out.height(),
            height_cap
        )));
    }
    Ok(())
}

/// The rewrite specialised to two-layered posets: minimal elements outside
/// the deficient family become singletons `{f(B)}`, and each maximal element
/// collects what lies below it, plus a fresh coordinate when that collection
/// would be a singleton, coincide with a deficient set, or sit inside another
/// maximal element's collection.
///
/// With a single minimal element the optimum is written directly: the
/// minimal element gets the empty set and the maximals get `{1}, ..., {r}`.
pub fn compress_two_layer(
    poset: &Poset,
    emb: &Embedding,
) -> Result<(Embedding, CompressionTrace), CompressionError> {
    if !poset.is_two_layered() {
        return Err(CompressionError::NotTwoLayered);
    }
    require_induced(poset, emb)?;
    let minimals = poset.minimal_elements();
    let maximals = poset.maximal_elements();

    if minimals.len() == 1 {
        let mut sets = vec![CoordSet::new(); poset.len()];
        let mut trace = CompressionTrace::default();
        for (k, &a) in maximals.iter().enumerate() {
            sets[a] = CoordSet::from([k + 1]);
            trace.fresh.insert(a, k + 1);
        }
        let out = Embedding::from_sets(sets);
        check_output(poset, &out, emb.height())?;
        return Ok((out, trace));
    }

    let mut trace = extract_deficient_family(poset, emb, Scope::MinimalElementsOnly)?;
    let mut sets = vec![CoordSet::new(); poset.len()];
    for &b in &trace.deficient {
        sets[b] = emb.set(b).clone();
    }
    for (&b, &x) in &trace.representative {
        sets[b] = CoordSet::from([x]);
    }

    let collected: Vec<CoordSet> = maximals
        .iter()
        .map(|&a| {
            let mut c = CoordSet::new();
            for (&b, &x) in &trace.representative {
                if emb.set(b).is_subset(emb.set(a)) {
                    c.insert(x);
                }
            }
            for &b in &trace.deficient {
                if emb.set(b).is_subset(emb.set(a)) {
                    c.extend(emb.set(b).iter().copied());
                }
            }
            c
        })
        .collect();

    let minimal_coords: CoordSet = minimals
        .iter()
        .flat_map(|&b| emb.set(b).iter().copied())
        .collect();
    let mut taken: CoordSet = minimal_coords
        .iter()
        .copied()
        .chain(trace.representative.values().copied())
        .collect();
    let mut next_fresh = 1;
    for (k, &a) in maximals.iter().enumerate() {
        let c = &collected[k];
        let needs_fresh = c.len() == 1
            || trace.deficient.iter().any(|&b| emb.set(b) == c)
            || collected
                .iter()
                .enumerate()
                .any(|(j, other)| j != k && c.is_subset(other));
        let mut set = c.clone();
        if needs_fresh {
            while taken.contains(&next_fresh) {
                next_fresh += 1;
            }
            taken.insert(next_fresh);
            set.insert(next_fresh);
            trace.fresh.insert(a, next_fresh);
        }
        if set.len() > emb.set(a).len() {
            return Err(CompressionError::Invariant(format!(
                "image of maximal `{}` grew from {} to {}",
                poset.name(a),
                emb.set(a).len(),
                set.len()
            )));
        }
        sets[a] = set;
    }

    let out = normalize(&Embedding::from_sets(sets));
    check_output(poset, &out, emb.height())?;
    Ok((out, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::coords;
    use crate::poset::{named_poset, NamedPoset};

    fn emb(sets: &[&[usize]]) -> Embedding {
        Embedding::from_sets(sets.iter().map(|s| coords(s)).collect())
    }

    fn sets(e: &Embedding) -> Vec<Vec<usize>> {
        e.sets().iter().map(|s| s.iter().copied().collect()).collect()
    }

    #[test]
    fn antichain_pairs_shrink_to_singletons() {
        let p = named_poset(NamedPoset::Antichain, Some(3)).unwrap();
        let e = emb(&[&[1, 2], &[3, 4], &[5, 6]]);
        let trace = extract_deficient_family(&p, &e, Scope::AllElements).unwrap();
        assert!(trace.deficient.is_empty());
        assert_eq!(trace.representative, BTreeMap::from([(0, 1), (1, 3), (2, 5)]));

        let (raw, _) = compress_general_raw(&p, &e).unwrap();
        assert_eq!(sets(&raw), vec![vec![1], vec![3], vec![5]]);
        let (out, _) = compress_general(&p, &e).unwrap();
        assert_eq!(sets(&out), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(out.width(), 3);
    }

    #[test]
    fn chain_keeps_its_sets() {
        let p = named_poset(NamedPoset::Chain, Some(3)).unwrap();
        let e = emb(&[&[], &[1], &[1, 2]]);
        let trace = extract_deficient_family(&p, &e, Scope::AllElements).unwrap();
        // the empty set alone is already deficient
        assert!(trace.deficient.contains(&0));
        trace.check(&e).unwrap();
        let (out, _) = compress_general(&p, &e).unwrap();
        assert_eq!(out, e);
    }

    #[test]
    fn v2_representatives() {
        let p = named_poset(NamedPoset::V, Some(2)).unwrap();
        let e = emb(&[&[1], &[1, 2], &[1, 3]]);
        let trace = extract_deficient_family(&p, &e, Scope::AllElements).unwrap();
        assert!(trace.deficient.is_empty());
        assert_eq!(trace.representative, BTreeMap::from([(0, 1), (1, 2), (2, 3)]));
    }

    #[test]
    fn butterfly_over_wide_ground() {
        let p = named_poset(NamedPoset::Butterfly, None).unwrap();
        let e = Embedding::new(
            9,
            vec![coords(&[1]), coords(&[2]), coords(&[1, 2, 3]), coords(&[1, 2, 9])],
        )
        .unwrap();
        let (out, trace) = compress_general(&p, &e).unwrap();
        assert!(trace.deficient.is_empty());
        assert_eq!(
            trace.representative,
            BTreeMap::from([(0, 1), (1, 2), (2, 3), (3, 9)])
        );
        assert_eq!(sets(&out), vec![vec![1], vec![2], vec![1, 2, 3], vec![1, 2, 4]]);
        assert_eq!(out.width(), 4);
    }

    #[test]
    fn single_point() {
        let p = named_poset(NamedPoset::Chain, Some(1)).unwrap();
        let (out, trace) = compress_general(&p, &emb(&[&[4, 5]])).unwrap();
        assert_eq!(trace.representative, BTreeMap::from([(0, 4)]));
        assert_eq!(out.width(), 1);
        let (out, trace) = compress_general(&p, &emb(&[&[]])).unwrap();
        assert_eq!(trace.deficient, BTreeSet::from([0]));
        assert_eq!(out.width(), 0);
    }

    #[test]
    fn rejects_invalid_input() {
        let p = named_poset(NamedPoset::Antichain, Some(2)).unwrap();
        assert_eq!(
            compress_general(&p, &emb(&[&[1], &[1, 2]])),
            Err(CompressionError::InvalidEmbedding)
        );
    }

    #[test]
    fn two_layer_v3_direct_optimum() {
        let p = named_poset(NamedPoset::V, Some(3)).unwrap();
        let e = emb(&[&[5], &[5, 6], &[5, 7], &[5, 8]]);
        let (out, _) = compress_two_layer(&p, &e).unwrap();
        assert_eq!(sets(&out), vec![vec![], vec![1], vec![2], vec![3]]);
        assert_eq!((out.height(), out.width()), (1, 3));
    }

    #[test]
    fn two_layer_butterfly_gets_fresh_coordinates() {
        let p = named_poset(NamedPoset::Butterfly, None).unwrap();
        let e = emb(&[&[1], &[3], &[1, 3, 7], &[1, 3, 9]]);
        let (out, trace) = compress_two_layer(&p, &e).unwrap();
        assert!(trace.deficient.is_empty());
        assert_eq!(trace.representative, BTreeMap::from([(0, 1), (1, 3)]));
        assert_eq!(trace.fresh, BTreeMap::from([(2, 2), (3, 4)]));
        assert_eq!(sets(&out), vec![vec![1], vec![2], vec![1, 2, 3], vec![1, 2, 4]]);
        assert_eq!((out.height(), out.width()), (3, 4));
    }

    #[test]
    fn two_layer_singleton_rule() {
        let p = Poset::from_cover_relations(
            &["B1", "B2", "A1", "A2"],
            &[("B1", "A1"), ("B2", "A2")],
        )
        .unwrap();
        let e = emb(&[&[1], &[2], &[1, 5], &[2, 6]]);
        let (out, trace) = compress_two_layer(&p, &e).unwrap();
        assert_eq!(trace.representative, BTreeMap::from([(0, 1), (1, 2)]));
        assert_eq!(trace.fresh, BTreeMap::from([(2, 3), (3, 4)]));
        assert_eq!((out.height(), out.width()), (2, 4));
    }

    #[test]
    fn two_layer_rejects_chain() {
        let p = named_poset(NamedPoset::Chain, Some(3)).unwrap();
        let e = emb(&[&[], &[1], &[1, 2]]);
        assert_eq!(
            compress_two_layer(&p, &e),
            Err(CompressionError::NotTwoLayered)
        );
    }

    #[test]
    fn trace_document_keys() {
        let p = named_poset(NamedPoset::Butterfly, None).unwrap();
        let e = emb(&[&[1], &[3], &[1, 3, 7], &[1, 3, 9]]);
        let (_, trace) = compress_two_layer(&p, &e).unwrap();
        let json = serde_json::to_string(&trace.to_document(&p)).unwrap();
        assert_eq!(
            json,
            r#"{"X":[],"Y":["B1","B2"],"G":[],"G_prime":[1,3],"f":{"B1":1,"B2":3},"fresh":{"A1":2,"A2":4}}"#
        );
    }
}
