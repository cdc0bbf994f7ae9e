//! Embeddings of posets into the Boolean lattice, and their verification.
//!
//! An [`Embedding`] assigns every poset element a set of coordinates drawn
//! from `{1, ..., ground}`. It is an *induced copy* when `p <= q` holds
//! exactly when the set of `p` is contained in the set of `q`.

use std::collections::{BTreeMap, BTreeSet};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::Poset;

/// A set of 1-based coordinates.
pub type CoordSet = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("no set assigned to element `{0}`")]
    MissingAssignment(String),
    #[error("set assigned to unknown element `{0}`")]
    UnknownElement(String),
    #[error("coordinate {coord} is outside 1..={ground}")]
    CoordinateOutOfRange { coord: usize, ground: usize },
    #[error("duplicate coordinate {coord} in the set of `{element}`")]
    DuplicateCoordinate { element: String, coord: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Embedding {
    ground: usize,
    sets: Vec<CoordSet>,
}

impl Embedding {
    /// Checks that every coordinate lies in `1..=ground`. Distinctness of the
    /// sets is not required here; [`verify_induced`] reports it.
    pub fn new(ground: usize, sets: Vec<CoordSet>) -> Result<Self, EmbeddingError> {
        for set in &sets {
            if let Some(&coord) = set.iter().find(|&&c| c == 0 || c > ground) {
                return Err(EmbeddingError::CoordinateOutOfRange { coord, ground });
            }
        }
        Ok(Embedding { ground, sets })
    }

    /// Ground size taken as the largest coordinate used.
    pub fn from_sets(sets: Vec<CoordSet>) -> Self {
        let ground = sets
            .iter()
            .filter_map(|s| s.iter().next_back().copied())
            .max()
            .unwrap_or(0);
        Embedding { ground, sets }
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn sets(&self) -> &[CoordSet] {
        &self.sets
    }

    pub fn set(&self, element: usize) -> &CoordSet {
        &self.sets[element]
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Largest set size.
    pub fn height(&self) -> usize {
        self.sets.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    /// Number of coordinates actually used.
    pub fn width(&self) -> usize {
        self.union().len()
    }

    pub fn union(&self) -> CoordSet {
        self.sets.iter().flatten().copied().collect()
    }

    pub fn to_document(&self, poset: &Poset) -> EmbeddingDocument {
        EmbeddingDocument {
            ground: self.ground,
            sets: poset
                .elements()
                .iter()
                .zip(&self.sets)
                .map(|(id, s)| (id.clone(), s.iter().copied().collect()))
                .collect(),
        }
    }

    pub fn from_document(poset: &Poset, doc: &EmbeddingDocument) -> Result<Self, EmbeddingError> {
        for id in doc.sets.keys() {
            if poset.index_of(id).is_none() {
                return Err(EmbeddingError::UnknownElement(id.clone()));
            }
        }
        let mut sets = Vec::with_capacity(poset.len());
        for id in poset.elements() {
            let coords = doc
                .sets
                .get(id)
                .ok_or_else(|| EmbeddingError::MissingAssignment(id.clone()))?;
            let mut set = CoordSet::new();
            for &c in coords {
                if !set.insert(c) {
                    return Err(EmbeddingError::DuplicateCoordinate {
                        element: id.clone(),
                        coord: c,
                    });
                }
            }
            sets.push(set);
        }
        Embedding::new(doc.ground, sets)
    }
}

/// Wire form: `{"ground": w, "sets": {"<element-id>": [coords...]}}`, with
/// coordinates ascending and elements in poset order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingDocument {
    pub ground: usize,
    pub sets: IndexMap<String, Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// The lower set is contained in the upper set but the elements are not
    /// ordered that way.
    ContainedButNotBelow,
    /// The elements are ordered but the sets are not nested.
    BelowButNotContained,
}

/// A failed check on the ordered pair `(lower, upper)` of element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub lower: usize,
    pub upper: usize,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub height: usize,
    pub width: usize,
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Checks `p_i <= p_j  <=>  S_i ⊆ S_j` for every ordered pair `i != j`.
///
/// Two elements sharing a set always produce a violation, so a valid report
/// implies the assignment is injective.
pub fn verify_induced(poset: &Poset, emb: &Embedding) -> Result<EmbeddingReport, EmbeddingError> {
    if emb.len() != poset.len() {
        let missing = poset
            .elements()
            .get(emb.len())
            .cloned()
            .unwrap_or_else(|| format!("#{}", poset.len()));
        return Err(EmbeddingError::MissingAssignment(missing));
    }
    let mut violations = Vec::new();
    for i in 0..poset.len() {
        for j in 0..poset.len() {
            if i == j {
                continue;
            }
            let contained = emb.sets[i].is_subset(&emb.sets[j]);
            let below = poset.leq(i, j);
            let kind = match (below, contained) {
                (true, false) => ViolationKind::BelowButNotContained,
                (false, true) => ViolationKind::ContainedButNotBelow,
                _ => continue,
            };
            violations.push(Violation {
                lower: i,
                upper: j,
                kind,
            });
        }
    }
    Ok(EmbeddingReport {
        height: emb.height(),
        width: emb.width(),
        valid: violations.is_empty(),
        violations,
    })
}

/// Shorthand for a successful, valid [`verify_induced`].
pub fn is_induced_copy(poset: &Poset, emb: &Embedding) -> bool {
    verify_induced(poset, emb).is_ok_and(|r| r.valid)
}

/// Element `i` maps to its down-set, with element `j` on coordinate `j + 1`.
pub fn canonical_embedding(poset: &Poset) -> Embedding {
    let sets = (0..poset.len())
        .map(|i| poset.down_set(i).into_iter().map(|j| j + 1).collect())
        .collect();
    Embedding {
        ground: poset.len(),
        sets,
    }
}

/// An induced copy of height at most `|P| - 1` on ground `|P|`.
///
/// With a bottom element `b`, every down-set loses coordinate `b`, so `b`
/// maps to the empty set. Otherwise element `i` maps to the complement of
/// its up-set, `{j : p_i </= p_j}`; that set never contains `i`, which caps
/// its size at `|P| - 1`, and reverses containment of up-sets into the
/// original order.
pub fn reduced_canonical_embedding(poset: &Poset) -> Embedding {
    let n = poset.len();
    let sets: Vec<CoordSet> = match poset.bottom() {
        Some(b) => (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != b && poset.leq(j, i))
                    .map(|j| j + 1)
                    .collect()
            })
            .collect(),
        None => (0..n)
            .map(|i| (0..n).filter(|&j| !poset.leq(i, j)).map(|j| j + 1).collect())
            .collect(),
    };
    let emb = Embedding { ground: n, sets };
    assert!(
        is_induced_copy(poset, &emb),
        "internal error: reduced canonical embedding is not induced for {poset:?}"
    );
    emb
}

/// Relabels used coordinates to `1..=width` in order of first appearance,
/// visiting elements by index and each set in ascending order.
pub fn normalize(emb: &Embedding) -> Embedding {
    let mut relabel = BTreeMap::new();
    for set in &emb.sets {
        for &c in set {
            let next = relabel.len() + 1;
            relabel.entry(c).or_insert(next);
        }
    }
    let sets = emb
        .sets
        .iter()
        .map(|s| s.iter().map(|c| relabel[c]).collect())
        .collect();
    Embedding {
        ground: relabel.len(),
        sets,
    }
}

/// Builds a [`CoordSet`] from a slice; convenient in tests and examples.
pub fn coords(c: &[usize]) -> CoordSet {
    c.iter().copied().collect()
}
