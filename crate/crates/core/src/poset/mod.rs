//! Finite posets: construction from cover relations, order queries, and
//! the handful of structural predicates the embedding algorithms rely on.
//!
//! Elements are addressed by their position in the input list (0-based).
//! Identifiers are kept only for I/O.

mod catalog;
mod iso;

pub use catalog::{named_poset, NamedPoset};
pub use iso::are_isomorphic;

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("cover relations force `{0}` <= `{1}` <= `{0}`")]
    CycleDetected(String, String),
    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("unknown catalog poset `{0}`")]
    UnknownName(String),
    #[error("bad parameter for `{name}`: {reason}")]
    BadParameter { name: String, reason: String },
}

/// A finite partially ordered set.
///
/// The order is stored as a dense reflexive relation matrix, so every
/// comparability query is a lookup.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    elements: Vec<String>,
    leq: Vec<bool>,
}

impl Poset {
    /// Builds the poset generated by `covers`, each pair `(a, b)` meaning `a < b`.
    ///
    /// The stored relation is the reflexive-transitive closure of the pairs,
    /// so the pairs need not be actual covers.
    pub fn from_cover_relations<S, T>(elements: &[S], covers: &[(T, T)]) -> Result<Self, PosetError>
    where
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let elements: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for e in &elements {
            if !seen.insert(e.as_str()) {
                return Err(PosetError::DuplicateElement(e.clone()));
            }
        }
        let n = elements.len();
        let index = |id: &str| {
            elements
                .iter()
                .position(|e| e == id)
                .ok_or_else(|| PosetError::UnknownElement(id.to_string()))
        };
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (a, b) in covers {
            let (a, b) = (index(a.as_ref())?, index(b.as_ref())?);
            leq[a * n + b] = true;
        }
        transitive_closure(&mut leq, n);
        for i in 0..n {
            for j in i + 1..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(PosetError::CycleDetected(
                        elements[i].clone(),
                        elements[j].clone(),
                    ));
                }
            }
        }
        Ok(Poset { elements, leq })
    }

    /// Builds a poset from a full relation matrix, `relation[i][j]` meaning
    /// element `i` is below-or-equal to element `j`. The matrix must already
    /// be a partial order; nothing is closed here.
    pub fn from_relation<S: AsRef<str>>(
        elements: &[S],
        relation: &[Vec<bool>],
    ) -> Result<Self, PosetError> {
        let n = elements.len();
        if relation.len() != n || relation.iter().any(|row| row.len() != n) {
            return Err(PosetError::NotPartialOrder(format!(
                "relation must be {n}x{n}"
            )));
        }
        let names: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for e in &names {
            if !seen.insert(e.as_str()) {
                return Err(PosetError::DuplicateElement(e.clone()));
            }
        }
        let leq: Vec<bool> = relation.iter().flatten().copied().collect();
        let poset = Poset {
            elements: names,
            leq,
        };
        poset.check_partial_order()?;
        Ok(poset)
    }

    fn check_partial_order(&self) -> Result<(), PosetError> {
        let n = self.len();
        for i in 0..n {
            if !self.leq(i, i) {
                return Err(PosetError::NotPartialOrder(format!(
                    "`{}` is not related to itself",
                    self.elements[i]
                )));
            }
            for j in 0..n {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return Err(PosetError::CycleDetected(
                        self.elements[i].clone(),
                        self.elements[j].clone(),
                    ));
                }
                for k in 0..n {
                    if self.leq(i, j) && self.leq(j, k) && !self.leq(i, k) {
                        return Err(PosetError::NotPartialOrder(format!(
                            "`{}` <= `{}` <= `{}` but not `{}` <= `{}`",
                            self.elements[i],
                            self.elements[j],
                            self.elements[k],
                            self.elements[i],
                            self.elements[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == id)
    }

    /// `true` iff element `i` is below-or-equal to element `j`.
    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// All `j` with `j <= i`, ascending. Always contains `i`.
    pub fn down_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq(j, i)).collect()
    }

    /// All `j` with `i <= j`, ascending. Always contains `i`.
    pub fn up_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq(i, j)).collect()
    }

    pub fn is_minimal(&self, i: usize) -> bool {
        (0..self.len()).all(|j| !self.lt(j, i))
    }

    pub fn is_maximal(&self, i: usize) -> bool {
        (0..self.len()).all(|j| !self.lt(i, j))
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_minimal(i)).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_maximal(i)).collect()
    }

    /// The unique minimum, if one element lies below every other.
    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&b| (0..self.len()).all(|j| self.leq(b, j)))
    }

    /// Every element is maximal or minimal, and none is both. An isolated
    /// element is both, so its presence disqualifies the poset.
    pub fn is_two_layered(&self) -> bool {
        (0..self.len()).all(|i| self.is_minimal(i) != self.is_maximal(i))
    }

    /// Topological order: repeatedly take the lowest-index element whose
    /// strict predecessors have all been taken.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let next = (0..n)
                .find(|&i| !placed[i] && (0..n).all(|j| placed[j] || !self.lt(j, i)))
                .expect("a finite poset always has an unplaced minimal element");
            placed[next] = true;
            order.push(next);
        }
        order
    }

    /// Hasse diagram edges `(a, b)` with `a < b` and nothing strictly between,
    /// ordered by `(a, b)`.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Number of strictly comparable ordered pairs.
    pub fn strict_relation_count(&self) -> usize {
        self.leq.iter().filter(|&&b| b).count() - self.len()
    }

    /// Length of the longest chain ending at `i`, counted in strict steps.
    pub fn rank(&self, i: usize) -> usize {
        let order = self.linear_extension();
        let mut rank = vec![0usize; self.len()];
        for &x in &order {
            rank[x] = (0..self.len())
                .filter(|&y| self.lt(y, x))
                .map(|y| rank[y] + 1)
                .max()
                .unwrap_or(0);
            if x == i {
                break;
            }
        }
        rank[i]
    }

    /// The same order with new identifiers.
    pub fn with_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Self, PosetError> {
        let rel: Vec<Vec<bool>> = (0..self.len())
            .map(|i| (0..self.len()).map(|j| self.leq(i, j)).collect())
            .collect();
        Poset::from_relation(names, &rel)
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .cover_pairs()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.elements[a], self.elements[b]))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.elements)
            .field("covers", &covers)
            .finish()
    }
}

/// Floyd-Warshall style closure on a flat `n x n` boolean matrix.
pub(crate) fn transitive_closure(rel: &mut [bool], n: usize) {
    for k in 0..n {
        for i in 0..n {
            if !rel[i * n + k] {
                continue;
            }
            for j in 0..n {
                if rel[k * n + j] {
                    rel[i * n + j] = true;
                }
            }
        }
    }
}
