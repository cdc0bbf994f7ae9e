//! Maximum bipartite matching by augmenting paths, plus the Hall-violator
//! certificate extracted from a maximum matching.
//!
//! Everything here is deterministic. Left vertices are processed in declared
//! order and right neighbours are tried in ascending order, so the same graph
//! always yields the same matching.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("edge references an undeclared vertex")]
    UndeclaredVertex,
    #[error("matching is not a set of disjoint graph edges")]
    NotAMatching,
    #[error("matching is not maximum: an augmenting path exists")]
    NotMaximum,
}

/// A bipartite graph with ordered vertex lists. Adjacency is stored by
/// position and kept sorted by right id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph<L, R> {
    left: Vec<L>,
    right: Vec<R>,
    adjacency: Vec<Vec<usize>>,
}

/// Left id -> right id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching<L: Ord, R> {
    pub pairs: BTreeMap<L, R>,
}

impl<L: Ord, R> Matching<L, R> {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

impl<L, R> BipartiteGraph<L, R>
where
    L: Ord + Clone,
    R: Ord + Clone,
{
    pub fn new(
        left: Vec<L>,
        right: Vec<R>,
        edges: impl IntoIterator<Item = (L, R)>,
    ) -> Result<Self, MatchingError> {
        let mut adjacency = vec![BTreeSet::new(); left.len()];
        for (l, r) in edges {
            let li = left.iter().position(|x| *x == l);
            let ri = right.iter().position(|x| *x == r);
            match (li, ri) {
                (Some(li), Some(ri)) => {
                    adjacency[li].insert(ri);
                }
                _ => return Err(MatchingError::UndeclaredVertex),
            }
        }
        let adjacency = adjacency
            .into_iter()
            .map(|nbrs| {
                let mut v: Vec<usize> = nbrs.into_iter().collect();
                v.sort_by(|&a, &b| right[a].cmp(&right[b]));
                v
            })
            .collect();
        Ok(BipartiteGraph {
            left,
            right,
            adjacency,
        })
    }

    pub fn left(&self) -> &[L] {
        &self.left
    }

    pub fn right(&self) -> &[R] {
        &self.right
    }

    /// Right ids adjacent to the given left position, ascending.
    pub fn neighbours(&self, left_pos: usize) -> impl Iterator<Item = &R> + '_ {
        self.adjacency[left_pos].iter().map(|&r| &self.right[r])
    }

    /// `N(W)` for a set of left ids.
    pub fn neighbourhood<'a>(&self, w: impl IntoIterator<Item = &'a L>) -> BTreeSet<R>
    where
        L: 'a,
    {
        let mut out = BTreeSet::new();
        for l in w {
            if let Some(li) = self.left.iter().position(|x| x == l) {
                out.extend(self.neighbours(li).cloned());
            }
        }
        out
    }

    fn positions(&self, m: &Matching<L, R>) -> Result<Vec<Option<usize>>, MatchingError> {
        let mut owner: Vec<Option<usize>> = vec![None; self.right.len()];
        for (l, r) in &m.pairs {
            let li = self.left.iter().position(|x| x == l);
            let ri = self.right.iter().position(|x| x == r);
            let (Some(li), Some(ri)) = (li, ri) else {
                return Err(MatchingError::NotAMatching);
            };
            if owner[ri].is_some() || !self.adjacency[li].contains(&ri) {
                return Err(MatchingError::NotAMatching);
            }
            owner[ri] = Some(li);
        }
        Ok(owner)
    }
}

/// Kuhn's algorithm: one depth-first augmenting search per left vertex.
pub fn maximum_matching<L, R>(g: &BipartiteGraph<L, R>) -> Matching<L, R>
where
    L: Ord + Clone,
    R: Ord + Clone,
{
    let mut owner: Vec<Option<usize>> = vec![None; g.right.len()];
    for l in 0..g.left.len() {
        let mut visited = vec![false; g.right.len()];
        augment(g, l, &mut visited, &mut owner);
    }
    Matching {
        pairs: owner
            .iter()
            .enumerate()
            .filter_map(|(r, o)| o.map(|l| (g.left[l].clone(), g.right[r].clone())))
            .collect(),
    }
}

fn augment<L, R>(
    g: &BipartiteGraph<L, R>,
    l: usize,
    visited: &mut [bool],
    owner: &mut [Option<usize>],
) -> bool {
    for &r in &g.adjacency[l] {
        if visited[r] {
            continue;
        }
        visited[r] = true;
        let free = match owner[r] {
            None => true,
            Some(other) => augment(g, other, visited, owner),
        };
        if free {
            owner[r] = Some(l);
            return true;
        }
    }
    false
}

/// Given a maximum matching, returns `None` if it saturates the left side.
/// Otherwise returns every left vertex reachable by an alternating path from
/// an unmatched left vertex, in declared order. That set `S` has all of
/// `N(S)` matched into `S`, so `|N(S)| < |S|`.
pub fn hall_violator<L, R>(
    g: &BipartiteGraph<L, R>,
    m: &Matching<L, R>,
) -> Result<Option<Vec<L>>, MatchingError>
where
    L: Ord + Clone,
    R: Ord + Clone,
{
    let owner = g.positions(m)?;
    let mut mate = vec![None; g.left.len()];
    for (r, o) in owner.iter().enumerate() {
        if let Some(l) = o {
            mate[*l] = Some(r);
        }
    }
    let mut reached = vec![false; g.left.len()];
    let mut queue = VecDeque::new();
    for (l, m) in mate.iter().enumerate() {
        if m.is_none() {
            reached[l] = true;
            queue.push_back(l);
        }
    }
    if queue.is_empty() {
        return Ok(None);
    }
    let mut seen_right = vec![false; g.right.len()];
    while let Some(l) = queue.pop_front() {
        for &r in &g.adjacency[l] {
            if seen_right[r] {
                continue;
            }
            seen_right[r] = true;
            match owner[r] {
                None => return Err(MatchingError::NotMaximum),
                Some(next) => {
                    if !reached[next] {
                        reached[next] = true;
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    Ok(Some(
        (0..g.left.len())
            .filter(|&l| reached[l])
            .map(|l| g.left[l].clone())
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(left: &[char], right: &[u32], edges: &[(char, u32)]) -> BipartiteGraph<char, u32> {
        BipartiteGraph::new(left.to_vec(), right.to_vec(), edges.iter().copied()).unwrap()
    }

    #[test]
    fn single_edge() {
        let g = graph(&['a'], &[1], &[('a', 1)]);
        let m = maximum_matching(&g);
        assert_eq!(m.pairs, BTreeMap::from([('a', 1)]));
        assert_eq!(hall_violator(&g, &m), Ok(None));
    }

    #[test]
    fn pigeonhole() {
        let g = graph(&['a', 'b'], &[1], &[('a', 1), ('b', 1)]);
        let m = maximum_matching(&g);
        assert_eq!(m.pairs, BTreeMap::from([('a', 1)]));
        let s = hall_violator(&g, &m).unwrap().unwrap();
        assert_eq!(s, vec!['a', 'b']);
        assert_eq!(g.neighbourhood(&s), BTreeSet::from([1]));
    }

    #[test]
    fn rerouting_trace() {
        let g = graph(
            &['a', 'b', 'c'],
            &[1, 2, 3],
            &[('a', 1), ('a', 2), ('b', 1), ('c', 2), ('c', 3)],
        );
        let m = maximum_matching(&g);
        assert_eq!(m.pairs, BTreeMap::from([('a', 2), ('b', 1), ('c', 3)]));
    }

    #[test]
    fn violator_by_alternating_reachability() {
        let g = graph(
            &['a', 'b', 'c'],
            &[1, 2, 3],
            &[('a', 1), ('b', 1), ('c', 1), ('c', 2)],
        );
        let m = Matching {
            pairs: BTreeMap::from([('a', 1), ('c', 2)]),
        };
        let s = hall_violator(&g, &m).unwrap().unwrap();
        assert_eq!(s, vec!['a', 'b']);
        assert_eq!(g.neighbourhood(&s), BTreeSet::from([1]));
        assert_eq!(maximum_matching(&g).len(), 2);
    }

    #[test]
    fn non_maximum_input_is_rejected() {
        let g = graph(&['a', 'b'], &[1, 2], &[('a', 1), ('b', 2)]);
        let m = Matching {
            pairs: BTreeMap::from([('a', 1)]),
        };
        assert_eq!(hall_violator(&g, &m), Err(MatchingError::NotMaximum));
        let bogus = Matching {
            pairs: BTreeMap::from([('a', 2)]),
        };
        assert_eq!(hall_violator(&g, &bogus), Err(MatchingError::NotAMatching));
    }

    #[test]
    fn undeclared_vertex() {
        assert_eq!(
            BipartiteGraph::new(vec!['a'], vec![1u32], [('a', 7)]),
            Err(MatchingError::UndeclaredVertex)
        );
    }

    #[test]
    fn isolated_left_vertex_is_a_violator() {
        let g = graph(&['a', 'b'], &[1], &[('b', 1)]);
        let m = maximum_matching(&g);
        assert_eq!(hall_violator(&g, &m).unwrap(), Some(vec!['a']));
    }
}
