//! Exact search for induced copies inside truncated hypercubes, and the
//! hypercube-height / hypercube-width oracles built on it.
//!
//! Elements are placed along a linear extension, so each new set only has
//! to be checked against elements already placed: it must strictly contain
//! the sets of its predecessors and be incomparable with the rest. Candidate
//! sets are tried in (size, lexicographic) order, and coordinate `j` may only
//! be introduced once coordinates `1..j` are in use. Any witness can be
//! relabeled into that first-use form, so the pruning loses nothing.

mod enumerate;
mod survey;

pub use enumerate::{enumerate_posets, MAX_ENUMERATION_SIZE};
pub use survey::{
    antichain_plus_chain_probe, survey, survey_entry, survey_size, ProbeReport, SurveyEntry, SurveyRecord,
    MAX_SURVEY_SIZE, SURVEY_NODE_BUDGET,
};

use thiserror::Error;

use crate::embedding::{CoordSet, Embedding};
use crate::poset::Poset;

/// Widest cube the bitmask search accepts.
pub const MAX_SEARCH_WIDTH: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),
    #[error("width {0} exceeds the search limit of {MAX_SEARCH_WIDTH}")]
    WidthTooLarge(usize),
    #[error("poset of size {0} is too large to enumerate")]
    SizeTooLarge(usize),
    #[error("bound violated: {0}")]
    BoundViolated(String),
}

/// Limits for the oracles. `None` fields fall back to `|P|`, which is always
/// enough: any witness compresses to width at most `|P|` without growing a
/// set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchConfig {
    pub width_cap: Option<usize>,
    pub height_cap: Option<usize>,
    pub node_budget: Option<u64>,
}

impl SearchConfig {
    pub fn with_budget(node_budget: u64) -> Self {
        SearchConfig {
            node_budget: Some(node_budget),
            ..Default::default()
        }
    }
}

/// Finds an induced copy of `poset` using only coordinates `1..=width` and
/// sets of size at most `height`. `Ok(None)` is a proof that none exists.
pub fn find_embedding(
    poset: &Poset,
    width: usize,
    height: usize,
) -> Result<Option<Embedding>, SearchError> {
    find_embedding_with_budget(poset, width, height, None)
}

/// [`find_embedding`] giving up with [`SearchError::BudgetExhausted`] after
/// `budget` placements.
pub fn find_embedding_with_budget(
    poset: &Poset,
    width: usize,
    height: usize,
    budget: Option<u64>,
) -> Result<Option<Embedding>, SearchError> {
    if width > MAX_SEARCH_WIDTH {
        return Err(SearchError::WidthTooLarge(width));
    }
    let mut searcher = Searcher::new(poset, width, height.min(width), budget);
    if !searcher.run(0, 0)? {
        return Ok(None);
    }
    let mut sets = vec![CoordSet::new(); poset.len()];
    for (pos, &element) in searcher.order.iter().enumerate() {
        sets[element] = mask_to_set(searcher.assigned[pos]);
    }
    let emb = Embedding::new(width, sets).expect("search only uses coordinates 1..=width");
    Ok(Some(emb))
}

/// Hypercube-height: the least `h` admitting an induced copy with sets of
/// size at most `h`, with a witness found inside `[|P|]`.
pub fn h_star(poset: &Poset) -> Result<(usize, Embedding), SearchError> {
    h_star_with(poset, &SearchConfig::default())
}

pub fn h_star_with(poset: &Poset, config: &SearchConfig) -> Result<(usize, Embedding), SearchError> {
    let n = poset.len();
    let width = config.width_cap.unwrap_or(n);
    let height_cap = config.height_cap.unwrap_or(n);
    for h in 0..=height_cap {
        if let Some(emb) = find_embedding_with_budget(poset, width, h, config.node_budget)? {
            return Ok((h, emb));
        }
    }
    Err(SearchError::BoundViolated(format!(
        "no induced copy of height <= {height_cap} within width {width}"
    )))
}

/// Hypercube-width: the least `w` such that sets of size at most `h*` inside
/// `[w]` contain an induced copy. Returns `(w*, witness)`.
pub fn w_star(poset: &Poset) -> Result<(usize, Embedding), SearchError> {
    w_star_with(poset, &SearchConfig::default())
}

pub fn w_star_with(poset: &Poset, config: &SearchConfig) -> Result<(usize, Embedding), SearchError> {
    Ok(optimum_with(poset, config)?.width_witness())
}

/// Both oracles at once, sharing the height search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    pub h_star: usize,
    pub w_star: usize,
    /// Witness of height `h*` found with the width cap.
    pub height_witness: Embedding,
    /// Witness of height at most `h*` and width at most `w*`.
    pub witness: Embedding,
}

impl Optimum {
    fn width_witness(self) -> (usize, Embedding) {
        (self.w_star, self.witness)
    }
}

pub fn optimum(poset: &Poset) -> Result<Optimum, SearchError> {
    optimum_with(poset, &SearchConfig::default())
}

pub fn optimum_with(poset: &Poset, config: &SearchConfig) -> Result<Optimum, SearchError> {
    let (h, height_witness) = h_star_with(poset, config)?;
    let width_cap = config.width_cap.unwrap_or(poset.len()).max(h);
    // a set of size h needs h coordinates
    for w in h..=width_cap {
        if let Some(witness) = find_embedding_with_budget(poset, w, h, config.node_budget)? {
            return Ok(Optimum {
                h_star: h,
                w_star: w,
                height_witness,
                witness,
            });
        }
    }
    Err(SearchError::BoundViolated(format!(
        "no induced copy of height {h} within width {width_cap}"
    )))
}

fn mask_to_set(mask: u64) -> CoordSet {
    (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

/// All subsets of `{0..width}` with at most `height` elements, ordered by
/// size and then lexicographically by their sorted elements. Also returns,
/// for each size, the index where that size starts.
fn candidate_sets(width: usize, height: usize) -> (Vec<u64>, Vec<usize>) {
    let mut out = Vec::new();
    let mut starts = Vec::with_capacity(height + 2);
    for size in 0..=height {
        starts.push(out.len());
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            out.push(combo.iter().fold(0u64, |m, &b| m | 1 << b));
            // advance to the next combination in lexicographic order
            let Some(i) = (0..size).rev().find(|&i| combo[i] < width - size + i) else {
                break;
            };
            combo[i] += 1;
            for j in i + 1..size {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    starts.push(out.len());
    (out, starts)
}

struct Searcher {
    order: Vec<usize>,
    /// For each position, earlier positions holding strict predecessors.
    below: Vec<Vec<usize>>,
    /// For each position, earlier positions holding incomparable elements.
    apart: Vec<Vec<usize>>,
    /// Lower bound on the set size at each position (chain length below it).
    min_size: Vec<usize>,
    candidates: Vec<u64>,
    size_starts: Vec<usize>,
    assigned: Vec<u64>,
    nodes: u64,
    budget: Option<u64>,
}

impl Searcher {
    fn new(poset: &Poset, width: usize, height: usize, budget: Option<u64>) -> Self {
        let order = poset.linear_extension();
        let n = order.len();
        let mut below = vec![Vec::new(); n];
        let mut apart = vec![Vec::new(); n];
        for k in 0..n {
            for j in 0..k {
                if poset.lt(order[j], order[k]) {
                    below[k].push(j);
                } else {
                    apart[k].push(j);
                }
            }
        }
        let min_size = order.iter().map(|&e| poset.rank(e)).collect();
        let (candidates, size_starts) = candidate_sets(width, height);
        Searcher {
            order,
            below,
            apart,
            min_size,
            candidates,
            size_starts,
            assigned: vec![0; n],
            nodes: 0,
            budget,
        }
    }

    fn run(&mut self, k: usize, used: u32) -> Result<bool, SearchError> {
        if k == self.order.len() {
            return Ok(true);
        }
        let floor: u64 = self.below[k].iter().fold(0, |m, &j| m | self.assigned[j]);
        let mut floor_size = floor.count_ones() as usize;
        if self.below[k].iter().any(|&j| self.assigned[j] == floor) {
            floor_size += 1;
        }
        let smallest = self.min_size[k].max(floor_size);
        if smallest + 1 >= self.size_starts.len() {
            return Ok(false);
        }
        let used_mask = (1u64 << used) - 1;
        for idx in self.size_starts[smallest]..self.candidates.len() {
            let cand = self.candidates[idx];
            if cand & floor != floor {
                continue;
            }
            let new = cand & !used_mask;
            let added = new.count_ones();
            if new != ((1u64 << (used + added)) - 1) & !used_mask {
                continue;
            }
            if self.below[k].iter().any(|&j| self.assigned[j] == cand) {
                continue;
            }
            let clash = self.apart[k].iter().any(|&j| {
                let other = self.assigned[j];
                cand & other == cand || cand & other == other
            });
            if clash {
                continue;
            }
            self.nodes += 1;
            if let Some(budget) = self.budget {
                if self.nodes > budget {
                    return Err(SearchError::BudgetExhausted(budget));
                }
            }
            self.assigned[k] = cand;
            if self.run(k + 1, used + added)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}
