use rayon::prelude::*;
use serde::Serialize;

use super::{enumerate_posets, optimum_with, SearchConfig, SearchError};
use crate::compression::compress_general;
use crate::embedding::{canonical_embedding, is_induced_copy, Embedding, EmbeddingDocument};
use crate::poset::{named_poset, NamedPoset, Poset};

/// Placement budget per oracle call in a survey. Comfortably above what any
/// poset of size 6 needs; hitting it is reported as a failure.
pub const SURVEY_NODE_BUDGET: u64 = 50_000_000;

pub const MAX_SURVEY_SIZE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyEntry {
    /// `P<size>.<index>` in enumeration order, index from 1.
    pub id: String,
    pub poset: Poset,
    pub size: usize,
    pub h_star: usize,
    pub w_star: usize,
    pub attains_height_bound: bool,
    pub attains_width_bound: bool,
    pub witness: Embedding,
}

#[derive(Debug, Clone, Serialize)]
pub struct SurveyRecord {
    pub id: String,
    pub size: usize,
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
    pub h_star: usize,
    pub w_star: usize,
    pub attains_height_bound: bool,
    pub attains_width_bound: bool,
    pub witness: EmbeddingDocument,
}

impl SurveyEntry {
    pub fn to_record(&self) -> SurveyRecord {
        let p = &self.poset;
        SurveyRecord {
            id: self.id.clone(),
            size: self.size,
            elements: p.elements().to_vec(),
            covers: p
                .cover_pairs()
                .into_iter()
                .map(|(a, b)| (p.name(a).to_string(), p.name(b).to_string()))
                .collect(),
            h_star: self.h_star,
            w_star: self.w_star,
            attains_height_bound: self.attains_height_bound,
            attains_width_bound: self.attains_width_bound,
            witness: self.witness.to_document(p),
        }
    }
}

/// Exact `(h*, w*)` for one poset, with the bound checks a survey performs.
pub fn survey_entry(id: String, poset: Poset) -> Result<SurveyEntry, SearchError> {
    let size = poset.len();
    let config = SearchConfig::with_budget(SURVEY_NODE_BUDGET);
    let opt = optimum_with(&poset, &config)?;
    let fail = |msg: String| Err(SearchError::BoundViolated(format!("{id}: {msg}")));

    if size > 0 && opt.h_star > size - 1 {
        return fail(format!("h* = {} exceeds |P| - 1", opt.h_star));
    }
    if opt.w_star > size {
        return fail(format!("w* = {} exceeds |P|", opt.w_star));
    }
    for emb in [&opt.height_witness, &opt.witness] {
        if !is_induced_copy(&poset, emb) {
            return fail("witness is not an induced copy".into());
        }
    }
    for input in [opt.height_witness.clone(), canonical_embedding(&poset)] {
        match compress_general(&poset, &input) {
            Ok((out, _)) if out.width() <= size && out.height() <= input.height() => {}
            Ok((out, _)) => {
                return fail(format!(
                    "compression gave width {} height {} from height {}",
                    out.width(),
                    out.height(),
                    input.height()
                ))
            }
            Err(e) => return fail(format!("compression failed: {e}")),
        }
    }

    Ok(SurveyEntry {
        id,
        size,
        h_star: opt.h_star,
        w_star: opt.w_star,
        attains_height_bound: size > 0 && opt.h_star == size - 1,
        attains_width_bound: opt.w_star == size,
        witness: opt.witness,
        poset,
    })
}

/// Every isomorphism class of the given size, evaluated in parallel and
/// returned in enumeration order.
pub fn survey_size(k: usize) -> Result<Vec<SurveyEntry>, SearchError> {
    if k == 0 || k > MAX_SURVEY_SIZE {
        return Err(SearchError::SizeTooLarge(k));
    }
    enumerate_posets(k)?
        .into_par_iter()
        .enumerate()
        .map(|(i, p)| survey_entry(format!("P{k}.{}", i + 1), p))
        .collect()
}

/// All posets of size `1..=max_k`.
pub fn survey(max_k: usize) -> Result<Vec<SurveyEntry>, SearchError> {
    if max_k == 0 || max_k > MAX_SURVEY_SIZE {
        return Err(SearchError::SizeTooLarge(max_k));
    }
    let mut out = Vec::new();
    for k in 1..=max_k {
        out.extend(survey_size(k)?);
    }
    Ok(out)
}

/// Exact values for the antichain-above-a-chain family next to the values
/// `(k/2, k)` sometimes quoted for it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub k: usize,
    pub size: usize,
    pub h_star: usize,
    pub w_star: usize,
    pub quoted_h_star: usize,
    pub quoted_w_star: usize,
    pub agrees: bool,
    #[serde(skip)]
    pub witness: Embedding,
}

pub fn antichain_plus_chain_probe(k: usize) -> Result<ProbeReport, SearchError> {
    let poset = named_poset(NamedPoset::AntichainPlusChain, Some(k))
        .map_err(|e| SearchError::BoundViolated(e.to_string()))?;
    let opt = optimum_with(&poset, &SearchConfig::with_budget(SURVEY_NODE_BUDGET))?;
    if !is_induced_copy(&poset, &opt.witness) {
        return Err(SearchError::BoundViolated(
            "probe witness is not an induced copy".into(),
        ));
    }
    let (quoted_h_star, quoted_w_star) = (k / 2, k);
    Ok(ProbeReport {
        k,
        size: poset.len(),
        h_star: opt.h_star,
        w_star: opt.w_star,
        quoted_h_star,
        quoted_w_star,
        agrees: opt.h_star == quoted_h_star && opt.w_star == quoted_w_star,
        witness: opt.witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn survey_of_two() {
        let s = survey(2).unwrap();
        let got: Vec<(usize, usize, usize)> = s.iter().map(|e| (e.size, e.h_star, e.w_star)).collect();
        // point, then the two 2-element classes in enumeration order
        assert_eq!(got[0], (1, 0, 0));
        let mut rest = got[1..].to_vec();
        rest.sort();
        assert_eq!(rest, vec![(2, 1, 1), (2, 1, 2)]);
        let anti = s.iter().find(|e| e.size == 2 && e.w_star == 2).unwrap();
        assert!(anti.attains_width_bound);
        assert_eq!(anti.poset.strict_relation_count(), 0);
    }

    #[test]
    fn record_shape() {
        let s = survey(1).unwrap();
        let json = serde_json::to_string(&s[0].to_record()).unwrap();
        assert_eq!(
            json,
            r#"{"id":"P1.1","size":1,"elements":["p1"],"covers":[],"h_star":0,"w_star":0,"attains_height_bound":true,"attains_width_bound":false,"witness":{"ground":0,"sets":{"p1":[]}}}"#
        );
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(survey(0).is_err());
        assert!(survey(7).is_err());
    }
}
