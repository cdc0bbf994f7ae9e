//! Optimal embeddings of finite posets into hypercubes.
//!
//! A poset embeds into the Boolean lattice `Q_n` when its elements can be
//! assigned subsets of `[n]` so that the order is exactly set inclusion.
//! This crate computes how low such a copy can sit (the hypercube-height
//! `h*`, the least possible largest set) and how narrow it can then be (the
//! hypercube-width `w*`, the fewest coordinates at that height), and
//! implements the matching-based rewrites that shrink any induced copy to
//! width at most `|P|` without growing a set.
//!
//! - [`poset`]: construction, order queries, catalog, isomorphism
//! - [`embedding`]: embeddings, verification, canonical constructions
//! - [`matching`]: augmenting-path matching and Hall violators
//! - [`compression`]: the width-compression rewrites
//! - [`search`]: exact `h*` / `w*` oracles, enumeration, surveys
//! - [`cli`]: the `posetcube` command line

pub mod cli;
pub mod compression;
pub mod embedding;
pub mod matching;
pub mod poset;
pub mod search;

pub use compression::{compress_general, compress_two_layer, extract_deficient_family, CompressionTrace, Scope};
pub use embedding::{canonical_embedding, normalize, reduced_canonical_embedding, verify_induced, CoordSet, Embedding, EmbeddingReport};
pub use poset::{are_isomorphic, named_poset, NamedPoset, Poset, PosetError};
pub use search::{enumerate_posets, find_embedding, h_star, survey, w_star, SearchConfig, SearchError, SurveyEntry};
