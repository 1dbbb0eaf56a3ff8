//! Correspondence (DP) colouring.
//!
//! Every vertex carries the label set `[k]`; every edge carries a matching
//! between the two endpoints' label sets. A colouring is valid when no edge
//! has its endpoints' labels matched. Identity matchings recover ordinary
//! proper colouring; list colouring embeds via [`from_list_assignment`].

mod assignment;
mod chi;
mod solve;
mod straighten;

pub use assignment::{
    from_list_assignment, is_valid, residual_list, Coloring, CorrespondenceAssignment, Label, ListEmbedding,
    MatchingRecord,
};
pub use chi::{dp_chromatic_number, ChiDpReport, ChiMode, UnsatWitness, DEFAULT_EXHAUSTIVE_BUDGET};
pub use solve::{
    count_colorings, count_colorings_within, for_each_coloring, solve, Solution, SolveOutcome, SolveStats,
    DEFAULT_ENUMERATION_LIMIT,
};
pub use straighten::{spanning_forest, straighten, RelabelPlan};

use crate::plane_graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DpError {
    #[error("label {label} outside [1, {k}]")]
    LabelOutOfRange { label: Label, k: usize },
    #[error("pair {pair:?} on edge {u}-{v} reuses a label")]
    NotAMatching { u: Vertex, v: Vertex, pair: (Label, Label) },
    #[error("no edge {0}-{1}")]
    UnknownEdge(Vertex, Vertex),
    #[error("vertex {0} is already coloured")]
    AlreadyColored(Vertex),
    #[error("precolouring conflicts on edge {u}-{v}")]
    InvalidPrecoloring { u: Vertex, v: Vertex },
    #[error("edge {u}-{v} closes a cycle in the forest")]
    NotAForest { u: Vertex, v: Vertex },
    #[error("instance size {size} exceeds limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("expected {expected} entries, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("vertex {0} has an empty list")]
    EmptyList(Vertex),
    #[error("relabel entry is not a permutation of [k]")]
    NotAPermutation,
}
