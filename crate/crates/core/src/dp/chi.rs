use std::collections::BTreeSet;

use serde::Serialize;

use super::assignment::{CorrespondenceAssignment, Label};
use super::solve::solve;
use super::straighten::spanning_forest;
use super::{Coloring, DpError};
use crate::plane_graph::{Graph, Vertex};

/// Default cap on assignments examined by [`ChiMode::Exhaustive`] per `k`.
pub const DEFAULT_EXHAUSTIVE_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChiMode {
    /// Every k-assignment up to straightening a spanning forest; exact.
    Exhaustive { budget: u64 },
    /// `samples` random perfect assignments per `k`; an estimate only.
    Sampled { samples: u32, seed: u64 },
}

/// A k-assignment under which the graph has no C-colouring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnsatWitness {
    pub k: usize,
    pub assignment: CorrespondenceAssignment,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiDpReport {
    /// Smallest `k` for which no failing assignment was found, if `<= kmax`.
    pub value: Option<usize>,
    /// Whether `value` is proven (exhaustive mode).
    pub exact: bool,
    /// Proven lower bound: one more than the largest `k` with a witness.
    pub lower_bound: usize,
    /// Failing assignment for `lower_bound - 1`, when that is at least 1.
    pub witness: Option<UnsatWitness>,
    pub assignments_checked: u64,
}

#[derive(Serialize)]
struct ReportJson {
    value: Option<usize>,
    exact: bool,
    lower_bound: usize,
    witness_k: Option<usize>,
    witness: Option<Vec<super::MatchingRecord>>,
    assignments_checked: u64,
}

impl ChiDpReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ReportJson {
            value: self.value,
            exact: self.exact,
            lower_bound: self.lower_bound,
            witness_k: self.witness.as_ref().map(|w| w.k),
            witness: self.witness.as_ref().map(|w| w.assignment.records()),
            assignments_checked: self.assignments_checked,
        })
        .expect("serializable")
    }
}

/// All permutations of `[k]` in lexicographic order.
pub(crate) fn permutations(k: usize) -> Vec<Vec<Label>> {
    let mut out = Vec::new();
    let mut cur: Vec<Label> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Whether every `k`-assignment admits a C-colouring, checked exhaustively.
///
/// Any assignment can be renamed so that a spanning forest is straight, and
/// removing pairs from a matching only removes constraints, so it suffices
/// to fix the forest edges to the identity and try every perfect matching
/// (permutation) on the remaining edges.
fn exhaustive_check(
    graph: &Graph,
    k: usize,
    budget: u64,
    checked: &mut u64,
) -> Result<Option<CorrespondenceAssignment>, DpError> {
    let tree: BTreeSet<(Vertex, Vertex)> =
        spanning_forest(graph).into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
    let others: Vec<(Vertex, Vertex)> = graph.edges().into_iter().filter(|e| !tree.contains(e)).collect();
    let total = factorial(k).checked_pow(others.len() as u32).unwrap_or(u64::MAX);
    if total > budget {
        return Err(DpError::TooLarge { size: total.min(usize::MAX as u64) as usize, limit: budget as usize });
    }
    let perms = permutations(k);
    let mut assignment = CorrespondenceAssignment::identity(graph, k);
    let mut idx = vec![0usize; others.len()];
    let empty = Coloring::empty(graph.vertex_count());
    loop {
        for (e, &i) in others.iter().zip(&idx) {
            let pairs: Vec<_> = perms[i].iter().enumerate().map(|(a, &b)| (a + 1, b)).collect();
            assignment.set_matching(e.0, e.1, &pairs)?;
        }
        *checked += 1;
        if !solve(graph, &assignment, &empty)?.is_colorable() {
            return Ok(Some(assignment));
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(None);
            }
            idx[pos] += 1;
            if idx[pos] < perms.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// The correspondence chromatic number, searched for `k = 1..=kmax`.
pub fn dp_chromatic_number(graph: &Graph, kmax: usize, mode: ChiMode) -> Result<ChiDpReport, DpError> {
    let mut checked = 0;
    let mut witness = None;
    let empty = Coloring::empty(graph.vertex_count());
    for k in 1..=kmax {
        let failing = match mode {
            ChiMode::Exhaustive { budget } => exhaustive_check(graph, k, budget, &mut checked)?,
            ChiMode::Sampled { samples, seed } => {
                let mut found = None;
                for s in 0..samples {
                    let c = CorrespondenceAssignment::random(graph, k, seed ^ ((k as u64) << 32) ^ s as u64, true);
                    checked += 1;
                    if !solve(graph, &c, &empty)?.is_colorable() {
                        found = Some(c);
                        break;
                    }
                }
                found
            }
        };
        match failing {
            Some(assignment) => witness = Some(UnsatWitness { k, assignment }),
            None => {
                return Ok(ChiDpReport {
                    value: Some(k),
                    exact: matches!(mode, ChiMode::Exhaustive { .. }),
                    lower_bound: witness.as_ref().map_or(1, |w| w.k + 1),
                    witness,
                    assignments_checked: checked,
                });
            }
        }
    }
    Ok(ChiDpReport {
        value: None,
        exact: false,
        lower_bound: witness.as_ref().map_or(1, |w| w.k + 1),
        witness,
        assignments_checked: checked,
    })
}
