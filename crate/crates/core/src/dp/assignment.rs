use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::DpError;
use crate::plane_graph::{Graph, Vertex};

/// Colour label in `[k] = {1, ..., k}`.
pub type Label = usize;

/// Matching between the label sets of the two endpoints of one edge, stored
/// under the canonical orientation `lo < hi`. Index 0 of each table is
/// unused and `0` entries mean "unmatched".
#[derive(Debug, Clone, PartialEq, Eq)]
struct Matching {
    lo_to_hi: Vec<Label>,
    hi_to_lo: Vec<Label>,
}

impl Matching {
    fn empty(k: usize) -> Self {
        Matching { lo_to_hi: vec![0; k + 1], hi_to_lo: vec![0; k + 1] }
    }

    fn pairs(&self) -> Vec<(Label, Label)> {
        self.lo_to_hi.iter().enumerate().filter(|&(_, &b)| b != 0).map(|(a, &b)| (a, b)).collect()
    }
}

/// A `k`-correspondence assignment: lists `L(v) = [k]` everywhere and one
/// matching `C_e` per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceAssignment {
    k: usize,
    matchings: BTreeMap<(Vertex, Vertex), Matching>,
}

/// Serializable form of one edge's matching, pairs oriented `u -> v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingRecord {
    pub u: Vertex,
    pub v: Vertex,
    pub pairs: Vec<(Label, Label)>,
}

fn key(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl CorrespondenceAssignment {
    /// Every edge of `graph` gets the empty matching.
    pub fn empty(graph: &Graph, k: usize) -> Self {
        let matchings = graph.edges().into_iter().map(|e| (e, Matching::empty(k))).collect();
        CorrespondenceAssignment { k, matchings }
    }

    /// `C_e = {(c, c)}` on every edge, so C-colourings are proper colourings.
    pub fn identity(graph: &Graph, k: usize) -> Self {
        let mut out = Self::empty(graph, k);
        for m in out.matchings.values_mut() {
            for c in 1..=k {
                m.lo_to_hi[c] = c;
                m.hi_to_lo[c] = c;
            }
        }
        out
    }

    /// Seeded random assignment: a uniform permutation matching per edge,
    /// thinned to a random sub-matching unless `perfect`.
    pub fn random(graph: &Graph, k: usize, seed: u64, perfect: bool) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Self::empty(graph, k);
        let mut perm: Vec<Label> = (1..=k).collect();
        for m in out.matchings.values_mut() {
            perm.shuffle(&mut rng);
            for a in 1..=k {
                if perfect || rng.gen_bool(0.5) {
                    let b = perm[a - 1];
                    m.lo_to_hi[a] = b;
                    m.hi_to_lo[b] = a;
                }
            }
        }
        out
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.matchings.len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.matchings.contains_key(&key(u, v))
    }

    /// Replaces the matching on `uv`; `pairs` are `(label at u, label at v)`.
    pub fn set_matching(&mut self, u: Vertex, v: Vertex, pairs: &[(Label, Label)]) -> Result<(), DpError> {
        let k = self.k;
        let m = self.matchings.get_mut(&key(u, v)).ok_or(DpError::UnknownEdge(u, v))?;
        let mut fresh = Matching::empty(k);
        for &(a, b) in pairs {
            for c in [a, b] {
                if c == 0 || c > k {
                    return Err(DpError::LabelOutOfRange { label: c, k });
                }
            }
            let (lo, hi) = if u < v { (a, b) } else { (b, a) };
            if fresh.lo_to_hi[lo] != 0 || fresh.hi_to_lo[hi] != 0 {
                return Err(DpError::NotAMatching { u, v, pair: (a, b) });
            }
            fresh.lo_to_hi[lo] = hi;
            fresh.hi_to_lo[hi] = lo;
        }
        *m = fresh;
        Ok(())
    }

    /// Matched pairs on `uv`, oriented as `(label at u, label at v)`.
    pub fn matching(&self, u: Vertex, v: Vertex) -> Option<Vec<(Label, Label)>> {
        let m = self.matchings.get(&key(u, v))?;
        let pairs = m.pairs();
        Some(if u < v { pairs } else { pairs.into_iter().map(|(a, b)| (b, a)).collect() })
    }

    /// The label at `v` matched to `(u, c)`, if any.
    pub fn partner(&self, u: Vertex, c: Label, v: Vertex) -> Option<Label> {
        let m = self.matchings.get(&key(u, v))?;
        let p = if u < v { m.lo_to_hi.get(c)? } else { m.hi_to_lo.get(c)? };
        (*p != 0).then_some(*p)
    }

    /// Whether `(u, a)` and `(v, b)` are adjacent in `C_uv`.
    pub fn conflicts(&self, u: Vertex, a: Label, v: Vertex, b: Label) -> bool {
        self.partner(u, a, v) == Some(b)
    }

    /// Every matched pair on `uv` joins equal labels.
    pub fn is_straight(&self, u: Vertex, v: Vertex) -> bool {
        self.matchings.get(&key(u, v)).is_some_and(|m| m.lo_to_hi.iter().enumerate().all(|(a, &b)| b == 0 || a == b))
    }

    /// Every matching is a perfect matching of `[k]`.
    pub fn is_perfect(&self) -> bool {
        self.matchings.values().all(|m| m.lo_to_hi[1..].iter().all(|&b| b != 0))
    }

    pub fn records(&self) -> Vec<MatchingRecord> {
        self.matchings.iter().map(|(&(u, v), m)| MatchingRecord { u, v, pairs: m.pairs() }).collect()
    }

    /// Builds an assignment for `graph` from per-edge records; edges without
    /// a record keep the empty matching.
    pub fn from_records(graph: &Graph, k: usize, records: &[MatchingRecord]) -> Result<Self, DpError> {
        let mut out = Self::empty(graph, k);
        for r in records {
            out.set_matching(r.u, r.v, &r.pairs)?;
        }
        Ok(out)
    }

    /// Applies a per-vertex relabelling: `(u, a)(v, b)` becomes
    /// `(u, perm_u(a))(v, perm_v(b))`.
    pub(crate) fn relabeled(&self, perms: &[Vec<Label>]) -> Self {
        let mut out = self.clone();
        for (&(lo, hi), m) in out.matchings.iter_mut() {
            let old = self.matchings[&(lo, hi)].pairs();
            *m = Matching::empty(self.k);
            for (a, b) in old {
                let (na, nb) = (perms[lo][a - 1], perms[hi][b - 1]);
                m.lo_to_hi[na] = nb;
                m.hi_to_lo[nb] = na;
            }
        }
        out
    }

    /// Per-vertex neighbour tables used by the search routines:
    /// `links[v]` holds `(u, t)` with `t[c]` the label at `u` matched to
    /// `(v, c)`, or 0.
    pub(crate) fn link_tables(&self, graph: &Graph) -> Vec<Vec<(Vertex, Vec<Label>)>> {
        (0..graph.vertex_count())
            .map(|v| {
                graph
                    .neighbors(v)
                    .iter()
                    .map(|&u| {
                        let m = &self.matchings[&key(u, v)];
                        let t = if v < u { m.lo_to_hi.clone() } else { m.hi_to_lo.clone() };
                        (u, t)
                    })
                    .collect()
            })
            .collect()
    }
}

/// A partial map from vertices to labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring {
    labels: Vec<Option<Label>>,
}

impl Coloring {
    pub fn empty(n: usize) -> Self {
        Coloring { labels: vec![None; n] }
    }

    pub fn from_labels(labels: Vec<Option<Label>>) -> Self {
        Coloring { labels }
    }

    /// Total colouring from a label per vertex.
    pub fn total(labels: &[Label]) -> Self {
        Coloring { labels: labels.iter().map(|&c| Some(c)).collect() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, v: Vertex) -> Option<Label> {
        self.labels.get(v).copied().flatten()
    }

    pub fn set(&mut self, v: Vertex, c: Label) {
        self.labels[v] = Some(c);
    }

    pub fn unset(&mut self, v: Vertex) {
        self.labels[v] = None;
    }

    pub fn labels(&self) -> &[Option<Label>] {
        &self.labels
    }

    pub fn is_total(&self) -> bool {
        self.labels.iter().all(Option::is_some)
    }

    /// Coloured vertices with their labels, ascending by vertex.
    pub fn support(&self) -> impl Iterator<Item = (Vertex, Label)> + '_ {
        self.labels.iter().enumerate().filter_map(|(v, c)| c.map(|c| (v, c)))
    }

    /// The colouring restricted to `vertices`.
    pub fn restricted_to(&self, vertices: &BTreeSet<Vertex>) -> Self {
        let labels =
            self.labels.iter().enumerate().map(|(v, &c)| if vertices.contains(&v) { c } else { None }).collect();
        Coloring { labels }
    }

    /// Whether `self` agrees with `other` on every vertex `other` colours.
    pub fn extends(&self, other: &Coloring) -> bool {
        other.support().all(|(v, c)| self.get(v) == Some(c))
    }
}

/// `φ` is a C-colouring on its support: no edge with both ends coloured
/// carries its label pair in the matching. With `require_total`, every
/// vertex must also be coloured.
pub fn is_valid(
    graph: &Graph,
    assignment: &CorrespondenceAssignment,
    coloring: &Coloring,
    require_total: bool,
) -> bool {
    if coloring.len() != graph.vertex_count() {
        return false;
    }
    if require_total && !coloring.is_total() {
        return false;
    }
    let k = assignment.k();
    if coloring.support().any(|(_, c)| c == 0 || c > k) {
        return false;
    }
    graph.edges().into_iter().all(|(u, v)| match (coloring.get(u), coloring.get(v)) {
        (Some(a), Some(b)) => !assignment.conflicts(u, a, v, b),
        _ => true,
    })
}

/// `L*(x)`: labels at `x` not matched to the label of any coloured neighbour.
pub fn residual_list(
    graph: &Graph,
    assignment: &CorrespondenceAssignment,
    coloring: &Coloring,
    x: Vertex,
) -> Result<Vec<Label>, DpError> {
    if coloring.get(x).is_some() {
        return Err(DpError::AlreadyColored(x));
    }
    let mut allowed = vec![true; assignment.k() + 1];
    for &u in graph.neighbors(x) {
        if let Some(c) = coloring.get(u) {
            if let Some(p) = assignment.partner(u, c, x) {
                allowed[p] = false;
            }
        }
    }
    Ok((1..=assignment.k()).filter(|&c| allowed[c]).collect())
}

/// A list assignment embedded as a correspondence assignment.
///
/// Vertex `v`'s label `i` stands for the `i`-th smallest colour of its list.
/// Labels past a vertex's list size are matched to nothing, so the two
/// colouring notions agree exactly when every list has size `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListEmbedding {
    pub k: usize,
    pub assignment: CorrespondenceAssignment,
    pub lists: Vec<Vec<u64>>,
}

impl ListEmbedding {
    /// Translates a C-colouring back to underlying colours. `None` if some
    /// vertex uses a padding label.
    pub fn to_list_coloring(&self, coloring: &Coloring) -> Option<Vec<u64>> {
        (0..self.lists.len()).map(|v| coloring.get(v).and_then(|c| self.lists[v].get(c - 1).copied())).collect()
    }
}

pub fn from_list_assignment(graph: &Graph, lists: &[Vec<u64>]) -> Result<ListEmbedding, DpError> {
    if lists.len() != graph.vertex_count() {
        return Err(DpError::SizeMismatch { expected: graph.vertex_count(), found: lists.len() });
    }
    let lists: Vec<Vec<u64>> = lists
        .iter()
        .enumerate()
        .map(|(v, l)| {
            let set: BTreeSet<u64> = l.iter().copied().collect();
            if set.is_empty() {
                Err(DpError::EmptyList(v))
            } else {
                Ok(set.into_iter().collect())
            }
        })
        .collect::<Result<_, _>>()?;
    let k = lists.iter().map(Vec::len).max().unwrap_or(1);
    let mut assignment = CorrespondenceAssignment::empty(graph, k);
    for (u, v) in graph.edges() {
        let pairs: Vec<_> = lists[u]
            .iter()
            .enumerate()
            .filter_map(|(a, col)| lists[v].iter().position(|c| c == col).map(|b| (a + 1, b + 1)))
            .collect();
        assignment.set_matching(u, v, &pairs)?;
    }
    Ok(ListEmbedding { k, assignment, lists })
}
