use serde::Serialize;

use super::assignment::{is_valid, Coloring, CorrespondenceAssignment, Label};
use super::DpError;
use crate::plane_graph::{Graph, Vertex};

/// Default vertex bound for the exhaustive enumerators.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    /// Search nodes (label assignments tried).
    pub nodes: u64,
    /// Dead ends: a vertex with an empty residual list.
    pub dead_ends: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Colorable(Coloring),
    Uncolorable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub outcome: SolveOutcome,
    pub stats: SolveStats,
}

impl Solution {
    pub fn coloring(&self) -> Option<&Coloring> {
        match &self.outcome {
            SolveOutcome::Colorable(c) => Some(c),
            SolveOutcome::Uncolorable => None,
        }
    }

    pub fn is_colorable(&self) -> bool {
        matches!(self.outcome, SolveOutcome::Colorable(_))
    }
}

struct Search<'a> {
    k: usize,
    links: Vec<Vec<(Vertex, Vec<Label>)>>,
    /// `blocked[v][c]` counts coloured neighbours forbidding label `c` at `v`.
    blocked: Vec<Vec<u32>>,
    coloring: Vec<Option<Label>>,
    stats: &'a mut SolveStats,
}

impl Search<'_> {
    fn assign(&mut self, v: Vertex, c: Label, delta: i32) {
        for (u, table) in &self.links[v] {
            let p = table[c];
            if p != 0 {
                let slot = &mut self.blocked[*u][p];
                *slot = slot.wrapping_add_signed(delta);
            }
        }
    }

    fn available(&self, v: Vertex) -> usize {
        self.blocked[v][1..].iter().filter(|&&b| b == 0).count()
    }

    /// Uncoloured vertex with the fewest available labels, lowest id on ties.
    fn pick(&self) -> Option<(Vertex, usize)> {
        let mut best: Option<(Vertex, usize)> = None;
        for v in 0..self.coloring.len() {
            if self.coloring[v].is_some() {
                continue;
            }
            let a = self.available(v);
            if best.is_none_or(|(_, b)| a < b) {
                best = Some((v, a));
                if a == 0 {
                    break;
                }
            }
        }
        best
    }

    fn run(&mut self) -> bool {
        let Some((v, avail)) = self.pick() else {
            return true;
        };
        if avail == 0 {
            self.stats.dead_ends += 1;
            return false;
        }
        for c in 1..=self.k {
            if self.blocked[v][c] != 0 {
                continue;
            }
            self.stats.nodes += 1;
            self.coloring[v] = Some(c);
            self.assign(v, c, 1);
            if self.run() {
                return true;
            }
            self.assign(v, c, -1);
            self.coloring[v] = None;
        }
        false
    }
}

/// Extends the precolouring `phi0` to a total C-colouring, or proves none
/// exists.
///
/// Backtracking with fail-first vertex choice (smallest residual list,
/// lowest id on ties) and labels tried in increasing order, so the result is
/// a deterministic function of the inputs.
pub fn solve(graph: &Graph, assignment: &CorrespondenceAssignment, phi0: &Coloring) -> Result<Solution, DpError> {
    let n = graph.vertex_count();
    if phi0.len() != n {
        return Err(DpError::SizeMismatch { expected: n, found: phi0.len() });
    }
    if let Some((_, c)) = phi0.support().find(|&(_, c)| c == 0 || c > assignment.k()) {
        return Err(DpError::LabelOutOfRange { label: c, k: assignment.k() });
    }
    for (u, v) in graph.edges() {
        if let (Some(a), Some(b)) = (phi0.get(u), phi0.get(v)) {
            if assignment.conflicts(u, a, v, b) {
                return Err(DpError::InvalidPrecoloring { u, v });
            }
        }
    }
    let k = assignment.k();
    let mut stats = SolveStats::default();
    let mut search = Search {
        k,
        links: assignment.link_tables(graph),
        blocked: vec![vec![0; k + 1]; n],
        coloring: phi0.labels().to_vec(),
        stats: &mut stats,
    };
    for (v, c) in phi0.support() {
        search.assign(v, c, 1);
    }
    let found = search.run();
    let coloring = Coloring::from_labels(search.coloring);
    let outcome = if found {
        debug_assert!(is_valid(graph, assignment, &coloring, true));
        SolveOutcome::Colorable(coloring)
    } else {
        SolveOutcome::Uncolorable
    };
    Ok(Solution { outcome, stats })
}

/// Visits every total C-colouring extending `phi0`, in lexicographic order
/// of the uncoloured vertices' labels. Plain enumeration with no
/// heuristics, kept independent of [`solve`] so it can serve as its oracle.
pub fn for_each_coloring<F: FnMut(&Coloring)>(
    graph: &Graph,
    assignment: &CorrespondenceAssignment,
    phi0: &Coloring,
    max_vertices: usize,
    mut visit: F,
) -> Result<(), DpError> {
    let n = graph.vertex_count();
    if n > max_vertices {
        return Err(DpError::TooLarge { size: n, limit: max_vertices });
    }
    if phi0.len() != n {
        return Err(DpError::SizeMismatch { expected: n, found: phi0.len() });
    }
    if !is_valid(graph, assignment, phi0, false) {
        return Ok(());
    }
    let free: Vec<Vertex> = (0..n).filter(|&v| phi0.get(v).is_none()).collect();
    let mut current = phi0.clone();
    fn rec<F: FnMut(&Coloring)>(
        graph: &Graph,
        assignment: &CorrespondenceAssignment,
        free: &[Vertex],
        current: &mut Coloring,
        visit: &mut F,
    ) {
        let Some((&v, rest)) = free.split_first() else {
            visit(current);
            return;
        };
        for c in 1..=assignment.k() {
            let ok =
                graph.neighbors(v).iter().all(|&u| current.get(u).is_none_or(|b| !assignment.conflicts(v, c, u, b)));
            if ok {
                current.set(v, c);
                rec(graph, assignment, rest, current, visit);
                current.unset(v);
            }
        }
    }
    rec(graph, assignment, &free, &mut current, &mut visit);
    Ok(())
}

/// Exact number of total C-colourings extending `phi0`.
pub fn count_colorings(graph: &Graph, assignment: &CorrespondenceAssignment, phi0: &Coloring) -> Result<u64, DpError> {
    count_colorings_within(graph, assignment, phi0, DEFAULT_ENUMERATION_LIMIT)
}

pub fn count_colorings_within(
    graph: &Graph,
    assignment: &CorrespondenceAssignment,
    phi0: &Coloring,
    max_vertices: usize,
) -> Result<u64, DpError> {
    let mut count = 0u64;
    for_each_coloring(graph, assignment, phi0, max_vertices, |_| count += 1)?;
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn single_vertex_k1() {
        let g = Graph::from_edges(1, &[]).unwrap();
        let c = CorrespondenceAssignment::empty(&g, 1);
        let sol = solve(&g, &c, &Coloring::empty(1)).unwrap();
        assert_eq!(sol.coloring().unwrap(), &Coloring::total(&[1]));
    }

    #[test]
    fn k4_identity() {
        let g = k4();
        assert!(solve(&g, &CorrespondenceAssignment::identity(&g, 4), &Coloring::empty(4)).unwrap().is_colorable());
        assert!(!solve(&g, &CorrespondenceAssignment::identity(&g, 3), &Coloring::empty(4)).unwrap().is_colorable());
    }

    #[test]
    fn twisted_c4_is_uncolorable_with_two_labels() {
        let g = cycle(4);
        let mut c = CorrespondenceAssignment::identity(&g, 2);
        c.set_matching(3, 0, &[(1, 2), (2, 1)]).unwrap();
        assert!(!solve(&g, &c, &Coloring::empty(4)).unwrap().is_colorable());
        assert_eq!(count_colorings(&g, &c, &Coloring::empty(4)).unwrap(), 0);
        // the untwisted cycle is 2-colourable
        let id = CorrespondenceAssignment::identity(&g, 2);
        assert_eq!(count_colorings(&g, &id, &Coloring::empty(4)).unwrap(), 2);
    }

    #[test]
    fn conflicting_precoloring_rejected() {
        let g = cycle(3);
        let c = CorrespondenceAssignment::identity(&g, 3);
        let phi0 = Coloring::from_labels(vec![Some(1), Some(1), None]);
        assert_eq!(solve(&g, &c, &phi0).unwrap_err(), DpError::InvalidPrecoloring { u: 0, v: 1 });
    }

    #[test]
    fn precoloring_is_respected() {
        let g = cycle(5);
        let c = CorrespondenceAssignment::random(&g, 3, 5, true);
        let phi0 = Coloring::from_labels(vec![Some(2), None, None, None, None]);
        let sol = solve(&g, &c, &phi0).unwrap();
        let phi = sol.coloring().unwrap();
        assert!(phi.extends(&phi0));
        assert!(is_valid(&g, &c, phi, true));
    }

    #[test]
    fn counts() {
        let g = Graph::from_edges(1, &[]).unwrap();
        assert_eq!(count_colorings(&g, &CorrespondenceAssignment::empty(&g, 4), &Coloring::empty(1)).unwrap(), 4);
        let e = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(count_colorings(&e, &CorrespondenceAssignment::identity(&e, 2), &Coloring::empty(2)).unwrap(), 2);
        let c3 = cycle(3);
        assert_eq!(count_colorings(&c3, &CorrespondenceAssignment::identity(&c3, 3), &Coloring::empty(3)).unwrap(), 6);
    }

    #[test]
    fn enumeration_guard() {
        let g = cycle(13);
        let c = CorrespondenceAssignment::identity(&g, 2);
        assert_eq!(
            count_colorings(&g, &c, &Coloring::empty(13)).unwrap_err(),
            DpError::TooLarge { size: 13, limit: 12 }
        );
    }
}
