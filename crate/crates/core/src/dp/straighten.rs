use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::assignment::{Coloring, CorrespondenceAssignment, Label};
use super::DpError;
use crate::plane_graph::{Graph, Vertex};

/// A permutation of `[k]` at every vertex: `perms[v][c - 1]` is the new name
/// of old label `c` at `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelabelPlan {
    perms: Vec<Vec<Label>>,
}

impl RelabelPlan {
    pub fn identity(n: usize, k: usize) -> Self {
        RelabelPlan { perms: vec![(1..=k).collect(); n] }
    }

    /// Validates that every entry is a bijection on `[k]`.
    pub fn from_perms(perms: Vec<Vec<Label>>, k: usize) -> Result<Self, DpError> {
        for p in &perms {
            let mut seen = vec![false; k + 1];
            if p.len() != k {
                return Err(DpError::NotAPermutation);
            }
            for &c in p {
                if c == 0 || c > k || seen[c] {
                    return Err(DpError::NotAPermutation);
                }
                seen[c] = true;
            }
        }
        Ok(RelabelPlan { perms })
    }

    pub fn perms(&self) -> &[Vec<Label>] {
        &self.perms
    }

    pub fn is_identity(&self) -> bool {
        self.perms.iter().all(|p| p.iter().enumerate().all(|(i, &c)| c == i + 1))
    }

    /// New name of old label `c` at `v`.
    pub fn forward(&self, v: Vertex, c: Label) -> Label {
        self.perms[v][c - 1]
    }

    /// Old name of new label `c` at `v`.
    pub fn backward(&self, v: Vertex, c: Label) -> Label {
        self.perms[v].iter().position(|&x| x == c).expect("label in range") + 1
    }

    /// Renames a colouring of the original assignment into the relabelled one.
    pub fn apply_coloring(&self, coloring: &Coloring) -> Coloring {
        let labels = coloring.labels().iter().enumerate().map(|(v, c)| c.map(|c| self.forward(v, c))).collect();
        Coloring::from_labels(labels)
    }

    /// Inverse of [`RelabelPlan::apply_coloring`].
    pub fn invert_coloring(&self, coloring: &Coloring) -> Coloring {
        let labels = coloring.labels().iter().enumerate().map(|(v, c)| c.map(|c| self.backward(v, c))).collect();
        Coloring::from_labels(labels)
    }

    pub fn apply_assignment(&self, assignment: &CorrespondenceAssignment) -> CorrespondenceAssignment {
        assignment.relabeled(&self.perms)
    }
}

/// Renames labels so that every edge of the forest `tree_edges` becomes
/// straight.
///
/// Each component of the forest is rooted at its least vertex, which keeps
/// its labels. Walking outward, a child's label `b` matched to the parent's
/// `a` is renamed to the parent's new name for `a`; unmatched labels take
/// the remaining names in increasing order.
pub fn straighten(
    graph: &Graph,
    assignment: &CorrespondenceAssignment,
    tree_edges: &[(Vertex, Vertex)],
) -> Result<(CorrespondenceAssignment, RelabelPlan), DpError> {
    let n = graph.vertex_count();
    let k = assignment.k();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut forest = vec![Vec::new(); n];
    for &(u, v) in tree_edges {
        if !graph.has_edge(u, v) {
            return Err(DpError::UnknownEdge(u, v));
        }
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return Err(DpError::NotAForest { u, v });
        }
        parent[ru] = rv;
        forest[u].push(v);
        forest[v].push(u);
    }

    let mut perms: Vec<Option<Vec<Label>>> = vec![None; n];
    for root in 0..n {
        if perms[root].is_some() {
            continue;
        }
        perms[root] = Some((1..=k).collect());
        let mut queue = VecDeque::from([root]);
        while let Some(p) = queue.pop_front() {
            for &w in &forest[p] {
                if perms[w].is_some() {
                    continue;
                }
                let pp = perms[p].as_ref().unwrap();
                let mut pw = vec![0; k];
                let mut used = vec![false; k + 1];
                for (a, b) in assignment.matching(p, w).unwrap_or_default() {
                    pw[b - 1] = pp[a - 1];
                    used[pp[a - 1]] = true;
                }
                let mut spare = (1..=k).filter(|&c| !used[c]);
                for slot in pw.iter_mut().filter(|s| **s == 0) {
                    *slot = spare.next().expect("counts match");
                }
                perms[w] = Some(pw);
                queue.push_back(w);
            }
        }
    }
    let plan = RelabelPlan { perms: perms.into_iter().map(Option::unwrap).collect() };
    Ok((plan.apply_assignment(assignment), plan))
}

/// A BFS spanning forest, rooted at the least vertex of each component.
pub fn spanning_forest(graph: &Graph) -> Vec<(Vertex, Vertex)> {
    let n = graph.vertex_count();
    let mut seen = vec![false; n];
    let mut edges = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &u in graph.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    edges.push((v, u));
                    queue.push_back(u);
                }
            }
        }
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn already_straight_is_untouched() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let c = CorrespondenceAssignment::identity(&g, 3);
        let (c2, plan) = straighten(&g, &c, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(c2, c);
        assert!(plan.is_identity());
    }

    #[test]
    fn transposition_on_a_path() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let mut c = CorrespondenceAssignment::empty(&g, 4);
        c.set_matching(0, 1, &[(1, 2), (2, 1)]).unwrap();
        let (c2, plan) = straighten(&g, &c, &[(0, 1)]).unwrap();
        assert_eq!(c2.matching(0, 1).unwrap(), vec![(1, 1), (2, 2)]);
        assert_eq!(plan.perms()[0], vec![1, 2, 3, 4]);
        assert_eq!(plan.perms()[1], vec![2, 1, 3, 4]);
        assert!(c2.is_straight(0, 1));
    }

    #[test]
    fn cycles_rejected() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let c = CorrespondenceAssignment::identity(&g, 2);
        assert_eq!(straighten(&g, &c, &[(0, 1), (1, 2), (2, 0)]).unwrap_err(), DpError::NotAForest { u: 2, v: 0 });
        assert_eq!(straighten(&g, &c, &[(0, 1), (0, 1)]).unwrap_err(), DpError::NotAForest { u: 0, v: 1 });
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let c = CorrespondenceAssignment::identity(&path, 2);
        assert_eq!(straighten(&path, &c, &[(0, 2)]).unwrap_err(), DpError::UnknownEdge(0, 2));
    }

    #[test]
    fn plan_round_trips_colorings() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let c = CorrespondenceAssignment::random(&g, 3, 9, true);
        let (_, plan) = straighten(&g, &c, &spanning_forest(&g)).unwrap();
        let phi = Coloring::total(&[1, 2, 3, 1]);
        assert_eq!(plan.invert_coloring(&plan.apply_coloring(&phi)), phi);
        assert!(RelabelPlan::from_perms(vec![vec![1, 1]], 2).is_err());
    }
}
