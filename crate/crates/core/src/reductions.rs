//! The two reducible configurations around an internal 4-vertex `v` with
//! `N[v]` off `D`, the surgery that removes them, and lifting colourings of
//! the smaller graph back.
//!
//! Neighbours are named `v1..v4` in rotation order. In both configurations
//! the edges `vv2` and `vv4` are first made straight, then `v2` and `v4` are
//! identified after deleting `{v1, v, v3}` (config I) or `{v1, v}` (config II).
//! A colouring of the reduced graph gives `v2` and `v4` the same label,
//! which blocks a single label at `v`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::dp::{residual_list, straighten, Coloring, CorrespondenceAssignment, DpError, Label, RelabelPlan};
use crate::plane_graph::{FaceId, Graph, GraphError, Plane, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("identifying {u} and {v} creates a loop")]
    SurgeryCreatesLoop { u: Vertex, v: Vertex },
    #[error("identifying {u} and {v} creates a parallel edge to {w}")]
    SurgeryCreatesParallel { u: Vertex, v: Vertex, w: Vertex },
    #[error("configuration at {0} does not match the graph")]
    NotAConfiguration(Vertex),
    #[error("no label left for {vertex} while lifting")]
    EmptyResidual { vertex: Vertex },
    #[error("reduced colouring must be total and valid")]
    InvalidReducedColoring,
    #[error(transparent)]
    Dp(#[from] DpError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConfigKind {
    ConfigI,
    ConfigII,
}

/// A reducible configuration: the centre `v` and its neighbours `v1..v4`
/// in rotation order.
///
/// Config I: `d(v1) = d(v3) = 4`. Config II: `[v v1 v2]` is the only 3-face
/// at `v` and `d(v1) = 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Config {
    pub kind: ConfigKind,
    pub v: Vertex,
    pub nbrs: [Vertex; 4],
    /// The triangle `[v v1 v2]` for config II.
    pub face: Option<FaceId>,
}

impl Config {
    pub fn deleted(&self) -> Vec<Vertex> {
        let [v1, _, v3, _] = self.nbrs;
        match self.kind {
            ConfigKind::ConfigI => vec![v1, self.v, v3],
            ConfigKind::ConfigII => vec![v1, self.v],
        }
    }

    pub fn completion_order(&self) -> Vec<Vertex> {
        let [v1, _, v3, _] = self.nbrs;
        match self.kind {
            ConfigKind::ConfigI => vec![v1, v3, self.v],
            ConfigKind::ConfigII => vec![v1, self.v],
        }
    }

    /// `(v2, v4)`; `v2` survives as the representative.
    pub fn identified(&self) -> (Vertex, Vertex) {
        (self.nbrs[1], self.nbrs[3])
    }
}

/// Internal 4-vertex with no neighbour on `D`, returning its rotation.
fn centre(plane: &Plane, v: Vertex) -> Option<[Vertex; 4]> {
    let g = plane.graph();
    if g.degree(v) != 4 || plane.on_outer(v) || plane.touches_outer(v) {
        return None;
    }
    let r = plane.plane_graph().rotation(v);
    Some([r[0], r[1], r[2], r[3]])
}

/// Every `(v, opposite pair)` with both opposite neighbours of degree 4.
pub fn find_config_i(plane: &Plane) -> Result<Vec<Config>, GraphError> {
    plane.outer()?;
    let g = plane.graph();
    let mut out = Vec::new();
    for v in 0..plane.vertex_count() {
        let Some(r) = centre(plane, v) else { continue };
        for i in 0..2 {
            if g.degree(r[i]) == 4 && g.degree(r[i + 2]) == 4 {
                let nbrs = [r[i], r[i + 1], r[i + 2], r[(i + 3) % 4]];
                out.push(Config { kind: ConfigKind::ConfigI, v, nbrs, face: None });
            }
        }
    }
    Ok(out)
}

/// Every `(v, f, v1)` where `f` is the only 3-face at `v` and `v1` is a
/// second 4-vertex on `f`.
pub fn find_config_ii(plane: &Plane) -> Result<Vec<Config>, GraphError> {
    plane.outer()?;
    let g = plane.graph();
    let mut out = Vec::new();
    for v in 0..plane.vertex_count() {
        let Some(r) = centre(plane, v) else { continue };
        let tris: Vec<FaceId> =
            plane.face_set().incident_faces(v).iter().copied().filter(|&f| plane.face(f).degree() == 3).collect();
        let [f] = tris[..] else { continue };
        let others: Vec<Vertex> = plane.face(f).vertices().into_iter().filter(|&x| x != v).collect();
        for &v1 in &others {
            if g.degree(v1) != 4 {
                continue;
            }
            let v2 = others.iter().copied().find(|&x| x != v1).expect("two other corners");
            let i = r.iter().position(|&x| x == v1).expect("v1 is a neighbour");
            let nbrs = if r[(i + 1) % 4] == v2 {
                [r[i], r[(i + 1) % 4], r[(i + 2) % 4], r[(i + 3) % 4]]
            } else {
                [r[i], r[(i + 3) % 4], r[(i + 2) % 4], r[(i + 1) % 4]]
            };
            out.push(Config { kind: ConfigKind::ConfigII, v, nbrs, face: Some(f) });
        }
    }
    Ok(out)
}

fn validate(plane: &Plane, config: &Config) -> Result<(), ReductionError> {
    let bad = ReductionError::NotAConfiguration(config.v);
    let g = plane.graph();
    let Some(r) = centre(plane, config.v) else { return Err(bad) };
    let set: BTreeSet<_> = r.iter().collect();
    if set != config.nbrs.iter().collect() {
        return Err(bad);
    }
    let [v1, v2, v3, v4] = config.nbrs;
    let i = r.iter().position(|&x| x == v1).unwrap();
    let forwards = r[(i + 1) % 4] == v2 && r[(i + 3) % 4] == v4;
    let backwards = r[(i + 3) % 4] == v2 && r[(i + 1) % 4] == v4;
    if r[(i + 2) % 4] != v3 || !(forwards || backwards) {
        return Err(bad);
    }
    let ok = match config.kind {
        ConfigKind::ConfigI => g.degree(v1) == 4 && g.degree(v3) == 4,
        ConfigKind::ConfigII => {
            g.degree(v1) == 4
                && plane.incident_triangle_count(config.v) == 1
                && config.face.is_some_and(|f| {
                    let face = plane.face(f);
                    face.degree() == 3 && [config.v, v1, v2].iter().all(|&x| face.contains_vertex(x))
                })
        }
    };
    if ok {
        Ok(())
    } else {
        Err(bad)
    }
}

/// How to turn a colouring of the reduced graph into one of the original.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionPlan {
    pub config: Config,
    pub deleted: Vec<Vertex>,
    /// `(v2, v4)`; `v2`'s new index stands for both.
    pub identified: (Vertex, Vertex),
    pub relabel: RelabelPlan,
    pub completion_order: Vec<Vertex>,
    /// Index in the reduced graph of each original vertex, if it survives.
    pub vertex_map: Vec<Option<Vertex>>,
    /// Reduced-graph vertices adjacent to a deleted vertex. Lifting reads
    /// the reduced colouring only here; everywhere else it is copied.
    pub interface: Vec<Vertex>,
    pub k: usize,
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub graph: Graph,
    pub assignment: CorrespondenceAssignment,
    pub plan: ReductionPlan,
}

/// Straightens `vv2`, `vv4`, deletes and identifies.
///
/// The preconditions that rule out surgery failures (class membership, no
/// short separating cycles) are not checked here; a loop or parallel edge
/// is reported instead.
pub fn reduce(
    plane: &Plane,
    assignment: &CorrespondenceAssignment,
    config: &Config,
) -> Result<Reduction, ReductionError> {
    plane.outer()?;
    validate(plane, config)?;
    let g = plane.graph();
    let v = config.v;
    let (v2, v4) = config.identified();
    let (straight, relabel) = straighten(g, assignment, &[(v, v2), (v, v4)])?;
    debug_assert!(straight.is_straight(v, v2) && straight.is_straight(v, v4));

    let deleted: BTreeSet<Vertex> = config.deleted().into_iter().collect();
    if g.has_edge(v2, v4) {
        return Err(ReductionError::SurgeryCreatesLoop { u: v2, v: v4 });
    }
    if let Some(&w) = g.neighbors(v2).iter().filter(|w| !deleted.contains(w)).find(|&&w| g.has_edge(w, v4)) {
        return Err(ReductionError::SurgeryCreatesParallel { u: v2, v: v4, w });
    }

    let n = g.vertex_count();
    let mut vertex_map = vec![None; n];
    let mut next = 0;
    for (x, slot) in vertex_map.iter_mut().enumerate() {
        if !deleted.contains(&x) && x != v4 {
            *slot = Some(next);
            next += 1;
        }
    }
    vertex_map[v4] = vertex_map[v2];

    let mut edges = Vec::new();
    for (a, b) in g.edges() {
        if let (Some(x), Some(y)) = (vertex_map[a], vertex_map[b]) {
            if !deleted.contains(&a) && !deleted.contains(&b) {
                edges.push(((a, b), (x, y)));
            }
        }
    }
    let reduced = Graph::from_edges(next, &edges.iter().map(|e| e.1).collect::<Vec<_>>())?;
    let mut reduced_c = CorrespondenceAssignment::empty(&reduced, assignment.k());
    for ((a, b), (x, y)) in edges {
        let pairs = straight.matching(a, b).unwrap_or_default();
        reduced_c.set_matching(x, y, &pairs)?;
    }

    let interface: BTreeSet<Vertex> =
        deleted.iter().flat_map(|&d| g.neighbors(d).iter().filter_map(|&x| vertex_map[x])).collect();

    Ok(Reduction {
        graph: reduced,
        assignment: reduced_c,
        plan: ReductionPlan {
            config: *config,
            deleted: config.deleted(),
            identified: (v2, v4),
            relabel,
            completion_order: config.completion_order(),
            vertex_map,
            interface: interface.into_iter().collect(),
            k: assignment.k(),
        },
    })
}

/// Residual list sizes seen while completing, in completion order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftTrace {
    /// Residual sizes of the completion vertices once only surviving vertices
    /// are coloured.
    pub initial_residuals: Vec<(Vertex, usize)>,
    /// Residual size of each completion vertex at the moment it is coloured.
    pub residuals: Vec<(Vertex, usize)>,
}

/// Lifts a colouring of the reduced graph to the original graph.
pub fn lift(
    graph: &Graph,
    assignment: &CorrespondenceAssignment,
    plan: &ReductionPlan,
    reduced: &Coloring,
) -> Result<Coloring, ReductionError> {
    lift_traced(graph, assignment, plan, reduced).map(|(c, _)| c)
}

pub fn lift_traced(
    graph: &Graph,
    assignment: &CorrespondenceAssignment,
    plan: &ReductionPlan,
    reduced: &Coloring,
) -> Result<(Coloring, LiftTrace), ReductionError> {
    if !reduced.is_total() || plan.vertex_map.len() != graph.vertex_count() {
        return Err(ReductionError::InvalidReducedColoring);
    }
    let straight = plan.relabel.apply_assignment(assignment);
    let mut phi = Coloring::empty(graph.vertex_count());
    for (x, slot) in plan.vertex_map.iter().enumerate() {
        if let Some(i) = slot {
            let c: Label = reduced.get(*i).ok_or(ReductionError::InvalidReducedColoring)?;
            if c == 0 || c > plan.k {
                return Err(ReductionError::InvalidReducedColoring);
            }
            phi.set(x, c);
        }
    }
    let mut trace = LiftTrace { initial_residuals: Vec::new(), residuals: Vec::new() };
    for &x in &plan.completion_order {
        trace.initial_residuals.push((x, residual_list(graph, &straight, &phi, x)?.len()));
    }
    for &x in &plan.completion_order {
        let options = residual_list(graph, &straight, &phi, x)?;
        trace.residuals.push((x, options.len()));
        let &c = options.first().ok_or(ReductionError::EmptyResidual { vertex: x })?;
        phi.set(x, c);
    }
    Ok((plan.relabel.invert_coloring(&phi), trace))
}
