//! Structural predicates on plane graphs.
//!
//! Two views are kept apart on purpose of the definitions they serve: the
//! class condition (no 4-cycle sharing an edge with each of two distinct
//! triangles) is about *cycles* of the abstract graph, while face classes,
//! sinks and special faces are about *faces* of the embedding relative to
//! the outer face `D`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::plane_graph::{FaceId, Graph, GraphError, Plane, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("S must be a single vertex or the vertex set of a face with at most 6 vertices, got {0:?}")]
    SBad(Vec<Vertex>),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A simple cycle as a vertex sequence, starting at its least vertex and
/// oriented so that the second vertex is smaller than the last.
pub type Cycle = Vec<Vertex>;

fn cycle_edges(cycle: &[Vertex]) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
    (0..cycle.len()).map(move |i| {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        (a.min(b), a.max(b))
    })
}

/// Every simple cycle of length at most `max_len`, each reported once,
/// sorted by length and then lexicographically.
pub fn enumerate_cycles(graph: &Graph, max_len: usize) -> Vec<Cycle> {
    let n = graph.vertex_count();
    let mut out = Vec::new();
    let mut on_path = vec![false; n];
    let mut path = Vec::with_capacity(max_len);
    fn extend(
        graph: &Graph,
        start: Vertex,
        max_len: usize,
        path: &mut Vec<Vertex>,
        on_path: &mut [bool],
        out: &mut Vec<Cycle>,
    ) {
        let last = *path.last().unwrap();
        for &u in graph.neighbors(last) {
            if u == start && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            } else if u > start && !on_path[u] && path.len() < max_len {
                on_path[u] = true;
                path.push(u);
                extend(graph, start, max_len, path, on_path, out);
                path.pop();
                on_path[u] = false;
            }
        }
    }
    for s in 0..n {
        path.clear();
        path.push(s);
        on_path[s] = true;
        extend(graph, s, max_len, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// All 3-cycles, as sorted vertex triples.
pub fn triangles(graph: &Graph) -> Vec<Cycle> {
    let mut out = Vec::new();
    for (u, v) in graph.edges() {
        for &w in graph.neighbors(v) {
            if w > v && graph.has_edge(u, w) {
                out.push(vec![u, v, w]);
            }
        }
    }
    out.sort();
    out
}

fn triangles_by_edge(tris: &[Cycle]) -> HashMap<(Vertex, Vertex), Vec<usize>> {
    let mut map: HashMap<_, Vec<usize>> = HashMap::new();
    for (i, t) in tris.iter().enumerate() {
        for e in cycle_edges(t) {
            map.entry(e).or_default().push(i);
        }
    }
    map
}

/// Unordered pairs of distinct triangles sharing an edge.
pub fn adjacent_triangles(graph: &Graph) -> Vec<(Cycle, Cycle)> {
    let tris = triangles(graph);
    let by_edge = triangles_by_edge(&tris);
    let mut pairs = BTreeSet::new();
    for list in by_edge.values() {
        for (i, &a) in list.iter().enumerate() {
            for &b in &list[i + 1..] {
                pairs.insert((a.min(b), a.max(b)));
            }
        }
    }
    pairs.into_iter().map(|(a, b)| (tris[a].clone(), tris[b].clone())).collect()
}

/// A 4-cycle together with two distinct triangles, each sharing an edge with it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassWitness {
    pub four_cycle: Cycle,
    pub triangles: [Cycle; 2],
}

impl ClassWitness {
    /// Edges of the witness cycles, deduplicated.
    pub fn edges(&self) -> BTreeSet<(Vertex, Vertex)> {
        cycle_edges(&self.four_cycle)
            .chain(cycle_edges(&self.triangles[0]))
            .chain(cycle_edges(&self.triangles[1]))
            .collect()
    }
}

/// `None` when no 4-cycle is adjacent to two triangles, otherwise the first
/// witness in cycle order.
pub fn class_check(graph: &Graph) -> Option<ClassWitness> {
    let tris = triangles(graph);
    if tris.len() < 2 {
        return None;
    }
    let by_edge = triangles_by_edge(&tris);
    for q in enumerate_cycles(graph, 4).into_iter().filter(|c| c.len() == 4) {
        let mut touching = BTreeSet::new();
        for e in cycle_edges(&q) {
            if let Some(list) = by_edge.get(&e) {
                touching.extend(list.iter().copied());
            }
        }
        let mut it = touching.into_iter();
        if let (Some(a), Some(b)) = (it.next(), it.next()) {
            return Some(ClassWitness { four_cycle: q, triangles: [tris[a].clone(), tris[b].clone()] });
        }
    }
    None
}

/// A cycle with vertices strictly on both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparatingCycle {
    pub cycle: Cycle,
    pub interior: Vec<Vertex>,
    pub exterior: Vec<Vertex>,
}

/// Splits the vertices off `cycle` into the side not containing `D` and
/// the side containing it, using connectivity of faces across edges that
/// are not on the cycle.
pub fn cycle_sides(plane: &Plane, cycle: &[Vertex]) -> Result<(Vec<Vertex>, Vec<Vertex>), GraphError> {
    let outer = plane.outer()?;
    let on_cycle: BTreeSet<(Vertex, Vertex)> = cycle_edges(cycle).collect();
    let mut parent: Vec<usize> = (0..plane.face_count()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (u, v) in plane.graph().edges() {
        if on_cycle.contains(&(u, v)) {
            continue;
        }
        let (a, b) = plane.faces_sharing_edge(u, v)?;
        let (ra, rb) = (find(&mut parent, a.0), find(&mut parent, b.0));
        parent[ra] = rb;
    }
    let outer_root = find(&mut parent, outer.0);
    let members: BTreeSet<Vertex> = cycle.iter().copied().collect();
    let (mut interior, mut exterior) = (Vec::new(), Vec::new());
    for v in 0..plane.vertex_count() {
        if members.contains(&v) {
            continue;
        }
        let f = plane.face_set().incident_faces(v)[0];
        if find(&mut parent, f.0) == outer_root {
            exterior.push(v);
        } else {
            interior.push(v);
        }
    }
    Ok((interior, exterior))
}

/// Separating cycles of length `3..=kmax`.
pub fn separating_cycles(plane: &Plane, kmax: usize) -> Result<Vec<SeparatingCycle>, GraphError> {
    plane.outer()?;
    let mut out = Vec::new();
    for cycle in enumerate_cycles(plane.graph(), kmax) {
        let (interior, exterior) = cycle_sides(plane, &cycle)?;
        if !interior.is_empty() && !exterior.is_empty() {
            out.push(SeparatingCycle { cycle, interior, exterior });
        }
    }
    Ok(out)
}

/// `F_k` (boundary avoids `D`) or `F_k'` (boundary meets `D`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct FaceClass {
    pub degree: usize,
    pub meets_outer: bool,
}

impl Serialize for FaceClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let tag = if self.meets_outer { format!("F{}'", self.degree) } else { format!("F{}", self.degree) };
        s.serialize_str(&tag)
    }
}

/// Class of every internal face.
pub fn classify_faces(plane: &Plane) -> Result<BTreeMap<FaceId, FaceClass>, GraphError> {
    plane.outer()?;
    Ok(plane
        .internal_faces()
        .map(|f| (f.id, FaceClass { degree: f.degree(), meets_outer: plane.face_meets_outer(f.id) }))
        .collect())
}

/// A `(4,4,4,4,4+)`-face in `F_5` each of whose edges lies on a 3-face,
/// with the apex of each of those 3-faces (its sources), in boundary order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sink {
    pub face: FaceId,
    pub sources: Vec<Vertex>,
}

pub fn find_sinks(plane: &Plane) -> Result<Vec<Sink>, GraphError> {
    plane.outer()?;
    let g = plane.graph();
    let mut out = Vec::new();
    for f in plane.internal_faces() {
        if f.degree() != 5 || !f.is_simple_cycle() || plane.face_meets_outer(f.id) {
            continue;
        }
        let degrees: Vec<usize> = f.vertices().iter().map(|&v| g.degree(v)).collect();
        if degrees.iter().any(|&d| d < 4) || degrees.iter().filter(|&&d| d == 4).count() < 4 {
            continue;
        }
        let mut sources = Vec::with_capacity(5);
        for &(a, b) in &f.darts {
            let other = plane.face_set().face_of_dart(b, a).expect("traced dart");
            let tri = plane.face(other);
            if tri.degree() != 3 {
                break;
            }
            sources.extend(tri.vertices().into_iter().filter(|&x| x != a && x != b));
        }
        if sources.len() == 5 {
            out.push(Sink { face: f.id, sources });
        }
    }
    Ok(out)
}

/// Sinks indexed by source vertex.
pub fn sinks_by_source(sinks: &[Sink]) -> BTreeMap<Vertex, Vec<FaceId>> {
    let mut map: BTreeMap<Vertex, Vec<FaceId>> = BTreeMap::new();
    for s in sinks {
        for &v in &s.sources {
            let list = map.entry(v).or_default();
            if !list.contains(&s.face) {
                list.push(s.face);
            }
        }
    }
    map
}

/// 3-faces in `F_3` containing a 4-vertex `v` with at most one incident
/// 3-face and no neighbour on `D`.
pub fn special_faces(plane: &Plane) -> Result<Vec<FaceId>, GraphError> {
    plane.outer()?;
    let g = plane.graph();
    Ok(plane
        .internal_faces()
        .filter(|f| f.degree() == 3 && !plane.face_meets_outer(f.id))
        .filter(|f| {
            f.vertices()
                .into_iter()
                .any(|v| g.degree(v) == 4 && plane.incident_triangle_count(v) <= 1 && !plane.touches_outer(v))
        })
        .map(|f| f.id)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AuditWitness {
    SCoversGraph,
    Disconnected { components: usize },
    CutVertex { vertex: Vertex },
    LowDegree { vertex: Vertex, degree: usize },
    SeparatingCycle { cycle: Cycle, interior: Vec<Vertex>, exterior: Vec<Vertex> },
    SNotOuterBoundary { s: Vec<Vertex>, outer: Vec<Vertex> },
    OuterNotACycle { outer: Vec<Vertex> },
    Chord { u: Vertex, v: Vertex },
    CommonNeighbor { u: Vertex, v: Vertex, w: Vertex },
    SinkWithOuterSources { face: FaceId, outer_sources: Vec<Vertex> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseResult {
    pub clause: char,
    pub passed: bool,
    pub witness: Option<AuditWitness>,
}

impl ClauseResult {
    fn from(clause: char, witness: Option<AuditWitness>) -> Self {
        ClauseResult { clause, passed: witness.is_none(), witness }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Audit {
    pub clauses: Vec<ClauseResult>,
}

impl Audit {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn clause(&self, id: char) -> Option<&ClauseResult> {
        self.clauses.iter().find(|c| c.clause == id)
    }

    pub fn violations(&self) -> impl Iterator<Item = &ClauseResult> {
        self.clauses.iter().filter(|c| !c.passed)
    }
}

/// Checks the structural properties (a)-(g) a minimal counterexample with
/// precoloured set `S` would have, reporting a witness for each failure.
pub fn audit(plane: &Plane, s: &BTreeSet<Vertex>) -> Result<Audit, StructureError> {
    let outer_id = plane.outer()?;
    let g = plane.graph();
    let bad = || StructureError::SBad(s.iter().copied().collect());
    if s.is_empty() || s.len() > 6 || s.iter().any(|&v| v >= g.vertex_count()) {
        return Err(bad());
    }
    if s.len() > 1 && !plane.faces().iter().any(|f| &f.vertex_set() == s) {
        return Err(bad());
    }
    let outer = plane.face(outer_id);
    let outer_seq = outer.vertices();
    let outer_set = outer.vertex_set();

    let a = (s.len() == g.vertex_count()).then_some(AuditWitness::SCoversGraph);

    let components = g.components().len();
    let b = if components > 1 {
        Some(AuditWitness::Disconnected { components })
    } else {
        g.cut_vertices().first().map(|&vertex| AuditWitness::CutVertex { vertex })
    };

    let c = (0..g.vertex_count())
        .find(|v| !s.contains(v) && g.degree(*v) < 4)
        .map(|vertex| AuditWitness::LowDegree { vertex, degree: g.degree(vertex) });

    let d = separating_cycles(plane, 6)?.into_iter().next().map(|sc| AuditWitness::SeparatingCycle {
        cycle: sc.cycle,
        interior: sc.interior,
        exterior: sc.exterior,
    });

    let e = if s != &outer_set {
        Some(AuditWitness::SNotOuterBoundary { s: s.iter().copied().collect(), outer: outer_seq.clone() })
    } else if !outer.is_simple_cycle() {
        Some(AuditWitness::OuterNotACycle { outer: outer_seq.clone() })
    } else {
        let k = outer_seq.len();
        let mut chord = None;
        'outer: for i in 0..k {
            for j in i + 2..k {
                if i == 0 && j == k - 1 {
                    continue;
                }
                let (u, v) = (outer_seq[i], outer_seq[j]);
                if g.has_edge(u, v) {
                    chord = Some(AuditWitness::Chord { u: u.min(v), v: u.max(v) });
                    break 'outer;
                }
            }
        }
        chord
    };

    let mut f = None;
    'pairs: for (i, &u) in outer_set.iter().enumerate() {
        for &v in outer_set.iter().skip(i + 1) {
            if g.has_edge(u, v) {
                continue;
            }
            let mut common: Vec<Vertex> =
                g.neighbors(u).iter().copied().filter(|&w| !outer_set.contains(&w) && g.has_edge(v, w)).collect();
            common.sort_unstable();
            if let Some(&w) = common.first() {
                f = Some(AuditWitness::CommonNeighbor { u, v, w });
                break 'pairs;
            }
        }
    }

    let gw = find_sinks(plane)?.into_iter().find_map(|sink| {
        let outer_sources: Vec<Vertex> = sink.sources.iter().copied().filter(|v| outer_set.contains(v)).collect();
        (outer_sources.len() >= 2).then_some(AuditWitness::SinkWithOuterSources { face: sink.face, outer_sources })
    });

    Ok(Audit {
        clauses: vec![
            ClauseResult::from('a', a),
            ClauseResult::from('b', b),
            ClauseResult::from('c', c),
            ClauseResult::from('d', d),
            ClauseResult::from('e', e),
            ClauseResult::from('f', f),
            ClauseResult::from('g', gw),
        ],
    })
}

/// Everything the structure module knows about one plane graph.
#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub class_witness: Option<ClassWitness>,
    pub adjacent_triangle_pairs: Vec<(Cycle, Cycle)>,
    pub separating_cycles: Vec<SeparatingCycle>,
    pub sinks: Vec<Sink>,
    pub special_faces: Vec<FaceId>,
    pub face_classes: BTreeMap<FaceId, FaceClass>,
    pub audit: Option<Audit>,
}

/// Full report; the audit runs only when `s` is given.
pub fn report(plane: &Plane, s: Option<&BTreeSet<Vertex>>) -> Result<StructureReport, StructureError> {
    Ok(StructureReport {
        class_witness: class_check(plane.graph()),
        adjacent_triangle_pairs: adjacent_triangles(plane.graph()),
        separating_cycles: separating_cycles(plane, 6)?,
        sinks: find_sinks(plane)?,
        special_faces: special_faces(plane)?,
        face_classes: classify_faces(plane)?,
        audit: s.map(|s| audit(plane, s)).transpose()?,
    })
}
