//! Plane graphs as rotation systems.
//!
//! A [`PlaneGraph`] stores, for every vertex, its neighbours in clockwise
//! order around that vertex. Faces are never part of the input: they are
//! traced from the rotation system by following, after the dart `u -> v`,
//! the dart `v -> w` where `w` is the clockwise successor of `u` around `v`.
//! Reversing every rotation traces the same faces with reversed boundaries,
//! so nothing downstream depends on the orientation convention.
//!
//! [`Graph`] is the abstract simple graph underneath. Colouring code only
//! needs adjacency, and reduced graphs produced by vertex identification
//! carry no embedding at all, so they are plain [`Graph`]s.
//!
//! [`Plane`] bundles a plane graph with its traced faces and an optional
//! designated outer face `D`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {vertex} lists neighbour {neighbor}, but the graph has {n} vertices")]
    OutOfRange { vertex: Vertex, neighbor: Vertex, n: usize },
    #[error("loop edge {u}-{v}")]
    LoopEdge { u: Vertex, v: Vertex },
    #[error("parallel edge {u}-{v}")]
    ParallelEdge { u: Vertex, v: Vertex },
    #[error("asymmetric adjacency: {u} lists {v} but {v} does not list {u}")]
    AsymmetricAdjacency { u: Vertex, v: Vertex },
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("graph has no vertices")]
    Empty,
    #[error("unknown face {0}")]
    UnknownFace(FaceId),
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("unknown edge {0}-{1}")]
    UnknownEdge(Vertex, Vertex),
    #[error("outer face has not been designated")]
    OuterFaceUnset,
    #[error("no face has boundary {0:?}")]
    NoSuchBoundary(Vec<Vertex>),
}

/// Index of a traced face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FaceId(pub usize);

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.0)
    }
}

/// Abstract simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Graph {
    /// Validates symmetric adjacency lists without loops or repeated neighbours.
    pub fn from_adjacency(adj: Vec<Vec<Vertex>>) -> Result<Self, GraphError> {
        let n = adj.len();
        let mut seen = vec![usize::MAX; n];
        for (v, list) in adj.iter().enumerate() {
            for &u in list {
                if u >= n {
                    return Err(GraphError::OutOfRange { vertex: v, neighbor: u, n });
                }
                if u == v {
                    return Err(GraphError::LoopEdge { u: v, v });
                }
                if seen[u] == v {
                    return Err(GraphError::ParallelEdge { u: v, v: u });
                }
                seen[u] = v;
            }
        }
        let mut degree_sum = 0;
        for (v, list) in adj.iter().enumerate() {
            degree_sum += list.len();
            for &u in list {
                if !adj[u].contains(&v) {
                    return Err(GraphError::AsymmetricAdjacency { u: v, v: u });
                }
            }
        }
        Ok(Graph { adj, edge_count: degree_sum / 2 })
    }

    /// Builds a graph from an edge list. Neighbour order follows edge order.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange { vertex: u.min(v), neighbor: u.max(v), n });
            }
            if u == v {
                return Err(GraphError::LoopEdge { u, v });
            }
            if adj[u].contains(&v) {
                return Err(GraphError::ParallelEdge { u, v });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Graph { adj, edge_count: edges.len() })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.adj.len() && self.adj[u].contains(&v)
    }

    /// All edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out: Vec<_> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.adj.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if comp[u] == usize::MAX {
                        comp[u] = id;
                        members.push(u);
                        queue.push_back(u);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Cut vertices (articulation points), sorted.
    pub fn cut_vertices(&self) -> Vec<Vertex> {
        let n = self.adj.len();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut timer = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // Iterative DFS: (vertex, parent, next neighbour index).
            let mut stack = vec![(root, usize::MAX, 0usize)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            while let Some(top) = stack.len().checked_sub(1) {
                let (v, parent, idx) = stack[top];
                if idx < self.adj[v].len() {
                    let u = self.adj[v][idx];
                    stack[top].2 += 1;
                    if disc[u] == usize::MAX {
                        disc[u] = timer;
                        low[u] = timer;
                        timer += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((u, v, 0));
                    } else if u != parent {
                        low[v] = low[v].min(disc[u]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if p != root && low[v] >= disc[p] {
                            is_cut[p] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }
}

/// A simple graph together with a clockwise rotation at every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    graph: Graph,
}

impl PlaneGraph {
    /// Validates a rotation system: `rotations[v]` lists the neighbours of
    /// `v` in clockwise order.
    pub fn build(rotations: Vec<Vec<Vertex>>) -> Result<Self, GraphError> {
        Ok(PlaneGraph { graph: Graph::from_adjacency(rotations)? })
    }

    /// Rotation system of a crossing-free straight-line drawing.
    ///
    /// Neighbours are sorted clockwise by angle. Whether the drawing really
    /// is crossing-free is not checked here; tracing faces and checking
    /// Euler's formula catches most mistakes.
    pub fn from_straight_line(points: &[(f64, f64)], edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let graph = Graph::from_edges(points.len(), edges)?;
        let mut rotations = graph.adj;
        for (v, list) in rotations.iter_mut().enumerate() {
            let (x0, y0) = points[v];
            let angle = |u: &Vertex| {
                let (x, y) = points[*u];
                (y - y0).atan2(x - x0)
            };
            list.sort_by(|a, b| angle(b).total_cmp(&angle(a)));
        }
        PlaneGraph::build(rotations)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        self.graph.neighbors(v)
    }

    pub fn rotations(&self) -> &[Vec<Vertex>] {
        &self.graph.adj
    }

    /// Clockwise successor of `u` in the rotation at `v`.
    pub fn successor(&self, v: Vertex, u: Vertex) -> Option<Vertex> {
        let rot = self.rotation(v);
        let i = rot.iter().position(|&w| w == u)?;
        Some(rot[(i + 1) % rot.len()])
    }

    /// Traces every face of the embedding.
    pub fn trace_faces(&self) -> Result<FaceSet, GraphError> {
        let n = self.graph.vertex_count();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let components = self.graph.components().len();
        if components > 1 {
            return Err(GraphError::Disconnected { components });
        }
        let rot = &self.graph.adj;
        let mut offset = Vec::with_capacity(n + 1);
        offset.push(0);
        for list in rot {
            offset.push(offset.last().unwrap() + list.len());
        }
        // position of v inside rot(u), keyed by the dart (u, v)
        let mut pos: HashMap<(Vertex, Vertex), usize> = HashMap::with_capacity(offset[n]);
        for (u, list) in rot.iter().enumerate() {
            for (i, &v) in list.iter().enumerate() {
                pos.insert((u, v), i);
            }
        }

        let mut dart_face = HashMap::with_capacity(offset[n]);
        let mut faces = Vec::new();
        if n == 1 {
            faces.push(Face { id: FaceId(0), darts: Vec::new() });
        }
        for u in 0..n {
            for &v in &rot[u] {
                if dart_face.contains_key(&(u, v)) {
                    continue;
                }
                let id = FaceId(faces.len());
                let mut darts = Vec::new();
                let (mut a, mut b) = (u, v);
                loop {
                    dart_face.insert((a, b), id);
                    darts.push((a, b));
                    let i = pos[&(b, a)];
                    let next = rot[b][(i + 1) % rot[b].len()];
                    a = b;
                    b = next;
                    if (a, b) == (u, v) {
                        break;
                    }
                }
                faces.push(Face { id, darts });
            }
        }

        let mut vertex_faces = vec![Vec::new(); n];
        for (v, list) in rot.iter().enumerate() {
            for &u in list {
                let f = dart_face[&(v, u)];
                if !vertex_faces[v].contains(&f) {
                    vertex_faces[v].push(f);
                }
            }
        }
        if n == 1 {
            vertex_faces[0].push(FaceId(0));
        }
        Ok(FaceSet { faces, dart_face, vertex_faces })
    }
}

/// A face, given by the directed edges of its boundary walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    pub darts: Vec<(Vertex, Vertex)>,
}

impl Face {
    /// Boundary length in directed edges.
    pub fn degree(&self) -> usize {
        self.darts.len()
    }

    /// Boundary walk as a vertex sequence `[v1 v2 ... vk]`.
    pub fn vertices(&self) -> Vec<Vertex> {
        self.darts.iter().map(|d| d.0).collect()
    }

    /// Distinct boundary vertices `b(f)`.
    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.darts.iter().map(|d| d.0).collect()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.darts.iter().any(|d| d.0 == v)
    }

    /// True when the boundary walk visits no vertex twice.
    pub fn is_simple_cycle(&self) -> bool {
        self.degree() >= 3 && self.vertex_set().len() == self.degree()
    }

    /// Whether `seq` describes this boundary up to rotation and reversal.
    pub fn matches_boundary(&self, seq: &[Vertex]) -> bool {
        let own = self.vertices();
        if own.len() != seq.len() {
            return false;
        }
        if own.is_empty() {
            return true;
        }
        let k = own.len();
        let rev: Vec<_> = own.iter().rev().copied().collect();
        (0..k).any(|s| (0..k).all(|i| own[(s + i) % k] == seq[i]) || (0..k).all(|i| rev[(s + i) % k] == seq[i]))
    }
}

/// The faces of a traced embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSet {
    faces: Vec<Face>,
    dart_face: HashMap<(Vertex, Vertex), FaceId>,
    vertex_faces: Vec<Vec<FaceId>>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn get(&self, id: FaceId) -> Option<&Face> {
        self.faces.get(id.0)
    }

    /// Face on whose boundary the dart `u -> v` lies.
    pub fn face_of_dart(&self, u: Vertex, v: Vertex) -> Option<FaceId> {
        self.dart_face.get(&(u, v)).copied()
    }

    /// Distinct faces around `v`, in rotation order.
    pub fn incident_faces(&self, v: Vertex) -> &[FaceId] {
        &self.vertex_faces[v]
    }
}

/// A traced plane graph with an optional outer face `D`.
#[derive(Debug, Clone)]
pub struct Plane {
    graph: PlaneGraph,
    faces: FaceSet,
    outer: Option<FaceId>,
    on_outer: Vec<bool>,
}

impl Plane {
    pub fn new(graph: PlaneGraph) -> Result<Self, GraphError> {
        let faces = graph.trace_faces()?;
        let n = graph.graph().vertex_count();
        Ok(Plane { graph, faces, outer: None, on_outer: vec![false; n] })
    }

    /// Designates `face` as the outer face `D`.
    pub fn set_outer(mut self, face: FaceId) -> Result<Self, GraphError> {
        let f = self.faces.get(face).ok_or(GraphError::UnknownFace(face))?;
        let mut on_outer = vec![false; self.graph.graph().vertex_count()];
        for v in f.vertices() {
            on_outer[v] = true;
        }
        self.on_outer = on_outer;
        self.outer = Some(face);
        Ok(self)
    }

    /// Designates as `D` the face whose boundary walk is `boundary`, read in
    /// either direction from any starting vertex.
    pub fn with_outer_boundary(self, boundary: &[Vertex]) -> Result<Self, GraphError> {
        let id = self
            .faces
            .faces()
            .iter()
            .find(|f| f.matches_boundary(boundary))
            .map(|f| f.id)
            .ok_or_else(|| GraphError::NoSuchBoundary(boundary.to_vec()))?;
        self.set_outer(id)
    }

    pub fn plane_graph(&self) -> &PlaneGraph {
        &self.graph
    }

    pub fn graph(&self) -> &Graph {
        self.graph.graph()
    }

    pub fn face_set(&self) -> &FaceSet {
        &self.faces
    }

    pub fn faces(&self) -> &[Face] {
        self.faces.faces()
    }

    /// Panics on an id that did not come from this plane.
    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces.faces()[id.0]
    }

    pub fn vertex_count(&self) -> usize {
        self.graph().vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph().edge_count()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// `V - E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn outer(&self) -> Result<FaceId, GraphError> {
        self.outer.ok_or(GraphError::OuterFaceUnset)
    }

    pub fn outer_face(&self) -> Result<&Face, GraphError> {
        Ok(self.face(self.outer()?))
    }

    pub fn has_outer(&self) -> bool {
        self.outer.is_some()
    }

    /// Whether `v` lies on `D`. False while no outer face is designated.
    pub fn on_outer(&self, v: Vertex) -> bool {
        self.on_outer[v]
    }

    /// `N(v) ∩ D ≠ ∅`.
    pub fn touches_outer(&self, v: Vertex) -> bool {
        self.graph().neighbors(v).iter().any(|&u| self.on_outer[u])
    }

    pub fn face_meets_outer(&self, f: FaceId) -> bool {
        self.face(f).darts.iter().any(|d| self.on_outer[d.0])
    }

    pub fn degree(&self, v: Vertex) -> Result<usize, GraphError> {
        if v >= self.vertex_count() {
            return Err(GraphError::UnknownVertex(v));
        }
        Ok(self.graph().degree(v))
    }

    pub fn face_degree(&self, f: FaceId) -> Result<usize, GraphError> {
        self.faces.get(f).map(Face::degree).ok_or(GraphError::UnknownFace(f))
    }

    pub fn incident_faces(&self, v: Vertex) -> Result<&[FaceId], GraphError> {
        if v >= self.vertex_count() {
            return Err(GraphError::UnknownVertex(v));
        }
        Ok(self.faces.incident_faces(v))
    }

    /// Faces to the left of `u -> v` and of `v -> u`.
    pub fn faces_sharing_edge(&self, u: Vertex, v: Vertex) -> Result<(FaceId, FaceId), GraphError> {
        match (self.faces.face_of_dart(u, v), self.faces.face_of_dart(v, u)) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(GraphError::UnknownEdge(u, v)),
        }
    }

    /// Faces other than `D` (all faces while `D` is unset).
    pub fn internal_faces(&self) -> impl Iterator<Item = &Face> + '_ {
        let outer = self.outer;
        self.faces().iter().filter(move |f| Some(f.id) != outer)
    }

    /// Vertices not on `D`.
    pub fn internal_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertex_count()).filter(move |&v| !self.on_outer[v])
    }

    /// Number of 3-faces at `v`.
    pub fn incident_triangle_count(&self, v: Vertex) -> usize {
        self.faces.incident_faces(v).iter().filter(|&&f| self.face(f).degree() == 3).count()
    }
}
