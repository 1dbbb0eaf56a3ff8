//! Seeded instance generators and small named plane graphs.
//!
//! Random instances start from a stacked triangulation mixed by edge flips;
//! edges are then deleted from the rotation system directly, so the
//! embedding stays planar by construction.

mod gadgets;

pub use gadgets::*;

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::plane_graph::{Graph, GraphError, Plane, PlaneGraph, Vertex};
use crate::structure::class_check;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("generator gave up after {attempts} attempts")]
    GenerationStalled { attempts: usize },
    #[error("need at least {min} vertices, got {n}")]
    TooSmall { n: usize, min: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

type Rotations = Vec<Vec<Vertex>>;

fn succ(rot: &Rotations, v: Vertex, u: Vertex) -> Vertex {
    let r = &rot[v];
    let i = r.iter().position(|&x| x == u).expect("neighbour in rotation");
    r[(i + 1) % r.len()]
}

fn insert_after(rot: &mut Rotations, v: Vertex, after: Vertex, new: Vertex) {
    let i = rot[v].iter().position(|&x| x == after).expect("neighbour in rotation");
    rot[v].insert(i + 1, new);
}

fn remove_neighbor(rot: &mut Rotations, v: Vertex, u: Vertex) {
    rot[v].retain(|&x| x != u);
}

/// Boundary darts of every face, using the same successor rule as
/// [`PlaneGraph::trace_faces`].
fn trace(rot: &Rotations) -> Vec<Vec<(Vertex, Vertex)>> {
    let mut seen: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    let mut faces = Vec::new();
    for a in 0..rot.len() {
        for &b in &rot[a] {
            if seen.contains(&(a, b)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut x, mut y) = (a, b);
            while seen.insert((x, y)) {
                face.push((x, y));
                let z = succ(rot, y, x);
                (x, y) = (y, z);
            }
            faces.push(face);
        }
    }
    faces
}

fn build(rot: Rotations) -> PlaneGraph {
    PlaneGraph::build(rot).expect("generator keeps rotations valid")
}

/// Random triangulation on `n >= 3` vertices: stacking into random faces,
/// then `2n` random edge flips.
pub fn random_triangulation(n: usize, seed: u64) -> Result<PlaneGraph, GenError> {
    if n < 3 {
        return Err(GenError::TooSmall { n, min: 3 });
    }
    let mut rng = rng(seed);
    let mut rot: Rotations = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
    for w in 3..n {
        let faces = trace(&rot);
        let f = &faces[rng.gen_range(0..faces.len())];
        let (a, b) = f[0];
        let (_, c) = f[1];
        rot.push(vec![b, a, c]);
        insert_after(&mut rot, b, a, w);
        insert_after(&mut rot, c, b, w);
        insert_after(&mut rot, a, c, w);
    }
    for _ in 0..2 * n {
        let u = rng.gen_range(0..n);
        let v = rot[u][rng.gen_range(0..rot[u].len())];
        if rot[u].len() <= 3 || rot[v].len() <= 3 {
            continue;
        }
        // faces u->v->x and v->u->y
        let x = succ(&rot, v, u);
        let y = succ(&rot, u, v);
        if x == y || rot[x].contains(&y) {
            continue;
        }
        remove_neighbor(&mut rot, u, v);
        remove_neighbor(&mut rot, v, u);
        insert_after(&mut rot, y, u, x);
        insert_after(&mut rot, x, v, y);
    }
    Ok(build(rot))
}

/// Removes edge `uv` from an embedding, merging its two faces.
pub fn delete_edge(graph: &PlaneGraph, u: Vertex, v: Vertex) -> PlaneGraph {
    let mut rot = graph.rotations().to_vec();
    remove_neighbor(&mut rot, u, v);
    remove_neighbor(&mut rot, v, u);
    build(rot)
}

/// Whether deleting `uv` would disconnect the graph (both darts on one face).
pub fn is_bridge(graph: &PlaneGraph, u: Vertex, v: Vertex) -> bool {
    let faces = graph.trace_faces().expect("connected embedding");
    faces.face_of_dart(u, v) == faces.face_of_dart(v, u)
}

/// A random connected plane graph: a random triangulation with each edge,
/// in random order, kept with probability `keep` or deleted when that does
/// not disconnect the graph.
pub fn random_plane_graph(n: usize, keep: f64, seed: u64) -> Result<PlaneGraph, GenError> {
    let mut rng = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    if n <= 2 {
        let rot = match n {
            1 => vec![vec![]],
            2 => vec![vec![1], vec![0]],
            _ => return Err(GenError::TooSmall { n, min: 1 }),
        };
        return Ok(build(rot));
    }
    let mut g = random_triangulation(n, seed)?;
    let mut edges = g.graph().edges();
    edges.shuffle(&mut rng);
    for (u, v) in edges {
        if rng.gen_bool(keep.clamp(0.0, 1.0)) || is_bridge(&g, u, v) {
            continue;
        }
        g = delete_edge(&g, u, v);
    }
    Ok(g)
}

/// A connected plane graph on `n` vertices with no 4-cycle adjacent to two
/// triangles: edges of class witnesses are deleted from a random
/// triangulation until none is left. Witness edges lie on cycles, so the
/// graph stays connected.
pub fn gen_in_class(n: usize, seed: u64) -> Result<PlaneGraph, GenError> {
    const ATTEMPTS: usize = 8;
    for attempt in 0..ATTEMPTS {
        let s = seed.wrapping_add((attempt as u64).wrapping_mul(0x5851_f42d_4c95_7f2d));
        let mut rng = rng(s ^ 0xc2b2_ae3d_27d4_eb4f);
        let mut g = random_triangulation(n.max(3), s)?;
        let budget = 4 * g.graph().edge_count();
        let mut done = false;
        for _ in 0..budget {
            let Some(w) = class_check(g.graph()) else {
                done = true;
                break;
            };
            let edges: Vec<_> = w.edges().into_iter().collect();
            let (u, v) = edges[rng.gen_range(0..edges.len())];
            g = delete_edge(&g, u, v);
        }
        if done {
            return Ok(g);
        }
    }
    Err(GenError::GenerationStalled { attempts: ATTEMPTS })
}

/// Erdős–Rényi graph, not necessarily planar or connected.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("simple by construction")
}

/// The first face, by degree then id, that is a chordless simple cycle of
/// length at most `max_degree`, as the outer face.
pub fn chordless_outer(graph: PlaneGraph, max_degree: usize) -> Result<Option<Plane>, GraphError> {
    let plane = Plane::new(graph)?;
    let g = plane.graph();
    let mut candidates: Vec<_> = plane
        .faces()
        .iter()
        .filter(|f| f.degree() <= max_degree && f.is_simple_cycle())
        .filter(|f| {
            let vs = f.vertices();
            let k = vs.len();
            (0..k).all(|i| (i + 2..k).all(|j| (i == 0 && j == k - 1) || !g.has_edge(vs[i], vs[j])))
        })
        .map(|f| (f.degree(), f.id))
        .collect();
    candidates.sort();
    match candidates.first() {
        Some(&(_, id)) => Ok(Some(plane.set_outer(id)?)),
        None => Ok(None),
    }
}

/// Rotation system of a convex polytope: neighbours of each vertex sorted
/// by angle around the outward direction.
pub fn from_convex_polytope(points: &[[f64; 3]], edges: &[(Vertex, Vertex)]) -> PlaneGraph {
    let n = points.len();
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let sub = |a: [f64; 3], b: [f64; 3]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let cross =
        |a: [f64; 3], b: [f64; 3]| [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
    let c = (0..3).map(|i| points.iter().map(|p| p[i]).sum::<f64>() / n as f64).collect::<Vec<_>>();
    let centre = [c[0], c[1], c[2]];
    let rot = (0..n)
        .map(|v| {
            let p = points[v];
            let normal = sub(p, centre);
            let tangent = |q: [f64; 3]| {
                let d = sub(q, p);
                let k = dot(d, normal) / dot(normal, normal);
                [d[0] - k * normal[0], d[1] - k * normal[1], d[2] - k * normal[2]]
            };
            let e1 = tangent(points[adj[v][0]]);
            let e2 = cross(normal, e1);
            let mut nbrs: Vec<(f64, Vertex)> = adj[v]
                .iter()
                .map(|&u| {
                    let t = tangent(points[u]);
                    (dot(t, e2).atan2(dot(t, e1)), u)
                })
                .collect();
            nbrs.sort_by(|a, b| b.0.total_cmp(&a.0));
            nbrs.into_iter().map(|(_, u)| u).collect()
        })
        .collect();
    build(rot)
}

fn plane(g: PlaneGraph) -> Plane {
    Plane::new(g).expect("connected")
}

pub fn tetrahedron() -> Plane {
    let pts = [[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]];
    plane(from_convex_polytope(&pts, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]))
}

pub fn cube() -> Plane {
    let pts: Vec<[f64; 3]> = (0..8)
        .map(|i| {
            [
                if i & 1 == 0 { -1.0 } else { 1.0 },
                if i & 2 == 0 { -1.0 } else { 1.0 },
                if i & 4 == 0 { -1.0 } else { 1.0 },
            ]
        })
        .collect();
    let edges: Vec<_> = (0..8usize).flat_map(|u| [1, 2, 4].map(move |b| (u, u ^ b))).filter(|&(u, v)| u < v).collect();
    plane(from_convex_polytope(&pts, &edges))
}

pub fn octahedron() -> Plane {
    let pts = [[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, -1.0]];
    let edges: Vec<_> =
        (0..6usize).flat_map(|u| (u + 1..6).map(move |v| (u, v))).filter(|&(u, v)| u / 2 != v / 2).collect();
    plane(from_convex_polytope(&pts, &edges))
}

pub fn icosahedron() -> Plane {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut pts = Vec::new();
    for a in [-1.0, 1.0] {
        for b in [-phi, phi] {
            pts.push([0.0, a, b]);
            pts.push([a, b, 0.0]);
            pts.push([b, 0.0, a]);
        }
    }
    let mut edges = Vec::new();
    for u in 0..12 {
        for v in u + 1..12 {
            let d: f64 = (0..3).map(|i| (pts[u][i] - pts[v][i]).powi(2)).sum();
            if (d - 4.0).abs() < 1e-9 {
                edges.push((u, v));
            }
        }
    }
    plane(from_convex_polytope(&pts, &edges))
}

/// The cycle `0 1 ... n-1`, `n >= 3`.
pub fn cycle(n: usize) -> Plane {
    let rot = (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect();
    plane(build(rot))
}

/// Hub `0` joined to the cycle `1..=n`.
pub fn wheel(n: usize) -> Plane {
    let mut pts = vec![(0.0, 0.0)];
    let mut edges = Vec::new();
    for i in 0..n {
        let a = std::f64::consts::TAU * i as f64 / n as f64;
        pts.push((a.cos(), a.sin()));
        edges.push((0, i + 1));
        edges.push((i + 1, (i + 1) % n + 1));
    }
    plane(PlaneGraph::from_straight_line(&pts, &edges).expect("wheel"))
}

/// `rows x cols` grid; vertex `(r, c)` is `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Plane {
    let id = |r: usize, c: usize| r * cols + c;
    let mut pts = Vec::new();
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            pts.push((c as f64, -(r as f64)));
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    plane(PlaneGraph::from_straight_line(&pts, &edges).expect("grid"))
}

/// Boundary walk of [`grid`].
pub fn grid_perimeter(rows: usize, cols: usize) -> Vec<Vertex> {
    let id = |r: usize, c: usize| r * cols + c;
    let mut out: Vec<Vertex> = (0..cols).map(|c| id(0, c)).collect();
    out.extend((1..rows).map(|r| id(r, cols - 1)));
    out.extend((0..cols - 1).rev().map(|c| id(rows - 1, c)));
    out.extend((1..rows - 1).rev().map(|r| id(r, 0)));
    out
}

/// Octahedron with a vertex stacked into one face, outer face elsewhere.
/// Returns the plane and the sorted corners of the stacked face.
pub fn octahedron_with_stacked_face() -> (Plane, Vec<Vertex>) {
    let oct = octahedron();
    let mut rot = oct.plane_graph().rotations().to_vec();
    let f = &oct.faces()[0];
    let (a, b) = f.darts[0];
    let (_, c) = f.darts[1];
    let w = rot.len();
    rot.push(vec![b, a, c]);
    insert_after(&mut rot, b, a, w);
    insert_after(&mut rot, c, b, w);
    insert_after(&mut rot, a, c, w);
    let p = plane(build(rot));
    let mut tri = vec![a, b, c];
    tri.sort();
    let outer =
        p.faces().iter().find(|f| !f.contains_vertex(w) && f.vertex_set() != tri.iter().copied().collect()).unwrap().id;
    (p.set_outer(outer).unwrap(), tri)
}

/// Two triangles sharing vertex 2.
pub fn bowtie() -> Plane {
    let pts = [(-2.0, 1.0), (-2.0, -1.0), (0.0, 0.0), (2.0, 1.0), (2.0, -1.0)];
    plane(PlaneGraph::from_straight_line(&pts, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap())
}

/// Hexagon `0..6` with chord `0-3`, outer face the hexagon.
pub fn hexagon_with_chord() -> Plane {
    let pts: Vec<(f64, f64)> = (0..6)
        .map(|i| {
            let a = std::f64::consts::TAU * i as f64 / 6.0;
            (a.cos(), a.sin())
        })
        .collect();
    let mut edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
    edges.push((0, 3));
    plane(PlaneGraph::from_straight_line(&pts, &edges).unwrap()).with_outer_boundary(&[0, 1, 2, 3, 4, 5]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_sane(p: &Plane) {
        assert_eq!(p.euler_characteristic(), 2);
        assert!(p.graph().is_connected());
    }

    #[test]
    fn polyhedra() {
        for (p, v, e, f) in
            [(tetrahedron(), 4, 6, 4), (cube(), 8, 12, 6), (octahedron(), 6, 12, 8), (icosahedron(), 12, 30, 20)]
        {
            assert_eq!((p.vertex_count(), p.edge_count(), p.face_count()), (v, e, f));
            let d = p.faces()[0].degree();
            assert!(p.faces().iter().all(|x| x.degree() == d));
        }
    }

    #[test]
    fn triangulations_are_triangulations() {
        for seed in 0..20 {
            let g = random_triangulation(12, seed).unwrap();
            let p = Plane::new(g).unwrap();
            assert_sane(&p);
            assert_eq!(p.edge_count(), 3 * 12 - 6);
            assert!(p.faces().iter().all(|f| f.degree() == 3));
        }
    }

    #[test]
    fn seeded_generators_are_deterministic() {
        assert_eq!(random_triangulation(15, 7).unwrap(), random_triangulation(15, 7).unwrap());
        assert_eq!(gen_in_class(15, 7).unwrap(), gen_in_class(15, 7).unwrap());
        assert_eq!(random_plane_graph(15, 0.5, 3).unwrap(), random_plane_graph(15, 0.5, 3).unwrap());
    }

    #[test]
    fn in_class_output() {
        for seed in 0..10 {
            let g = gen_in_class(20, seed).unwrap();
            assert_eq!(g.graph().vertex_count(), 20);
            assert!(class_check(g.graph()).is_none());
            assert_sane(&Plane::new(g).unwrap());
        }
    }

    #[test]
    fn random_plane_graphs_are_plane() {
        for seed in 0..10 {
            assert_sane(&Plane::new(random_plane_graph(14, 0.4, seed).unwrap()).unwrap());
        }
    }

    #[test]
    fn grid_shape() {
        let g = grid(3, 4);
        assert_sane(&g);
        assert_eq!(g.face_count(), 2 * 3 + 1);
        assert!(g.with_outer_boundary(&grid_perimeter(3, 4)).is_ok());
    }

    #[test]
    fn chordless_outer_picks_small_face() {
        let p = chordless_outer(random_triangulation(10, 1).unwrap(), 6).unwrap().unwrap();
        assert_eq!(p.outer_face().unwrap().degree(), 3);
        let chorded = hexagon_with_chord();
        let p = chordless_outer(chorded.plane_graph().clone(), 6).unwrap().unwrap();
        assert_eq!(p.outer_face().unwrap().degree(), 4);
    }
}
