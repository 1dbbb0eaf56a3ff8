use std::collections::BTreeSet;

use dpcolor::generate;
use dpcolor::{FaceId, GraphError, Plane, PlaneGraph};
use proptest::prelude::*;

fn k4() -> PlaneGraph {
    PlaneGraph::build(vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]]).unwrap()
}

#[test]
fn triangle_and_k4_build() {
    let t = PlaneGraph::build(vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap();
    assert_eq!(t.graph().vertex_count(), 3);
    let g = k4();
    assert_eq!((g.graph().vertex_count(), g.graph().edge_count()), (4, 6));
}

#[test]
fn build_errors_name_the_pair() {
    assert_eq!(PlaneGraph::build(vec![vec![1, 1], vec![0]]).unwrap_err(), GraphError::ParallelEdge { u: 0, v: 1 });
    assert!(matches!(PlaneGraph::build(vec![vec![0]]), Err(GraphError::LoopEdge { u: 0, v: 0 })));
    assert!(matches!(PlaneGraph::build(vec![vec![1], vec![]]), Err(GraphError::AsymmetricAdjacency { u: 0, v: 1 })));
}

#[test]
fn face_counts_of_small_polyhedra() {
    let p = Plane::new(k4()).unwrap();
    assert_eq!(p.face_count(), 4);
    assert!(p.faces().iter().all(|f| f.degree() == 3));
    let cube = generate::cube();
    assert_eq!(cube.face_count(), 6);
    assert!(cube.faces().iter().all(|f| f.degree() == 4));
    assert_eq!(generate::icosahedron().face_count(), 20);
    let edge = Plane::new(PlaneGraph::build(vec![vec![1], vec![0]]).unwrap()).unwrap();
    assert_eq!(edge.face_count(), 1);
    assert_eq!(edge.faces()[0].degree(), 2);
}

#[test]
fn outer_designation_examples() {
    let p = Plane::new(k4()).unwrap().set_outer(FaceId(0)).unwrap();
    assert_eq!(p.outer_face().unwrap().degree(), 3);
    assert_eq!(p.internal_vertices().count(), 1);
    let hex = generate::cycle(6).set_outer(FaceId(0)).unwrap();
    assert_eq!(hex.outer_face().unwrap().degree(), 6);
    assert_eq!(hex.internal_vertices().count(), 0);
    let cube = generate::cube().set_outer(FaceId(2)).unwrap();
    assert_eq!(cube.outer_face().unwrap().degree(), 4);
    assert_eq!(cube.internal_vertices().count(), 4);
    assert!(matches!(generate::cube().set_outer(FaceId(6)), Err(GraphError::UnknownFace(_))));
}

#[test]
fn element_queries() {
    let p = Plane::new(k4()).unwrap();
    assert!((0..4).all(|v| p.degree(v).unwrap() == 3));
    assert!((0..4).all(|f| p.face_degree(FaceId(f)).unwrap() == 3));
    let cube = generate::cube();
    assert!((0..8).all(|v| cube.incident_faces(v).unwrap().len() == 3));
    assert!(p.degree(4).is_err());
    assert!(p.face_degree(FaceId(9)).is_err());
    let (a, b) = p.faces_sharing_edge(0, 1).unwrap();
    assert_ne!(a, b);
    assert!(p.faces_sharing_edge(0, 0).is_err());
}

#[test]
fn disconnected_graphs_do_not_trace() {
    let g = PlaneGraph::build(vec![vec![1], vec![0], vec![3], vec![2]]).unwrap();
    assert!(matches!(g.trace_faces(), Err(GraphError::Disconnected { components: 2 })));
}

fn check_face_invariants(plane: &Plane) -> Result<(), TestCaseError> {
    let g = plane.graph();
    let (v, e, f) = (g.vertex_count() as i64, g.edge_count() as i64, plane.face_count() as i64);
    prop_assert_eq!(v - e + f, 2);
    let face_sum: usize = plane.faces().iter().map(|f| f.degree()).sum();
    let deg_sum: usize = (0..g.vertex_count()).map(|x| g.degree(x)).sum();
    prop_assert_eq!(face_sum, 2 * g.edge_count());
    prop_assert_eq!(deg_sum, 2 * g.edge_count());
    let mut darts = BTreeSet::new();
    for face in plane.faces() {
        for &d in &face.darts {
            prop_assert!(darts.insert(d), "dart {:?} on two faces", d);
        }
    }
    prop_assert_eq!(darts.len(), 2 * g.edge_count());
    for (a, b) in g.edges() {
        let fs = plane.face_set();
        prop_assert!(fs.face_of_dart(a, b).is_some() && fs.face_of_dart(b, a).is_some());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn faces_of_random_triangulations(n in 3usize..40, seed in any::<u64>()) {
        let plane = Plane::new(generate::random_triangulation(n, seed).unwrap()).unwrap();
        check_face_invariants(&plane)?;
        prop_assert!(plane.faces().iter().all(|f| f.degree() == 3));
    }

    #[test]
    fn faces_of_random_plane_graphs(n in 3usize..40, keep in 0.0f64..1.0, seed in any::<u64>()) {
        let plane = Plane::new(generate::random_plane_graph(n, keep, seed).unwrap()).unwrap();
        check_face_invariants(&plane)?;
    }

    #[test]
    fn reversed_rotations_trace_the_same_face_multiset(n in 3usize..25, seed in any::<u64>()) {
        let pg = generate::random_plane_graph(n, 0.6, seed).unwrap();
        let rev = PlaneGraph::build(pg.rotations().iter().map(|r| r.iter().rev().copied().collect()).collect()).unwrap();
        let sets = |p: &PlaneGraph| {
            let mut v: Vec<(usize, BTreeSet<usize>)> = Plane::new(p.clone()).unwrap().faces().iter().map(|f| (f.degree(), f.vertex_set())).collect();
            v.sort();
            v
        };
        prop_assert_eq!(sets(&pg), sets(&rev));
    }

    #[test]
    fn reversal_of_a_dart_is_on_the_other_side(n in 4usize..25, seed in any::<u64>()) {
        let plane = Plane::new(generate::random_triangulation(n, seed).unwrap()).unwrap();
        for (a, b) in plane.graph().edges() {
            let (f, g) = plane.faces_sharing_edge(a, b).unwrap();
            prop_assert_ne!(f, g, "triangulations have no bridges");
        }
    }
}
