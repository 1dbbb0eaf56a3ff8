mod common;

use std::collections::BTreeSet;

use dpcolor::generate;
use dpcolor::structure::{self, AuditWitness};
use dpcolor::{FaceId, Graph, Plane};
use proptest::prelude::*;

fn k4() -> Graph {
    generate::tetrahedron().graph().clone()
}

fn is_cycle(g: &Graph, c: &[usize]) -> bool {
    let distinct: BTreeSet<_> = c.iter().collect();
    distinct.len() == c.len() && c.len() >= 3 && (0..c.len()).all(|i| g.has_edge(c[i], c[(i + 1) % c.len()]))
}

#[test]
fn cycle_enumeration_examples() {
    let cycles = structure::enumerate_cycles(&k4(), 4);
    assert_eq!(cycles.iter().filter(|c| c.len() == 3).count(), 4);
    assert_eq!(cycles.iter().filter(|c| c.len() == 4).count(), 3);
    assert_eq!(structure::enumerate_cycles(generate::cycle(6).graph(), 6).len(), 1);
    let tree = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
    assert!(structure::enumerate_cycles(&tree, 8).is_empty());
}

#[test]
fn adjacent_triangle_examples() {
    let diamond = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (1, 3), (3, 2)]).unwrap();
    assert_eq!(structure::adjacent_triangles(&diamond).len(), 1);
    assert!(structure::adjacent_triangles(generate::cube().graph()).is_empty());
    assert_eq!(structure::adjacent_triangles(&k4()).len(), 6);
}

#[test]
fn class_check_examples() {
    let w = structure::class_check(&k4()).expect("K4 violates the class condition");
    assert!(is_cycle(&k4(), &w.four_cycle) && w.four_cycle.len() == 4);
    assert_ne!(w.triangles[0], w.triangles[1]);
    assert!(structure::class_check(generate::cube().graph()).is_none());
    let diamond = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (1, 3), (3, 2)]).unwrap();
    assert!(structure::class_check(&diamond).is_some());
}

#[test]
fn separating_cycle_examples() {
    let w = generate::wheel(5);
    let rim: Vec<usize> = (1..=5).collect();
    let plane = w.clone().with_outer_boundary(&rim).unwrap();
    assert!(structure::separating_cycles(&plane, 6).unwrap().iter().all(|c| c.cycle.len() != 5));

    let ico = generate::icosahedron().set_outer(FaceId(0)).unwrap();
    assert!(structure::separating_cycles(&ico, 3).unwrap().is_empty());

    let (plane, tri) = generate::octahedron_with_stacked_face();
    let sep = structure::separating_cycles(&plane, 3).unwrap();
    assert!(sep.iter().any(|c| {
        let mut v = c.cycle.clone();
        v.sort();
        v == tri
    }));
}

#[test]
fn face_class_examples() {
    let cube = generate::cube().set_outer(FaceId(0)).unwrap();
    let classes = structure::classify_faces(&cube).unwrap();
    assert_eq!(classes.len(), 5);
    assert_eq!(classes.values().filter(|c| c.meets_outer).count(), 4);
    let k4 = generate::tetrahedron().set_outer(FaceId(0)).unwrap();
    assert!(structure::classify_faces(&k4).unwrap().values().all(|c| c.meets_outer && c.degree == 3));
    let hex = generate::hexagon_with_chord();
    assert!(structure::classify_faces(&hex).unwrap().values().all(|c| c.meets_outer));
    assert!(structure::classify_faces(&generate::cube()).is_err());
}

#[test]
fn sink_examples() {
    let gadget = generate::sink_gadget();
    let sinks = structure::find_sinks(&gadget.plane).unwrap();
    assert_eq!(sinks.len(), 1);
    assert_eq!(sinks[0].face, gadget.sink);
    assert_eq!(sinks[0].sources.len(), 5);
    assert!(structure::find_sinks(&generate::cube().set_outer(FaceId(0)).unwrap()).unwrap().is_empty());
    assert!(structure::find_sinks(&generate::partial_sink_gadget(3)).unwrap().is_empty());
}

#[test]
fn special_face_examples() {
    let fx = generate::special_face_fixture();
    assert!(structure::special_faces(&fx.plane).unwrap().contains(&fx.face));
    let k4 = generate::tetrahedron().set_outer(FaceId(0)).unwrap();
    assert!(structure::special_faces(&k4).unwrap().is_empty());
    // The icosahedron's 5-vertices never qualify.
    let ico = generate::icosahedron().set_outer(FaceId(0)).unwrap();
    assert!(structure::special_faces(&ico).unwrap().is_empty());
}

#[test]
fn audit_examples() {
    let cube = generate::cube().set_outer(FaceId(0)).unwrap();
    let s = cube.outer_face().unwrap().vertex_set();
    let a = structure::audit(&cube, &s).unwrap();
    assert!(matches!(a.clause('c').unwrap().witness, Some(AuditWitness::LowDegree { degree: 3, .. })));

    let bowtie = generate::bowtie();
    let big = bowtie.faces().iter().max_by_key(|f| f.degree()).unwrap().id;
    let bowtie = bowtie.set_outer(big).unwrap();
    let a = structure::audit(&bowtie, &[0].into_iter().collect()).unwrap();
    assert_eq!(a.clause('b').unwrap().witness, Some(AuditWitness::CutVertex { vertex: 2 }));

    let hex = generate::hexagon_with_chord();
    let s: BTreeSet<usize> = (0..6).collect();
    let a = structure::audit(&hex, &s);
    // S must be a face boundary; the hexagon's outer face is.
    let a = a.unwrap();
    assert_eq!(a.clause('e').unwrap().witness, Some(AuditWitness::Chord { u: 0, v: 3 }));

    assert!(structure::audit(&cube, &BTreeSet::new()).is_err());
    assert!(structure::audit(&cube, &[0, 6].into_iter().collect()).is_err());
}

#[test]
fn report_serializes_stable_fields() {
    let plane = generate::sink_gadget().plane;
    let s = [0].into_iter().collect();
    let v = serde_json::to_value(structure::report(&plane, Some(&s)).unwrap()).unwrap();
    for key in ["class_witness", "separating_cycles", "sinks", "special_faces", "face_classes", "audit"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

fn plane_with_outer() -> impl Strategy<Value = Plane> {
    (4usize..=14, 0.2f64..1.0, any::<u64>(), any::<usize>()).prop_map(|(n, keep, s, pick)| {
        let plane = Plane::new(generate::random_plane_graph(n, keep, s).unwrap()).unwrap();
        let f = FaceId(pick % plane.face_count());
        plane.set_outer(f).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cycle_counts_match_brute_force(plane in plane_with_outer()) {
        let g = plane.graph();
        let counts = common::brute_cycle_count(g, 6);
        let found = structure::enumerate_cycles(g, 6);
        for (len, &want) in counts.iter().enumerate().skip(3) {
            prop_assert_eq!(found.iter().filter(|c| c.len() == len).count(), want, "length {}", len);
        }
        prop_assert!(found.iter().all(|c| is_cycle(g, c)));
    }

    #[test]
    fn class_check_matches_brute_force(plane in plane_with_outer()) {
        let g = plane.graph();
        let w = structure::class_check(g);
        prop_assert_eq!(w.is_some(), common::brute_violates_class(g));
        if let Some(w) = w {
            prop_assert!(is_cycle(g, &w.four_cycle) && w.four_cycle.len() == 4);
            for t in &w.triangles {
                prop_assert!(is_cycle(g, t) && t.len() == 3);
                let shares = w.four_cycle.iter().zip(w.four_cycle.iter().cycle().skip(1)).any(|(&a, &b)| t.contains(&a) && t.contains(&b));
                prop_assert!(shares);
            }
        } else {
            prop_assert!(structure::adjacent_triangles(g).is_empty());
        }
    }

    #[test]
    fn separating_cycle_sides_partition_vertices(plane in plane_with_outer()) {
        let n = plane.vertex_count();
        for sep in structure::separating_cycles(&plane, 6).unwrap() {
            prop_assert!(is_cycle(plane.graph(), &sep.cycle));
            prop_assert!(!sep.interior.is_empty() && !sep.exterior.is_empty());
            prop_assert_eq!(sep.interior.len() + sep.exterior.len() + sep.cycle.len(), n);
            // No edge joins the two sides.
            for &a in &sep.interior {
                prop_assert!(sep.exterior.iter().all(|&b| !plane.graph().has_edge(a, b)));
            }
        }
    }

    #[test]
    fn face_classes_match_membership_scan(plane in plane_with_outer()) {
        let outer: BTreeSet<usize> = plane.outer_face().unwrap().vertex_set();
        let classes = structure::classify_faces(&plane).unwrap();
        prop_assert_eq!(classes.len(), plane.face_count() - 1);
        for f in plane.faces() {
            if Some(f.id) == plane.outer().ok() {
                prop_assert!(!classes.contains_key(&f.id));
                continue;
            }
            let meets = f.vertices().iter().any(|v| outer.contains(v));
            prop_assert_eq!(classes[&f.id].meets_outer, meets);
            prop_assert_eq!(classes[&f.id].degree, f.degree());
        }
    }

    #[test]
    fn sink_sources_are_distinct_and_off_the_sink(n in 6usize..30, keep in 0.6f64..1.0, seed in any::<u64>()) {
        let Some(plane) = generate::chordless_outer(generate::random_plane_graph(n, keep, seed).unwrap(), 6).unwrap() else {
            return Ok(());
        };
        for sink in structure::find_sinks(&plane).unwrap() {
            let boundary = plane.face(sink.face).vertex_set();
            let set: BTreeSet<_> = sink.sources.iter().collect();
            prop_assert_eq!(set.len(), 5);
            prop_assert!(sink.sources.iter().all(|v| !boundary.contains(v)));
        }
    }
}

#[test]
fn gadget_sink_sources_are_distinct_and_off_the_sink() {
    let gadget = generate::sink_gadget();
    let sink = &structure::find_sinks(&gadget.plane).unwrap()[0];
    let boundary = gadget.plane.face(sink.face).vertex_set();
    assert_eq!(sink.sources.iter().collect::<BTreeSet<_>>().len(), 5);
    assert!(sink.sources.iter().all(|v| !boundary.contains(v)));
    let mut got = sink.sources.clone();
    let mut want = gadget.sources.clone();
    got.sort();
    want.sort();
    assert_eq!(got, want);
}
