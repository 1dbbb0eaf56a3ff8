mod common;

use std::collections::BTreeSet;

use dpcolor::dp::{self, Coloring, CorrespondenceAssignment};
use dpcolor::generate::{self, CONFIG_GADGET_VARIANTS};
use dpcolor::reductions::{self, ConfigKind, ReductionError};
use dpcolor::structure;
use dpcolor::{FaceId, Plane};
use proptest::prelude::*;

fn gadgets() -> Vec<generate::ConfigGadget> {
    (0..CONFIG_GADGET_VARIANTS).flat_map(|v| [generate::config_i_gadget(v), generate::config_ii_gadget(v)]).collect()
}

#[test]
fn finders_report_the_gadget_configuration() {
    for g in gadgets() {
        assert_eq!(g.plane.euler_characteristic(), 2, "{}", g.name);
        let found = match g.config.kind {
            ConfigKind::ConfigI => reductions::find_config_i(&g.plane),
            ConfigKind::ConfigII => reductions::find_config_ii(&g.plane),
        }
        .unwrap();
        assert!(found.contains(&g.config), "{}", g.name);
    }
    let cube = generate::cube().set_outer(FaceId(0)).unwrap();
    assert!(reductions::find_config_i(&cube).unwrap().is_empty());
}

#[test]
fn surgery_sizes_and_plan() {
    for g in gadgets() {
        let n = g.plane.vertex_count();
        let c = CorrespondenceAssignment::random(g.plane.graph(), 4, 17, true);
        let red = reductions::reduce(&g.plane, &c, &g.config).unwrap();
        let expect = match g.config.kind {
            ConfigKind::ConfigI => n - 4,
            ConfigKind::ConfigII => n - 3,
        };
        assert_eq!(red.graph.vertex_count(), expect, "{}", g.name);
        let plan = &red.plan;
        let deleted: BTreeSet<_> = plan.deleted.iter().copied().collect();
        assert_eq!(plan.completion_order.iter().copied().collect::<BTreeSet<_>>(), deleted);
        let (v2, v4) = plan.identified;
        let mut all: Vec<_> = plan.deleted.clone();
        all.extend([v2, v4]);
        assert_eq!(all.iter().collect::<BTreeSet<_>>().len(), all.len());
        assert!(all.iter().all(|&x| !g.plane.on_outer(x)));
        assert_eq!(plan.vertex_map[v2], plan.vertex_map[v4]);
        let straight = plan.relabel.apply_assignment(&c);
        assert!(straight.is_straight(g.config.v, v2) && straight.is_straight(g.config.v, v4));
    }
}

#[test]
fn identity_assignment_stays_identity() {
    for g in gadgets() {
        let c = CorrespondenceAssignment::identity(g.plane.graph(), 4);
        let red = reductions::reduce(&g.plane, &c, &g.config).unwrap();
        assert!(red.plan.relabel.is_identity());
        assert_eq!(red.assignment, CorrespondenceAssignment::identity(&red.graph, 4));
    }
}

#[test]
fn completion_order_matches_configuration() {
    let g = generate::config_i_gadget(0);
    let [v1, _, v3, _] = g.config.nbrs;
    assert_eq!(g.config.completion_order(), vec![v1, v3, g.config.v]);
    let g = generate::config_ii_gadget(0);
    assert_eq!(g.config.completion_order(), vec![g.config.nbrs[0], g.config.v]);
}

#[test]
fn residual_bounds_at_lift_time() {
    for g in gadgets() {
        let c = CorrespondenceAssignment::random(g.plane.graph(), 4, 23, true);
        let red = reductions::reduce(&g.plane, &c, &g.config).unwrap();
        let sol = dp::solve(&red.graph, &red.assignment, &Coloring::empty(red.graph.vertex_count())).unwrap();
        let (_, trace) = reductions::lift_traced(g.plane.graph(), &c, &red.plan, sol.coloring().unwrap()).unwrap();
        let v = g.config.v;
        let v1 = g.config.nbrs[0];
        let initial = |x| trace.initial_residuals.iter().find(|p| p.0 == x).unwrap().1;
        match g.config.kind {
            ConfigKind::ConfigI => {
                assert!(initial(v) >= 3, "{}", g.name);
                assert!(initial(v1) >= 1 && initial(g.config.nbrs[2]) >= 1, "{}", g.name);
            }
            ConfigKind::ConfigII => {
                assert!(initial(v) >= 2, "{}", g.name);
                assert!(initial(v1) >= 1, "{}", g.name);
            }
        }
        assert!(trace.residuals.iter().all(|&(_, s)| s >= 1), "{}", g.name);
    }
}

#[test]
fn every_reduced_colouring_lifts() {
    for (i, g) in gadgets().into_iter().enumerate() {
        let c = CorrespondenceAssignment::random(g.plane.graph(), 4, 1000 + i as u64, true);
        let summary = common::lift_exhaustively(&g, &c);
        assert!(summary.failures.is_empty(), "{:?}", summary.failures);
        assert!(summary.lifted > 0, "{}", g.name);
    }
}

#[test]
fn reduced_graph_stays_in_class_without_separating_cycles() {
    for g in gadgets() {
        let c = CorrespondenceAssignment::identity(g.plane.graph(), 4);
        let red = reductions::reduce(&g.plane, &c, &g.config).unwrap();
        if structure::separating_cycles(&g.plane, 6).unwrap().is_empty() {
            assert!(structure::class_check(&red.graph).is_none(), "{}", g.name);
        }
        assert!(red.graph.vertex_count() < g.plane.vertex_count());
    }
}

#[test]
fn surgery_failures_are_reported() {
    let (plane, config) = generate::config_i_with_chord();
    let c = CorrespondenceAssignment::identity(plane.graph(), 4);
    assert!(matches!(reductions::reduce(&plane, &c, &config), Err(ReductionError::SurgeryCreatesLoop { .. })));
    let (plane, config, x) = generate::config_i_with_shared_neighbor();
    let c = CorrespondenceAssignment::identity(plane.graph(), 4);
    match reductions::reduce(&plane, &c, &config) {
        Err(ReductionError::SurgeryCreatesParallel { w, .. }) => assert_eq!(w, x),
        other => panic!("{other:?}"),
    }
}

#[test]
fn plan_round_trips_through_json() {
    let g = generate::config_ii_gadget(4);
    let c = CorrespondenceAssignment::random(g.plane.graph(), 4, 2, true);
    let red = reductions::reduce(&g.plane, &c, &g.config).unwrap();
    let text = serde_json::to_string(&red.plan).unwrap();
    let back: reductions::ReductionPlan = serde_json::from_str(&text).unwrap();
    assert_eq!(back, red.plan);
}

fn in_class_plane() -> impl Strategy<Value = Option<Plane>> {
    (8usize..=30, any::<u64>())
        .prop_map(|(n, s)| generate::chordless_outer(generate::gen_in_class(n, s).unwrap(), 6).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn found_configurations_satisfy_their_definition(plane in in_class_plane()) {
        let Some(plane) = plane else { return Ok(()); };
        let g = plane.graph();
        let found_i = reductions::find_config_i(&plane).unwrap();
        let found_ii = reductions::find_config_ii(&plane).unwrap();
        for cfg in found_i.iter().chain(&found_ii) {
            let v = cfg.v;
            prop_assert_eq!(g.degree(v), 4);
            prop_assert!(!plane.touches_outer(v) && !plane.on_outer(v));
            let nb: BTreeSet<_> = g.neighbors(v).iter().copied().collect();
            prop_assert_eq!(cfg.nbrs.iter().copied().collect::<BTreeSet<_>>(), nb);
            prop_assert_eq!(g.degree(cfg.nbrs[0]), 4);
        }
        for cfg in &found_i {
            prop_assert_eq!(g.degree(cfg.nbrs[2]), 4);
        }
        for cfg in &found_ii {
            prop_assert_eq!(plane.incident_triangle_count(cfg.v), 1);
            let f = plane.face(cfg.face.unwrap());
            prop_assert_eq!(f.degree(), 3);
            prop_assert!(f.contains_vertex(cfg.v) && f.contains_vertex(cfg.nbrs[0]) && f.contains_vertex(cfg.nbrs[1]));
        }
    }

    #[test]
    fn lifting_random_gadget_assignments(variant in 0..CONFIG_GADGET_VARIANTS, seed in any::<u64>(), perfect in any::<bool>(), second in any::<bool>()) {
        let g = if second { generate::config_ii_gadget(variant) } else { generate::config_i_gadget(variant) };
        let c = CorrespondenceAssignment::random(g.plane.graph(), 4, seed, perfect);
        let red = reductions::reduce(&g.plane, &c, &g.config).unwrap();
        let sol = dp::solve(&red.graph, &red.assignment, &Coloring::empty(red.graph.vertex_count())).unwrap();
        let phi = sol.coloring().unwrap();
        prop_assert!(dp::is_valid(&red.graph, &red.assignment, phi, true));
        let lifted = reductions::lift(g.plane.graph(), &c, &red.plan, phi).unwrap();
        prop_assert!(dp::is_valid(g.plane.graph(), &c, &lifted, true));
    }
}
