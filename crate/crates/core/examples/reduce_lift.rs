//! Reduces a configuration gadget, colours the smaller graph and lifts the
//! colouring back.
use dpcolor::dp::{self, Coloring, CorrespondenceAssignment};
use dpcolor::{generate, reductions};

fn main() {
    for gadget in [generate::config_i_gadget(3), generate::config_ii_gadget(3)] {
        let g = gadget.plane.graph();
        let c = CorrespondenceAssignment::random(g, 4, 21, true);
        let red = reductions::reduce(&gadget.plane, &c, &gadget.config).unwrap();
        let phi = dp::solve(&red.graph, &red.assignment, &Coloring::empty(red.graph.vertex_count())).unwrap();
        let phi = phi.coloring().expect("reduced graph is colourable");
        let (lifted, trace) = reductions::lift_traced(g, &c, &red.plan, phi).unwrap();
        println!(
            "{}: {} -> {} vertices, deleted {:?}, lifted valid {}, residuals {:?}",
            gadget.name,
            g.vertex_count(),
            red.graph.vertex_count(),
            red.plan.deleted,
            dp::is_valid(g, &c, &lifted, true),
            trace.residuals
        );
    }
}
