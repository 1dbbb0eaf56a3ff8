//! Solves a random 4-correspondence assignment and extends a precolouring of
//! the outer face.
use dpcolor::dp::{self, Coloring, CorrespondenceAssignment};
use dpcolor::{generate, pipeline};

fn main() {
    let plane = generate::chordless_outer(generate::gen_in_class(24, 3).unwrap(), 6).unwrap().unwrap();
    let g = plane.graph();
    let n = g.vertex_count();
    let c = CorrespondenceAssignment::random(g, 4, 11, true);

    let sol = dp::solve(g, &c, &Coloring::empty(n)).unwrap();
    let phi = sol.coloring().expect("colourable");
    println!("solved n={n}: valid={} nodes={}", dp::is_valid(g, &c, phi, true), sol.stats.nodes);

    let d = plane.outer_face().unwrap().vertices();
    let pre = pipeline::brute_force_precolorings(g, &c, &d);
    println!("{} valid colourings of D = {d:?}", pre.len());
    for phi0 in pre.iter().take(3) {
        let ext = dp::solve(g, &c, phi0).unwrap();
        let ok = ext.coloring().is_some_and(|phi| phi.extends(phi0) && dp::is_valid(g, &c, phi, true));
        println!("  {:?} extends: {ok}", phi0.support().collect::<Vec<_>>());
    }
}
