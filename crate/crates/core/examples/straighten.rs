//! Straightens a random assignment along a spanning tree and maps a colouring
//! across.
use dpcolor::dp::{self, Coloring, CorrespondenceAssignment};
use dpcolor::generate;

fn main() {
    let pg = generate::random_plane_graph(8, 0.8, 5).unwrap();
    let g = pg.graph();
    let c = CorrespondenceAssignment::random(g, 3, 9, true);
    let tree = dp::spanning_forest(g);
    let (straight, plan) = dp::straighten(g, &c, &tree).unwrap();
    println!("tree edges straight: {}", tree.iter().all(|&(u, v)| straight.is_straight(u, v)));

    let empty = Coloring::empty(g.vertex_count());
    let before = dp::count_colorings(g, &c, &empty).unwrap();
    let after = dp::count_colorings(g, &straight, &empty).unwrap();
    println!("colourings before {before}, after {after}");

    if let Some(phi) = dp::solve(g, &c, &empty).unwrap().coloring() {
        let mapped = plan.apply_coloring(phi);
        println!("forward valid: {}", dp::is_valid(g, &straight, &mapped, true));
        println!("round trip: {}", plan.invert_coloring(&mapped) == *phi);
    }
}
