//! Writes a graph, an assignment and a colouring in the text formats and reads
//! them back.
use dpcolor::dp::{self, Coloring, CorrespondenceAssignment};
use dpcolor::{generate, io};

fn main() {
    let plane = generate::cube().set_outer(dpcolor::FaceId(0)).unwrap();
    let text = io::write_graph(&plane);
    print!("{text}");
    let back = io::parse_graph(&text).unwrap();
    println!("graph round trip: {}", back.plane_graph().rotations() == plane.plane_graph().rotations());

    let c = CorrespondenceAssignment::random(plane.graph(), 4, 1, true);
    let c_text = io::write_assignment(&c);
    println!("assignment round trip: {}", io::parse_assignment(&c_text, plane.graph()).unwrap() == c);

    let phi = dp::solve(plane.graph(), &c, &Coloring::empty(8)).unwrap();
    let phi = phi.coloring().unwrap();
    let col = io::write_coloring(phi);
    println!("colouring {}", col.split_whitespace().collect::<Vec<_>>().join(" "));
    println!("colouring round trip: {}", io::parse_coloring(&col, 8).unwrap() == *phi);
}
