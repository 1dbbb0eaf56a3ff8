//! Traces the faces of a few polyhedra and a random plane graph.
use dpcolor::generate;
use dpcolor::Plane;

fn main() {
    for (name, plane) in
        [("K4", generate::tetrahedron()), ("cube", generate::cube()), ("icosahedron", generate::icosahedron())]
    {
        let degrees: Vec<usize> = plane.faces().iter().map(|f| f.degree()).collect();
        println!(
            "{name}: V={} E={} F={} face degrees {degrees:?}",
            plane.vertex_count(),
            plane.edge_count(),
            plane.face_count()
        );
    }
    let plane = Plane::new(generate::random_plane_graph(20, 0.7, 42).unwrap()).unwrap();
    println!(
        "random: V={} E={} F={} chi={}",
        plane.vertex_count(),
        plane.edge_count(),
        plane.face_count(),
        plane.euler_characteristic()
    );
}
