//! Class check, separating cycles and the audit on a generated instance.
use dpcolor::{generate, structure};

fn main() {
    let k4 = generate::tetrahedron();
    if let Some(w) = structure::class_check(k4.graph()) {
        println!("K4 leaves the class: 4-cycle {:?} meets triangles {:?}", w.four_cycle, w.triangles);
    }

    let pg = generate::gen_in_class(18, 7).unwrap();
    let plane = generate::chordless_outer(pg, 6).unwrap().expect("a chordless face of degree <= 6");
    let s = plane.outer_face().unwrap().vertex_set();
    let report = structure::report(&plane, Some(&s)).unwrap();
    println!("in class: {}", report.class_witness.is_none());
    println!("separating cycles up to 6: {}", report.separating_cycles.len());
    println!("sinks: {}, special faces: {}", report.sinks.len(), report.special_faces.len());
    let audit = report.audit.unwrap();
    let failed: String = audit.violations().map(|c| c.clause).collect();
    println!("audit with S = V(D) = {s:?}: failed clauses {failed:?}");
}
