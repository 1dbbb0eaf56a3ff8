//! Correspondence chromatic numbers of small graphs by exhaustive search.
use dpcolor::dp::{self, ChiMode};
use dpcolor::generate;

fn main() {
    let mode = ChiMode::Exhaustive { budget: dp::DEFAULT_EXHAUSTIVE_BUDGET };
    for (name, plane) in [
        ("C3", generate::cycle(3)),
        ("C4", generate::cycle(4)),
        ("C5", generate::cycle(5)),
        ("K4", generate::tetrahedron()),
    ] {
        let r = dp::dp_chromatic_number(plane.graph(), 5, mode).unwrap();
        let witness = r.witness.as_ref().map(|w| w.k);
        println!(
            "{name}: chi_DP = {:?} (exact {}, unsat witness at k = {witness:?}, {} assignments)",
            r.value, r.exact, r.assignments_checked
        );
    }
}
