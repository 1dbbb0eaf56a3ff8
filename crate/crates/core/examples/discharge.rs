//! Runs the discharging rules and prints the outer-face balance.
use dpcolor::{discharging, generate};

fn main() {
    for fx in generate::charge_fixtures() {
        let ledger = discharging::discharge(&fx.plane).unwrap();
        println!("{:40} {} final {}", fx.name, fx.element, ledger.final_of(fx.element));
    }

    let plane = generate::chordless_outer(generate::gen_in_class(20, 1).unwrap(), 6).unwrap().unwrap();
    let ledger = discharging::discharge(&plane).unwrap();
    let report = discharging::verify(&plane, &ledger).unwrap();
    println!("transfers: {}", ledger.transfers.len());
    println!("conservation: {}", report.conservation_ok);
    println!("mu*(D) = {} (closed form {})", report.outer_final, report.outer_closed_form);
    println!("negative elements other than D: {}", report.negative_elements.len());
}
