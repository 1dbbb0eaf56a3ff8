//! A small deterministic verification batch.
use dpcolor::pipeline::{self, BatchConfig};

fn main() {
    let config = BatchConfig {
        seed: 2024,
        instances: 6,
        assignments: 4,
        max_n: 20,
        deterministic: true,
        ..BatchConfig::default()
    };
    let report = pipeline::run_batch(&config);
    for inst in &report.instances {
        println!(
            "{:12} n={:2} solved {}/{} extended {}/{} status {:?}",
            inst.name,
            inst.n,
            inst.solve.solved,
            inst.solve.attempted,
            inst.extension.extended,
            inst.extension.attempted,
            inst.status
        );
    }
    println!("pass: {}", report.pass);
}
