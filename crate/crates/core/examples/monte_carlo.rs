//! Seeded simulation of the 2×3 scheme, sharded over four threads.
//!
//! `cargo run --release --example monte_carlo`

use perfect_secrecy::{build_scheme, parse_instance, simulate, SimConfig};

pub fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/corr23.inst");
    let inst = parse_instance(&std::fs::read_to_string(path).unwrap()).unwrap();
    let scheme = build_scheme(&inst).unwrap();
    let config = SimConfig { workers: 4, ..SimConfig::default() };
    let report = simulate(&scheme, &inst, 50_000, 2024, &config).unwrap();

    println!("decode success {}", report.decode_success);
    for (k, z) in report.z_labels.iter().enumerate() {
        println!(
            "{z}: freq {:.4} (exact {}), tv to P_X {:?}",
            report.empirical_qz[k],
            scheme.weights()[k],
            report.tv_secrecy[k]
        );
    }
    println!("max tv {:.4}", report.max_tv);
}
