//! Column-sum test on the bundled instances.
//!
//! `cargo run --example check_feasibility`

use perfect_secrecy::{check_feasible, parse_instance, shannon_reduce};

fn load(name: &str) -> perfect_secrecy::Instance {
    let path = format!("{}/examples/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).expect("bundled instance");
    parse_instance(&text).expect("valid instance")
}

pub fn main() {
    for name in ["otp2.inst", "skewed.inst", "corr23.inst", "no_deterministic.inst"] {
        let inst = load(name);
        let report = check_feasible(&inst);
        let sums: Vec<String> = report.column_sums.iter().map(ToString::to_string).collect();
        println!("{name}: column sums [{}] -> {}", sums.join(", "), if report.feasible { "feasible" } else { "infeasible" });
        for &j in &report.violations {
            println!("  {} carries {}", inst.y_labels()[j], report.column_sums[j]);
        }
        let shannon = shannon_reduce(&inst);
        if shannon.applies {
            println!("  uniform independent key: {} states, {} keys", shannon.n, shannon.m);
        }
    }
}
