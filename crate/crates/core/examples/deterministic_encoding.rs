//! Searching for schemes where z is a function of (x, y).
//!
//! `cargo run --example deterministic_encoding`

use perfect_secrecy::construction::{latin_condition, Outcome};
use perfect_secrecy::{conditional_y_given_x, find_deterministic_scheme, parse_instance, SearchLimit};

pub fn main() {
    for name in ["corr23.inst", "no_deterministic.inst"] {
        let path = format!("{}/examples/{name}", env!("CARGO_MANIFEST_DIR"));
        let inst = parse_instance(&std::fs::read_to_string(path).unwrap()).unwrap();
        let search = find_deterministic_scheme(&inst, SearchLimit::default()).unwrap();
        let latin = latin_condition(&conditional_y_given_x(&inst));
        match search.outcome {
            Outcome::Found { scheme } => {
                println!("{name}: found after {} nodes (latin condition {latin})", search.nodes);
                for (w, perm) in scheme.weights().iter().zip(scheme.perms()) {
                    println!("  {w} {perm:?}");
                }
            }
            Outcome::NoneFound => println!("{name}: none exists ({} nodes, latin condition {latin})", search.nodes),
            Outcome::BudgetExhausted => println!("{name}: gave up"),
        }
    }
}
