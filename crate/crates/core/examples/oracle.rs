//! Cross-checking the column-sum test against a search over all
//! permutation mixtures.
//!
//! `cargo run --example oracle`

use perfect_secrecy::{check_feasible, feasibility_oracle, Instance, Rational};

pub fn main() {
    let r = Rational::new;
    let cases = [
        ("pad", vec![vec![r(1, 4), r(1, 4)], vec![r(1, 4), r(1, 4)]]),
        ("three states, two keys", vec![vec![r(1, 6), r(1, 6)]; 3]),
        ("overlap", vec![vec![r(1, 4), r(1, 4), r(0, 1)], vec![r(0, 1), r(1, 4), r(1, 4)]]),
        ("heavy column", vec![vec![r(1, 2), r(0, 1)], vec![r(1, 4), r(1, 4)]]),
    ];
    for (name, rows) in cases {
        let inst = Instance::from_grid(rows).unwrap();
        let verdict = feasibility_oracle(&inst).unwrap();
        println!(
            "{name}: column test {}, oracle {}",
            check_feasible(&inst).feasible,
            verdict.feasible
        );
        for term in &verdict.weights {
            println!("  {} {:?}", term.weight, term.sigma);
        }
    }
}
