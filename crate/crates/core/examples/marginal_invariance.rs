//! Feasibility and the decomposition ignore the prior on X.
//!
//! `cargo run --example marginal_invariance`

use perfect_secrecy::{build_scheme, marginal_invariance_witness, parse_instance, Instance, Rational};

pub fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/corr23.inst");
    let inst = parse_instance(&std::fs::read_to_string(path).unwrap()).unwrap();
    let skew = [Rational::new(9, 10), Rational::new(1, 10)];
    println!("unchanged under P_X = (9/10, 1/10): {}", marginal_invariance_witness(&inst, &skew).unwrap());

    let cm = perfect_secrecy::conditional_y_given_x(&inst);
    let reweighted = Instance::from_conditional(
        inst.x_labels().to_vec(),
        inst.y_labels().to_vec(),
        &skew,
        cm.entries(),
    )
    .unwrap();
    let a = build_scheme(&inst).unwrap();
    let b = build_scheme(&reweighted).unwrap();
    println!("same weights: {}, same permutations: {}", a.weights() == b.weights(), a.perms() == b.perms());
}
