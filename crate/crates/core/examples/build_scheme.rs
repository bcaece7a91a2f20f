//! Extension, decomposition, and the resulting scheme for the 2×3 instance.
//!
//! `cargo run --example build_scheme`

use perfect_secrecy::{
    birkhoff_decompose, build_scheme, conditional_y_given_x, extend, parse_instance, write_scheme,
};

pub fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/corr23.inst");
    let inst = parse_instance(&std::fs::read_to_string(path).unwrap()).unwrap();

    let cm = conditional_y_given_x(&inst);
    let ext = extend(&cm).unwrap();
    println!("extended to {}×{}:", ext.m(), ext.m());
    for row in ext.entries() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        println!("  {}", cells.join("  "));
    }

    for term in birkhoff_decompose(&ext).unwrap() {
        println!("weight {} on {:?}", term.weight, term.sigma);
    }

    let scheme = build_scheme(&inst).unwrap();
    print!("{}", write_scheme(&scheme));
}
