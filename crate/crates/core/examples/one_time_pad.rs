//! The XOR pad: encode every (x, y) with a fixed seed and decode it back.
//!
//! `cargo run --example one_time_pad`

use perfect_secrecy::cli::{render_decode_table, shannon_instance};
use perfect_secrecy::{build_scheme, decode, encode, RandomSource};

pub fn main() {
    let inst = shannon_instance(2, 2).unwrap();
    let scheme = build_scheme(&inst).unwrap();
    print!("{}", render_decode_table(&scheme).unwrap());

    let mut rng = RandomSource::new(7);
    for i in 0..scheme.n() {
        for j in 0..scheme.m() {
            let k = encode(&scheme, i, j, &mut rng).unwrap();
            let back = decode(&scheme, j, k).unwrap();
            println!(
                "{} with key {} -> {} -> {}",
                scheme.x_labels()[i],
                scheme.y_labels()[j],
                scheme.z_labels()[k],
                scheme.x_labels()[back]
            );
        }
    }
}
