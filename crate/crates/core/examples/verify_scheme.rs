//! Exact checks on a built scheme, then on a tampered joint that leaks.
//!
//! `cargo run --example verify_scheme`

use perfect_secrecy::{build_scheme, necessity_audit, parse_instance, verify, Joint, Rational};
use perfect_secrecy::verification::verify_joint;

pub fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/otp2.inst");
    let inst = parse_instance(&std::fs::read_to_string(path).unwrap()).unwrap();
    let scheme = build_scheme(&inst).unwrap();

    let report = verify(&scheme, &inst).unwrap();
    println!(
        "built: consistency {} informativeness {} secrecy {}",
        report.consistency.pass, report.informativeness.pass, report.secrecy.pass
    );
    let audit = necessity_audit(&Joint::from_scheme(&scheme));
    println!("necessity audit: {}", audit.pass);

    // Always send z1 when x = x1: the signal now reveals the state.
    let mut joint = Joint::from_scheme(&scheme);
    for j in 0..joint.m() {
        let total = joint.q(0, j, 0) + joint.q(0, j, 1);
        joint.set(0, j, 0, total);
        joint.set(0, j, 1, Rational::zero());
    }
    let report = verify_joint(&joint, &inst).unwrap();
    println!("tampered: secrecy {}", report.secrecy.pass);
    if let Some(w) = report.secrecy.witness {
        println!("  Q({}, {}) = {} but Q_Z·P_X = {}", w.x, w.z, w.q_xz, w.expected);
    }
}
