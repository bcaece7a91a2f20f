//! Perfectly secret public signals for a receiver with side information.
//!
//! A sender knows a state `X` and side information `Y` drawn from a joint
//! distribution `P_XY`. She publishes a signal `Z` so that anyone holding `Y`
//! recovers `X` exactly, while `Z` alone is independent of `X`. This crate
//! decides when that is possible, builds a witness scheme when it is, checks
//! schemes exactly, and runs them.
//!
//! Everything is exact: probabilities are [`Rational`]s, and the three
//! defining properties are checked as equalities.
//!
//! * [`feasibility`]: a scheme exists iff every column of `P_{Y|X}` sums to
//!   at most one.
//! * [`construction`]: pad `P_{Y|X}` to a doubly stochastic matrix, split it
//!   into permutation matrices, and use one signal per permutation.
//! * [`verification`]: consistency, informativeness and secrecy checks, the
//!   necessity audit, and an independent oracle over all permutations.
//! * [`codec`]: seeded encoding, decoding and Monte Carlo simulation.
//! * [`format`]: the `INSTANCE v1` and `SCHEME v1` text formats.
//!
//! ```
//! use perfect_secrecy::{build_scheme, check_feasible, parse_instance, verify};
//!
//! let inst = parse_instance("INSTANCE v1\n2 2\nx1 x2\ny1 y2\n1/4 1/4\n1/4 1/4\n").unwrap();
//! assert!(check_feasible(&inst).feasible);
//! let scheme = build_scheme(&inst).unwrap();
//! assert_eq!(scheme.p(), 2);
//! assert!(verify(&scheme, &inst).unwrap().passed());
//! ```

pub mod cli;
pub mod codec;
pub mod construction;
pub mod error;
pub mod feasibility;
pub mod format;
pub mod model;
pub mod rational;
pub mod verification;

#[cfg(test)]
mod test_support;

pub use codec::{decode, encode, sample_world, simulate, RandomSource, SimConfig, SimReport};
pub use construction::{
    birkhoff_decompose, build_scheme, extend, find_deterministic_scheme, perfect_matching, ExtendedMatrix, Scheme,
    SearchLimit,
};
pub use error::{Error, Result};
pub use feasibility::{check_feasible, marginal_invariance_witness, shannon_reduce, FeasibilityReport};
pub use format::{parse_instance, parse_scheme, write_instance, write_scheme};
pub use model::{conditional_y_given_x, marginal_x, marginal_y, ConditionalMatrix, Instance};
pub use rational::{rat_parse, Rational};
pub use verification::{
    check_consistency, check_informativeness, check_secrecy, decode_table, feasibility_oracle, necessity_audit,
    verify, Joint, VerificationReport,
};
