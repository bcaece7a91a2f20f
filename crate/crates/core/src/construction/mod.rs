//! Building witness schemes for feasible instances.

mod birkhoff;
mod deterministic;
mod extend;
mod matching;
mod scheme;

pub use birkhoff::{birkhoff_decompose, recompose, Term};
pub use deterministic::{
    find_deterministic_scheme, latin_condition, DeterministicSearch, Outcome, SearchLimit, DEFAULT_MAX_M,
    DEFAULT_MAX_NODES,
};
pub use extend::{extend, ExtendedMatrix};
pub use matching::perfect_matching;
pub use scheme::{build_scheme, Scheme};
