//! Exact checks of consistency, informativeness and perfect secrecy, the
//! objects of the necessity argument, and an independent feasibility oracle.

mod checks;
mod joint;
mod oracle;
mod simplex;

pub use checks::{
    check_consistency, check_informativeness, check_secrecy, decode_table, necessity_audit, verify,
    verify_joint, Check, ConsistencyWitness, DecodeTable, InformativenessWitness, Marginals, NecessityAudit,
    SecrecyWitness, VerificationReport,
};
pub use joint::Joint;
pub use oracle::{all_permutations, feasibility_oracle, OracleVerdict, ORACLE_MAX_M};
pub use simplex::find_feasible_point;
