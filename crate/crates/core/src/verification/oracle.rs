//! Independent feasibility check.
//!
//! Searches the convex hull of all `m!` permutation matrices directly for a
//! mixture that matches `P_{Y|X}` on the real rows. Shares no code with the
//! extension and decomposition path.

use serde::Serialize;

use crate::construction::Term;
use crate::error::{Error, Result};
use crate::model::{conditional_y_given_x, Instance};
use crate::rational::Rational;
use crate::verification::simplex::find_feasible_point;

pub const ORACLE_MAX_M: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleVerdict {
    pub feasible: bool,
    /// A mixture of permutations reproducing `P_{Y|X}` when feasible.
    pub weights: Vec<Term>,
}

/// All permutations of `0..m` in lexicographic order.
pub fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    let mut used = vec![false; m];
    fn walk(m: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == m {
            out.push(current.clone());
            return;
        }
        for j in 0..m {
            if !used[j] {
                used[j] = true;
                current.push(j);
                walk(m, current, used, out);
                current.pop();
                used[j] = false;
            }
        }
    }
    walk(m, &mut current, &mut used, &mut out);
    out
}

pub fn feasibility_oracle(inst: &Instance) -> Result<OracleVerdict> {
    let m = inst.m();
    if m > ORACLE_MAX_M {
        return Err(Error::CapExceeded(format!("oracle is limited to m ≤ {ORACLE_MAX_M} (got {m})")));
    }
    let cm = conditional_y_given_x(inst);
    let perms = all_permutations(m);
    if cm.n() > m {
        // No permutation of m columns can give n > m rows distinct columns.
        return Ok(OracleVerdict { feasible: false, weights: Vec::new() });
    }

    // Σ α = 1, then one equation per real cell (i, j).
    let mut a = vec![vec![Rational::one(); perms.len()]];
    let mut b = vec![Rational::one()];
    for i in 0..cm.n() {
        for j in 0..m {
            a.push(
                perms
                    .iter()
                    .map(|sigma| if sigma[i] == j { Rational::one() } else { Rational::zero() })
                    .collect(),
            );
            b.push(cm.entry(i, j).clone());
        }
    }
    Ok(match find_feasible_point(&a, &b) {
        Some(x) => OracleVerdict {
            feasible: true,
            weights: x
                .into_iter()
                .zip(perms)
                .filter(|(w, _)| w.is_positive())
                .map(|(weight, sigma)| Term { weight, sigma })
                .collect(),
        },
        None => OracleVerdict { feasible: false, weights: Vec::new() },
    })
}
