//! Schemes in which the signal is a deterministic function of `(x, y)`.
//!
//! Such a scheme covers every support cell of the conditional matrix by
//! exactly one signal, so each signal's permutation must hit cells of a
//! single common value (its weight) in every real row.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::construction::scheme::Scheme;
use crate::error::{Error, Result};
use crate::model::{conditional_y_given_x, default_labels, marginal_x, ConditionalMatrix, Instance};
use crate::rational::Rational;

pub const DEFAULT_MAX_M: usize = 8;
pub const DEFAULT_MAX_NODES: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimit {
    /// Largest number of Y outcomes the search accepts.
    pub max_m: usize,
    /// Search nodes visited before giving up.
    pub max_nodes: u64,
}

impl Default for SearchLimit {
    fn default() -> Self {
        SearchLimit { max_m: DEFAULT_MAX_M, max_nodes: DEFAULT_MAX_NODES }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Found { scheme: Scheme },
    NoneFound,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeterministicSearch {
    pub outcome: Outcome,
    pub nodes: u64,
    /// Whether the support cells split, value by value, into partial
    /// matchings covering every real row once (see [`latin_condition`]).
    pub latin_condition: bool,
}

/// Exhaustive backtracking search for a deterministic scheme.
///
/// Signals are built one at a time. A new signal always covers the first
/// uncovered cell of the first real row, which fixes its weight `v`; every
/// other real row must then contribute an uncovered cell of value exactly `v`
/// in a column not yet used by this signal.
pub fn find_deterministic_scheme(inst: &Instance, limit: SearchLimit) -> Result<DeterministicSearch> {
    if inst.m() > limit.max_m {
        return Err(Error::CapExceeded(format!(
            "deterministic search is limited to m ≤ {} (got {})",
            limit.max_m,
            inst.m()
        )));
    }
    let cm = conditional_y_given_x(inst);
    if let Some((column, sum)) = cm.column_sums().iter().enumerate().find(|(_, s)| **s > 1) {
        return Err(Error::Infeasible { column, sum: sum.to_string() });
    }
    let latin = latin_condition(&cm);
    let mut search = Search::new(&cm, limit.max_nodes);
    let outcome = match search.run() {
        Some(signals) => Outcome::Found { scheme: assemble(inst, &cm, signals)? },
        None if search.exhausted => Outcome::BudgetExhausted,
        None => Outcome::NoneFound,
    };
    Ok(DeterministicSearch { outcome, nodes: search.nodes, latin_condition: latin })
}

/// For every value `v`, each real row has the same number `t_v` of cells
/// equal to `v`, and no column holds more than `t_v` of them.
///
/// This is necessary for a deterministic scheme. It is also sufficient: the
/// `v`-cells form a bipartite graph with row degree `t_v` and column degree at
/// most `t_v`, which König's edge-colouring theorem splits into `t_v` matchings
/// that each meet every row.
pub fn latin_condition(cm: &ConditionalMatrix) -> bool {
    let mut by_value: BTreeMap<&Rational, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (i, row) in cm.entries().iter().enumerate() {
        for (j, v) in row.iter().enumerate().filter(|(_, v)| v.is_positive()) {
            let (rows, cols) = by_value
                .entry(v)
                .or_insert_with(|| (vec![0; cm.n()], vec![0; cm.m()]));
            rows[i] += 1;
            cols[j] += 1;
        }
    }
    by_value.values().all(|(rows, cols)| {
        let t = rows[0];
        rows.iter().all(|&c| c == t) && cols.iter().all(|&c| c <= t)
    })
}

struct Signal {
    weight: Rational,
    cols: Vec<usize>,
}

struct Search<'a> {
    cm: &'a ConditionalMatrix,
    covered: Vec<Vec<bool>>,
    signals: Vec<Signal>,
    nodes: u64,
    max_nodes: u64,
    exhausted: bool,
}

impl<'a> Search<'a> {
    fn new(cm: &'a ConditionalMatrix, max_nodes: u64) -> Self {
        let covered = cm
            .entries()
            .iter()
            .map(|row| row.iter().map(|v| !v.is_positive()).collect())
            .collect();
        Search { cm, covered, signals: Vec::new(), nodes: 0, max_nodes, exhausted: false }
    }

    fn run(&mut self) -> Option<Vec<Signal>> {
        if self.next_signal() {
            Some(std::mem::take(&mut self.signals))
        } else {
            None
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.exhausted = true;
        }
        !self.exhausted
    }

    fn next_signal(&mut self) -> bool {
        if !self.tick() {
            return false;
        }
        let Some(first) = self.covered[0].iter().position(|c| !c) else {
            // Every row has mass 1 and each signal takes the same weight from
            // each row, so all rows finish together.
            return self.covered.iter().all(|row| row.iter().all(|&c| c));
        };
        let weight = self.cm.entry(0, first).clone();
        let mut cols = vec![first];
        self.covered[0][first] = true;
        let found = self.extend_signal(1, &weight, &mut cols);
        self.covered[0][first] = false;
        found
    }

    fn extend_signal(&mut self, row: usize, weight: &Rational, cols: &mut Vec<usize>) -> bool {
        if row == self.cm.n() {
            self.signals.push(Signal { weight: weight.clone(), cols: cols.clone() });
            if self.next_signal() {
                return true;
            }
            self.signals.pop();
            return false;
        }
        for j in 0..self.cm.m() {
            if self.covered[row][j] || cols.contains(&j) || self.cm.entry(row, j) != weight {
                continue;
            }
            if !self.tick() {
                return false;
            }
            self.covered[row][j] = true;
            cols.push(j);
            let found = self.extend_signal(row + 1, weight, cols);
            cols.pop();
            self.covered[row][j] = false;
            if found {
                return true;
            }
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

fn assemble(inst: &Instance, cm: &ConditionalMatrix, signals: Vec<Signal>) -> Result<Scheme> {
    let m = cm.m();
    let px = marginal_x(inst);
    let mut weights = Vec::with_capacity(signals.len());
    let mut perms = Vec::with_capacity(signals.len());
    for signal in signals {
        let mut sigma = signal.cols;
        let mut used = vec![false; m];
        for &j in &sigma {
            used[j] = true;
        }
        sigma.extend((0..m).filter(|&j| !used[j]));
        weights.push(signal.weight);
        perms.push(sigma);
    }
    Scheme::new(
        cm.rows().iter().map(|&i| inst.x_labels()[i].clone()).collect(),
        inst.y_labels().to_vec(),
        default_labels("z", weights.len()),
        cm.rows().iter().map(|&i| px[i].clone()).collect(),
        weights,
        perms,
    )
}
