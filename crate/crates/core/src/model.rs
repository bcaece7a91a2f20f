//! The prior joint distribution of the state X and the side information Y,
//! and the quantities derived from it.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A finitely supported joint distribution `P_XY` with labelled outcomes.
///
/// Rows are X outcomes, columns are Y outcomes. Entries are non-negative and
/// sum to exactly one. Outcomes with zero mass are allowed and kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Instance {
    x_labels: Vec<String>,
    y_labels: Vec<String>,
    p_xy: Vec<Vec<Rational>>,
}

pub(crate) fn check_labels(labels: &[String], what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for label in labels {
        if label.is_empty() || label.chars().any(char::is_whitespace) || label.starts_with('#') {
            return Err(Error::InvalidInstance(format!(
                "{what} label {label:?} must be a non-empty token without whitespace or leading '#'"
            )));
        }
        if !seen.insert(label.as_str()) {
            return Err(Error::InvalidInstance(format!("duplicate {what} label `{label}`")));
        }
    }
    Ok(())
}

impl Instance {
    pub fn new(x_labels: Vec<String>, y_labels: Vec<String>, p_xy: Vec<Vec<Rational>>) -> Result<Self> {
        if x_labels.is_empty() || y_labels.is_empty() {
            return Err(Error::InvalidInstance("n and m must be at least 1".into()));
        }
        check_labels(&x_labels, "x")?;
        check_labels(&y_labels, "y")?;
        if p_xy.len() != x_labels.len() {
            return Err(Error::InvalidInstance(format!(
                "expected {} rows, found {}",
                x_labels.len(),
                p_xy.len()
            )));
        }
        let mut total = Rational::zero();
        for (i, row) in p_xy.iter().enumerate() {
            if row.len() != y_labels.len() {
                return Err(Error::InvalidInstance(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    y_labels.len()
                )));
            }
            for (j, v) in row.iter().enumerate() {
                if v.is_negative() {
                    return Err(Error::InvalidInstance(format!(
                        "negative entry {v} at ({}, {})",
                        x_labels[i], y_labels[j]
                    )));
                }
                total = total + v;
            }
        }
        if total != 1 {
            return Err(Error::InvalidInstance(format!("mass ≠ 1 (total is {total})")));
        }
        Ok(Instance { x_labels, y_labels, p_xy })
    }

    /// Builds an instance with generated labels `x1..xn`, `y1..ym`.
    pub fn from_grid(p_xy: Vec<Vec<Rational>>) -> Result<Self> {
        let n = p_xy.len();
        let m = p_xy.first().map_or(0, Vec::len);
        Self::new(default_labels("x", n), default_labels("y", m), p_xy)
    }

    /// Rebuilds `P'_XY(x, y) = px(x) · P_{Y|X}(y | x)` over the conditional's rows.
    pub fn from_conditional(
        x_labels: Vec<String>,
        y_labels: Vec<String>,
        px: &[Rational],
        conditional: &[Vec<Rational>],
    ) -> Result<Self> {
        if px.len() != conditional.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} marginal entries for {} conditional rows",
                px.len(),
                conditional.len()
            )));
        }
        let grid = px
            .iter()
            .zip(conditional)
            .map(|(p, row)| row.iter().map(|c| p * c).collect())
            .collect();
        Self::new(x_labels, y_labels, grid)
    }

    pub fn n(&self) -> usize {
        self.x_labels.len()
    }

    pub fn m(&self) -> usize {
        self.y_labels.len()
    }

    pub fn x_labels(&self) -> &[String] {
        &self.x_labels
    }

    pub fn y_labels(&self) -> &[String] {
        &self.y_labels
    }

    pub fn p_xy(&self) -> &[Vec<Rational>] {
        &self.p_xy
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.p_xy[i][j]
    }

    pub fn x_index(&self, label: &str) -> Option<usize> {
        self.x_labels.iter().position(|l| l == label)
    }

    pub fn y_index(&self, label: &str) -> Option<usize> {
        self.y_labels.iter().position(|l| l == label)
    }

    /// Row indices with positive mass.
    pub fn supp_x(&self) -> Vec<usize> {
        marginal_x(self)
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_positive())
            .map(|(i, _)| i)
            .collect()
    }

    /// Column indices with positive mass.
    pub fn supp_y(&self) -> Vec<usize> {
        marginal_y(self)
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_positive())
            .map(|(j, _)| j)
            .collect()
    }
}

pub(crate) fn default_labels(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|k| format!("{prefix}{k}")).collect()
}

/// `P_X(x_i) = Σ_j P_XY(x_i, y_j)`.
pub fn marginal_x(inst: &Instance) -> Vec<Rational> {
    inst.p_xy.iter().map(|row| row.iter().sum()).collect()
}

/// `P_Y(y_j) = Σ_i P_XY(x_i, y_j)`.
pub fn marginal_y(inst: &Instance) -> Vec<Rational> {
    (0..inst.m())
        .map(|j| inst.p_xy.iter().map(|row| &row[j]).sum())
        .collect()
}

/// `P_{Y|X}` restricted to the rows in the support of X.
///
/// Every row sums to exactly one. Zero-mass columns are kept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionalMatrix {
    rows: Vec<usize>,
    m: usize,
    entries: Vec<Vec<Rational>>,
}

impl ConditionalMatrix {
    /// Wraps a row-stochastic grid directly. `rows` names the instance rows
    /// the grid rows came from.
    pub fn new(rows: Vec<usize>, entries: Vec<Vec<Rational>>) -> Result<Self> {
        let m = entries.first().map_or(0, Vec::len);
        if entries.is_empty() || m == 0 {
            return Err(Error::InvalidInstance("empty conditional matrix".into()));
        }
        if rows.len() != entries.len() {
            return Err(Error::DimensionMismatch("row index list length".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidInstance(format!("conditional row {} is ragged", i + 1)));
            }
            if row.iter().any(Rational::is_negative) {
                return Err(Error::InvalidInstance(format!("conditional row {} has a negative entry", i + 1)));
            }
            let total: Rational = row.iter().sum();
            if total != 1 {
                return Err(Error::InvalidInstance(format!(
                    "conditional row {} sums to {total}, not 1",
                    i + 1
                )));
            }
        }
        Ok(ConditionalMatrix { rows, m, entries })
    }

    /// Convenience for tests and examples: rows are numbered `0..n`.
    pub fn from_rows(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let rows = (0..entries.len()).collect();
        Self::new(rows, entries)
    }

    /// Number of real rows (the size of supp X).
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Instance row index of each conditional row.
    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn column_sums(&self) -> Vec<Rational> {
        (0..self.m)
            .map(|j| self.entries.iter().map(|row| &row[j]).sum())
            .collect()
    }
}

/// `P_{Y|X}(y_j | x_i) = P_XY(x_i, y_j) / P_X(x_i)` for every `x_i` in supp X.
pub fn conditional_y_given_x(inst: &Instance) -> ConditionalMatrix {
    let px = marginal_x(inst);
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for (i, p) in px.iter().enumerate() {
        if !p.is_positive() {
            continue;
        }
        rows.push(i);
        entries.push(inst.p_xy[i].iter().map(|v| v / p).collect());
    }
    ConditionalMatrix { rows, m: inst.m(), entries }
}
