use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::ConditionalMatrix;
use crate::rational::Rational;

/// An `m × m` doubly stochastic matrix whose first `n` rows are the
/// conditional matrix and whose remaining rows are identical padding rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtendedMatrix {
    n: usize,
    entries: Vec<Vec<Rational>>,
}

impl ExtendedMatrix {
    /// Wraps a square grid after checking that it is doubly stochastic.
    /// `n` is the number of leading rows that carry real outcomes.
    pub fn new(n: usize, entries: Vec<Vec<Rational>>) -> Result<Self> {
        let m = entries.len();
        if m == 0 || n > m || entries.iter().any(|row| row.len() != m) {
            return Err(Error::DimensionMismatch("extended matrix must be square with n ≤ m".into()));
        }
        let ext = ExtendedMatrix { n, entries };
        ext.check_doubly_stochastic()?;
        Ok(ext)
    }

    pub fn m(&self) -> usize {
        self.entries.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn positive_count(&self) -> usize {
        self.entries.iter().flatten().filter(|v| v.is_positive()).count()
    }

    fn check_doubly_stochastic(&self) -> Result<()> {
        let m = self.m();
        for (i, row) in self.entries.iter().enumerate() {
            if row.iter().any(Rational::is_negative) {
                return Err(Error::Internal(format!("negative entry in row {}", i + 1)));
            }
            let s: Rational = row.iter().sum();
            if s != 1 {
                return Err(Error::Internal(format!("row {} sums to {s}", i + 1)));
            }
        }
        for j in 0..m {
            let s: Rational = self.entries.iter().map(|row| &row[j]).sum();
            if s != 1 {
                return Err(Error::Internal(format!("column {} sums to {s}", j + 1)));
            }
        }
        Ok(())
    }
}

/// Pads a column-substochastic conditional matrix to a doubly stochastic one.
///
/// Each of the `m − n` padding rows is `r_j = (1 − Σ_i P(y_j | x_i)) / (m − n)`.
/// When `n = m` the matrix is returned unchanged; feasibility then forces every
/// column sum to be exactly one, which is checked.
pub fn extend(cm: &ConditionalMatrix) -> Result<ExtendedMatrix> {
    let (n, m) = (cm.n(), cm.m());
    let sums = cm.column_sums();
    if let Some((column, sum)) = sums.iter().enumerate().find(|(_, s)| **s > 1) {
        return Err(Error::Infeasible { column, sum: sum.to_string() });
    }
    if n > m {
        // Unreachable for row-stochastic input: Σ column sums = n ≤ m.
        return Err(Error::Internal(format!("{n} rows exceed {m} columns")));
    }
    let mut entries = cm.entries().to_vec();
    if n < m {
        let pad = Rational::from_integer((m - n) as i64);
        let r: Vec<Rational> = sums.iter().map(|s| (Rational::one() - s) / &pad).collect();
        entries.extend(std::iter::repeat_n(r, m - n));
    }
    ExtendedMatrix::new(n, entries)
}
