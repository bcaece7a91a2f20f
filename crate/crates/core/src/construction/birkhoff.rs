use serde::Serialize;

use crate::construction::extend::ExtendedMatrix;
use crate::construction::matching::perfect_matching;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// One term `α · Π` of a convex combination of permutation matrices, with
/// `Π[i][j] = 1` iff `sigma[i] == j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub weight: Rational,
    pub sigma: Vec<usize>,
}

/// Greedy Birkhoff–von Neumann decomposition.
///
/// Each round takes the lexicographically first perfect matching on the
/// positive entries of the residual, extracts the smallest residual entry on
/// it, and subtracts. At least one entry reaches zero per round, so the
/// residual walks down faces of the Birkhoff polytope and the number of terms
/// is at most `m² − 2m + 2`.
pub fn birkhoff_decompose(ext: &ExtendedMatrix) -> Result<Vec<Term>> {
    let m = ext.m();
    let mut residual = ext.entries().to_vec();
    let mut remaining = Rational::one();
    let mut terms = Vec::new();
    while remaining.is_positive() {
        let support: Vec<Vec<bool>> = residual
            .iter()
            .map(|row| row.iter().map(Rational::is_positive).collect())
            .collect();
        let sigma = perfect_matching(&support).ok_or_else(|| {
            Error::Internal("no perfect matching on a nonzero doubly stochastic residual".into())
        })?;
        let weight = sigma
            .iter()
            .enumerate()
            .map(|(i, &j)| residual[i][j].clone())
            .reduce(Rational::min)
            .expect("m ≥ 1");
        for (i, &j) in sigma.iter().enumerate() {
            residual[i][j] = &residual[i][j] - &weight;
        }
        remaining = remaining - &weight;
        terms.push(Term { weight, sigma });
        if terms.len() > m * m {
            return Err(Error::Internal("decomposition did not terminate".into()));
        }
    }
    if residual.iter().flatten().any(|v| !v.is_zero()) {
        return Err(Error::Internal("nonzero residual after unit mass was extracted".into()));
    }
    Ok(terms)
}

/// `Σ_k α_k Π^(k)` as a dense grid.
pub fn recompose(m: usize, terms: &[Term]) -> Vec<Vec<Rational>> {
    let mut out = vec![vec![Rational::zero(); m]; m];
    for term in terms {
        for (i, &j) in term.sigma.iter().enumerate() {
            out[i][j] = &out[i][j] + &term.weight;
        }
    }
    out
}
