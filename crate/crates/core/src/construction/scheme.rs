use serde::Serialize;

use crate::construction::birkhoff::{birkhoff_decompose, Term};
use crate::construction::extend::extend;
use crate::error::{Error, Result};
use crate::model::{check_labels, conditional_y_given_x, default_labels, marginal_x, Instance};
use crate::rational::Rational;

/// A public-signal scheme in factored form.
///
/// Signal `z_k` is sent with probability `weights[k]`; given `z_k`, state
/// `x_i` is paired with side information `y_{perms[k][i]}`. The implied joint is
/// `Q(x_i, y_j, z_k) = weights[k] · px[i] · [perms[k][i] == j]`.
///
/// Rows `0..n` are the real states. A permutation assigns all `m` rows of the
/// padded matrix, so `perms[k]` has length `m`; entries at positions `n..m`
/// belong to padding rows and carry no mass.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Scheme {
    x_labels: Vec<String>,
    y_labels: Vec<String>,
    z_labels: Vec<String>,
    px: Vec<Rational>,
    weights: Vec<Rational>,
    perms: Vec<Vec<usize>>,
}

impl Scheme {
    pub fn new(
        x_labels: Vec<String>,
        y_labels: Vec<String>,
        z_labels: Vec<String>,
        px: Vec<Rational>,
        weights: Vec<Rational>,
        perms: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidScheme(msg));
        let (n, m, p) = (x_labels.len(), y_labels.len(), z_labels.len());
        if n == 0 || p == 0 {
            return invalid("a scheme needs at least one state and one signal".into());
        }
        if n > m {
            return invalid(format!("{n} states cannot be paired injectively with {m} outcomes"));
        }
        check_labels(&x_labels, "x").map_err(relabel)?;
        check_labels(&y_labels, "y").map_err(relabel)?;
        check_labels(&z_labels, "z").map_err(relabel)?;
        if px.len() != n {
            return invalid(format!("{} prior entries for {n} states", px.len()));
        }
        if px.iter().any(Rational::is_negative) || px.iter().sum::<Rational>() != 1 {
            return invalid("state prior must be non-negative with mass 1".into());
        }
        if weights.len() != p || perms.len() != p {
            return invalid(format!("{p} signals but {} weights and {} permutations", weights.len(), perms.len()));
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return invalid("every signal weight must be positive".into());
        }
        let total: Rational = weights.iter().sum();
        if total != 1 {
            return invalid(format!("signal weights sum to {total}, not 1"));
        }
        for (k, sigma) in perms.iter().enumerate() {
            if !is_permutation(sigma, m) {
                return invalid(format!("assignment for {} is not a permutation of 1..{m}", z_labels[k]));
            }
        }
        Ok(Scheme { x_labels, y_labels, z_labels, px, weights, perms })
    }

    pub fn n(&self) -> usize {
        self.x_labels.len()
    }

    pub fn m(&self) -> usize {
        self.y_labels.len()
    }

    /// Number of signals.
    pub fn p(&self) -> usize {
        self.z_labels.len()
    }

    pub fn x_labels(&self) -> &[String] {
        &self.x_labels
    }

    pub fn y_labels(&self) -> &[String] {
        &self.y_labels
    }

    pub fn z_labels(&self) -> &[String] {
        &self.z_labels
    }

    pub fn px(&self) -> &[Rational] {
        &self.px
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn terms(&self) -> Vec<Term> {
        self.weights
            .iter()
            .zip(&self.perms)
            .map(|(w, s)| Term { weight: w.clone(), sigma: s.clone() })
            .collect()
    }

    pub fn x_index(&self, label: &str) -> Option<usize> {
        self.x_labels.iter().position(|l| l == label)
    }

    pub fn y_index(&self, label: &str) -> Option<usize> {
        self.y_labels.iter().position(|l| l == label)
    }

    pub fn z_index(&self, label: &str) -> Option<usize> {
        self.z_labels.iter().position(|l| l == label)
    }

    /// `Q_XYZ(x_i, y_j, z_k)`.
    pub fn q(&self, i: usize, j: usize, k: usize) -> Rational {
        if self.perms[k][i] == j {
            &self.weights[k] * &self.px[i]
        } else {
            Rational::zero()
        }
    }

    /// `Σ_k α_k [σ_k(i) = j]`, the conditional the scheme reproduces.
    pub fn implied_conditional(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.m()]; self.n()];
        for (w, sigma) in self.weights.iter().zip(&self.perms) {
            for (i, row) in out.iter_mut().enumerate() {
                row[sigma[i]] = &row[sigma[i]] + w;
            }
        }
        out
    }

    /// The `(X, Y)` marginal of the scheme as an instance.
    pub fn implied_instance(&self) -> Instance {
        Instance::from_conditional(
            self.x_labels.clone(),
            self.y_labels.clone(),
            &self.px,
            &self.implied_conditional(),
        )
        .expect("a valid scheme has a valid (X, Y) marginal")
    }

    /// Row of the padded matrix that `σ_k` sends to column `j`.
    pub fn preimage(&self, j: usize, k: usize) -> usize {
        self.perms[k].iter().position(|&c| c == j).expect("σ_k is a bijection")
    }

    /// `φ(x_i, y_j) = {k : Q_XYZ(x_i, y_j, z_k) > 0}`.
    pub fn support_signals(&self, i: usize, j: usize) -> Vec<usize> {
        if !self.px[i].is_positive() {
            return Vec::new();
        }
        (0..self.p()).filter(|&k| self.perms[k][i] == j).collect()
    }
}

fn relabel(e: Error) -> Error {
    match e {
        Error::InvalidInstance(msg) => Error::InvalidScheme(msg),
        other => other,
    }
}

fn is_permutation(sigma: &[usize], m: usize) -> bool {
    let mut seen = vec![false; m];
    sigma.len() == m && sigma.iter().all(|&j| j < m && !std::mem::replace(&mut seen[j], true))
}

/// Builds a witness scheme for a feasible instance: conditional matrix,
/// padding to doubly stochastic, greedy Birkhoff decomposition, and one
/// signal per permutation.
pub fn build_scheme(inst: &Instance) -> Result<Scheme> {
    let cm = conditional_y_given_x(inst);
    let ext = extend(&cm)?;
    let terms = birkhoff_decompose(&ext)?;
    let px = marginal_x(inst);
    let x_labels = cm.rows().iter().map(|&i| inst.x_labels()[i].clone()).collect();
    let px = cm.rows().iter().map(|&i| px[i].clone()).collect();
    let z_labels = default_labels("z", terms.len());
    let (weights, perms) = terms.into_iter().map(|t| (t.weight, t.sigma)).unzip();
    Scheme::new(x_labels, inst.y_labels().to_vec(), z_labels, px, weights, perms)
}
