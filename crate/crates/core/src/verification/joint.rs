use serde::Serialize;

use crate::construction::Scheme;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// An explicit joint table `Q(x_i, y_j, z_k)` together with the prior `P_X`
/// it is meant to keep secret.
///
/// Unlike [`Scheme`], a joint table need not come from permutations and need
/// not have unit mass, so it can describe broken schemes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Joint {
    x_labels: Vec<String>,
    y_labels: Vec<String>,
    z_labels: Vec<String>,
    px: Vec<Rational>,
    /// Indexed `[i][j][k]`.
    q: Vec<Vec<Vec<Rational>>>,
}

impl Joint {
    pub fn new(
        x_labels: Vec<String>,
        y_labels: Vec<String>,
        z_labels: Vec<String>,
        px: Vec<Rational>,
        q: Vec<Vec<Vec<Rational>>>,
    ) -> Result<Self> {
        let (n, m, p) = (x_labels.len(), y_labels.len(), z_labels.len());
        let shaped = px.len() == n
            && q.len() == n
            && q.iter().all(|plane| plane.len() == m && plane.iter().all(|cell| cell.len() == p));
        if !shaped {
            return Err(Error::DimensionMismatch(format!("joint table is not {n}×{m}×{p}")));
        }
        if q.iter().flatten().flatten().any(Rational::is_negative) {
            return Err(Error::InvalidScheme("negative joint probability".into()));
        }
        Ok(Joint { x_labels, y_labels, z_labels, px, q })
    }

    pub fn from_scheme(s: &Scheme) -> Self {
        let q = (0..s.n())
            .map(|i| (0..s.m()).map(|j| (0..s.p()).map(|k| s.q(i, j, k)).collect()).collect())
            .collect();
        Joint {
            x_labels: s.x_labels().to_vec(),
            y_labels: s.y_labels().to_vec(),
            z_labels: s.z_labels().to_vec(),
            px: s.px().to_vec(),
            q,
        }
    }

    pub fn n(&self) -> usize {
        self.x_labels.len()
    }

    pub fn m(&self) -> usize {
        self.y_labels.len()
    }

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

    pub fn q(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.q[i][j][k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Rational) {
        assert!(!value.is_negative(), "negative joint probability");
        self.q[i][j][k] = value;
    }

    pub fn mass(&self) -> Rational {
        self.q.iter().flatten().flatten().sum()
    }

    pub fn q_z(&self) -> Vec<Rational> {
        (0..self.p())
            .map(|k| self.q.iter().flat_map(|plane| plane.iter().map(move |cell| &cell[k])).sum())
            .collect()
    }

    pub fn q_x(&self) -> Vec<Rational> {
        self.q.iter().map(|plane| plane.iter().flatten().sum()).collect()
    }

    /// `[i][k]`.
    pub fn q_xz(&self) -> Vec<Vec<Rational>> {
        self.q
            .iter()
            .map(|plane| (0..self.p()).map(|k| plane.iter().map(|cell| &cell[k]).sum()).collect())
            .collect()
    }

    /// `[j][k]`.
    pub fn q_yz(&self) -> Vec<Vec<Rational>> {
        (0..self.m())
            .map(|j| (0..self.p()).map(|k| self.q.iter().map(|plane| &plane[j][k]).sum()).collect())
            .collect()
    }

    /// `[i][j]`.
    pub fn q_xy(&self) -> Vec<Vec<Rational>> {
        self.q
            .iter()
            .map(|plane| plane.iter().map(|cell| cell.iter().sum()).collect())
            .collect()
    }

    /// `φ(x_i, y_j)`: signals sent with positive probability at `(x_i, y_j)`.
    pub fn support_signals(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.p()).filter(|&k| self.q[i][j][k].is_positive()).collect()
    }
}

impl From<&Scheme> for Joint {
    fn from(s: &Scheme) -> Self {
        Joint::from_scheme(s)
    }
}
