//! Deciding whether a perfectly secret, informative public signal exists.
//!
//! A scheme exists iff the conditional matrix `P_{Y|X}` (rows restricted to
//! supp X) is column-substochastic: `Σ_x P(y | x) ≤ 1` for every `y`.

use serde::Serialize;

use crate::construction::build_scheme;
use crate::error::{Error, Result};
use crate::model::{conditional_y_given_x, marginal_x, marginal_y, Instance};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShannonCase {
    pub independent: bool,
    pub y_uniform: bool,
    /// `#supp X`.
    pub n: usize,
    /// `#supp Y`.
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FeasibilityReport {
    pub feasible: bool,
    /// `Σ_{x ∈ supp X} P(y_j | x)` for every column `j`, including zero-mass ones.
    pub column_sums: Vec<Rational>,
    /// Columns whose sum exceeds one, ascending.
    pub violations: Vec<usize>,
    /// Present when X and Y are independent.
    pub shannon_case: Option<ShannonCase>,
}

pub fn check_feasible(inst: &Instance) -> FeasibilityReport {
    let column_sums = conditional_y_given_x(inst).column_sums();
    let violations: Vec<usize> = column_sums
        .iter()
        .enumerate()
        .filter(|(_, s)| **s > 1)
        .map(|(j, _)| j)
        .collect();
    let shannon_case = shannon_case(inst).filter(|c| c.independent);
    FeasibilityReport { feasible: violations.is_empty(), column_sums, violations, shannon_case }
}

fn shannon_case(inst: &Instance) -> Option<ShannonCase> {
    let px = marginal_x(inst);
    let py = marginal_y(inst);
    let independent = (0..inst.n()).all(|i| (0..inst.m()).all(|j| *inst.get(i, j) == &px[i] * &py[j]));
    let supp_y: Vec<&Rational> = py.iter().filter(|p| p.is_positive()).collect();
    let y_uniform = supp_y.windows(2).all(|w| w[0] == w[1]);
    Some(ShannonCase {
        independent,
        y_uniform,
        n: px.iter().filter(|p| p.is_positive()).count(),
        m: supp_y.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShannonReduction {
    /// X and Y are independent and Y is uniform on its support.
    pub applies: bool,
    pub n: usize,
    pub m: usize,
    /// `#supp X ≤ #supp Y`; meaningful only when `applies`.
    pub feasible_by_count: bool,
}

/// Recognises the one-time-pad setting, where feasibility reduces to
/// counting: a uniform key independent of the state hides it iff there are at
/// least as many keys as states.
pub fn shannon_reduce(inst: &Instance) -> ShannonReduction {
    let case = shannon_case(inst).expect("always computed");
    ShannonReduction {
        applies: case.independent && case.y_uniform,
        n: case.n,
        m: case.m,
        feasible_by_count: case.n <= case.m,
    }
}

/// Checks that feasibility and the constructed decomposition depend only on
/// `P_{Y|X}`: rebuilds the instance with prior `alt_px` and compares.
///
/// `alt_px` has one entry per instance row; it must be positive exactly on
/// supp X and sum to one.
pub fn marginal_invariance_witness(inst: &Instance, alt_px: &[Rational]) -> Result<bool> {
    if alt_px.len() != inst.n() {
        return Err(Error::InvalidMarginal(format!(
            "{} entries for {} states",
            alt_px.len(),
            inst.n()
        )));
    }
    let px = marginal_x(inst);
    for (i, (alt, orig)) in alt_px.iter().zip(&px).enumerate() {
        if orig.is_positive() != alt.is_positive() || alt.is_negative() {
            return Err(Error::InvalidMarginal(format!(
                "entry for {} must be {} (got {alt})",
                inst.x_labels()[i],
                if orig.is_positive() { "positive" } else { "zero" }
            )));
        }
    }
    if alt_px.iter().sum::<Rational>() != 1 {
        return Err(Error::InvalidMarginal("entries must sum to 1".into()));
    }

    let cm = conditional_y_given_x(inst);
    let mut grid = vec![vec![Rational::zero(); inst.m()]; inst.n()];
    for (r, &i) in cm.rows().iter().enumerate() {
        grid[i] = cm.entries()[r].iter().map(|c| &alt_px[i] * c).collect();
    }
    let rebuilt = Instance::new(inst.x_labels().to_vec(), inst.y_labels().to_vec(), grid)?;

    let before = check_feasible(inst);
    let after = check_feasible(&rebuilt);
    if before.feasible != after.feasible || before.column_sums != after.column_sums {
        return Ok(false);
    }
    if !before.feasible {
        return Ok(true);
    }
    let a = build_scheme(inst)?;
    let b = build_scheme(&rebuilt)?;
    Ok(a.weights() == b.weights() && a.perms() == b.perms())
}
