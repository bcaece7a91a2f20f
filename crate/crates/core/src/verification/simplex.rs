//! Phase-one simplex over exact rationals.

use crate::rational::Rational;

/// Finds `x ≥ 0` with `A x = b`, or `None` if there is none.
///
/// `b` must be non-negative. One artificial variable is added per row and
/// their sum is minimised with Bland's smallest-index rule, which cannot
/// cycle. The system is feasible iff the minimum is zero.
pub fn find_feasible_point(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    assert_eq!(rows, b.len(), "one right-hand side per row");
    assert!(b.iter().all(|v| !v.is_negative()), "right-hand side must be non-negative");
    let vars = a.first().map_or(0, Vec::len);
    let width = vars + rows;

    // Tableau rows are [A | I | b]; the objective row holds reduced costs and
    // minus the current objective value.
    let mut tableau: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(r, (row, rhs))| {
            assert_eq!(row.len(), vars, "ragged constraint matrix");
            let mut t = row.clone();
            t.extend((0..rows).map(|c| if c == r { Rational::one() } else { Rational::zero() }));
            t.push(rhs.clone());
            t
        })
        .collect();
    let mut objective: Vec<Rational> = (0..=width)
        .map(|c| {
            if c < vars || c == width {
                -tableau.iter().map(|t| &t[c]).sum::<Rational>()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let mut basis: Vec<usize> = (vars..width).collect();

    while let Some(entering) = (0..width).find(|&c| objective[c].is_negative()) {
        let leaving = (0..rows)
            .filter(|&r| tableau[r][entering].is_positive())
            .map(|r| (&tableau[r][width] / &tableau[r][entering], basis[r], r))
            .min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)))
            .map(|(_, _, r)| r)
            .expect("phase one is bounded below by zero");
        pivot(&mut tableau, &mut objective, leaving, entering);
        basis[leaving] = entering;
    }

    if !objective[width].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); vars];
    for (r, &v) in basis.iter().enumerate() {
        if v < vars {
            x[v] = tableau[r][width].clone();
        }
    }
    Some(x)
}

fn pivot(tableau: &mut [Vec<Rational>], objective: &mut [Rational], row: usize, col: usize) {
    let p = tableau[row][col].clone();
    for v in tableau[row].iter_mut() {
        *v = &*v / &p;
    }
    let pivot_row = tableau[row].clone();
    let eliminate = |target: &mut [Rational]| {
        let factor = target[col].clone();
        if factor.is_zero() {
            return;
        }
        for (t, pv) in target.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *t = &*t - &factor * pv;
            }
        }
    };
    for (r, t) in tableau.iter_mut().enumerate() {
        if r != row {
            eliminate(t);
        }
    }
    eliminate(objective);
}
