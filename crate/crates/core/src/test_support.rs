//! Shared fixtures for unit tests.

use proptest::prelude::*;

use crate::model::Instance;
use crate::rational::{rat_parse, Rational};

pub fn grid(rows: &[&[&str]]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|row| row.iter().map(|t| rat_parse(t).unwrap()).collect())
        .collect()
}

pub fn instance(rows: &[&[&str]]) -> Instance {
    Instance::from_grid(grid(rows)).unwrap()
}

/// `P_XY = diag(px) · conditional`.
pub fn instance_from(px: &[&str], conditional: &[&[&str]]) -> Instance {
    let px: Vec<Rational> = px.iter().map(|t| rat_parse(t).unwrap()).collect();
    let grid = px
        .iter()
        .zip(grid(conditional))
        .map(|(p, row)| row.iter().map(|c| p * c).collect())
        .collect();
    Instance::from_grid(grid).unwrap()
}

/// Instances whose entries are small integer weights normalised to mass one.
pub fn arb_instance(max_n: usize, max_m: usize, max_weight: u32) -> impl Strategy<Value = Instance> {
    (1..=max_n, 1..=max_m)
        .prop_flat_map(move |(n, m)| {
            proptest::collection::vec(0..=max_weight, n * m).prop_map(move |w| (n, m, w))
        })
        .prop_filter("needs positive mass", |(_, _, w)| w.iter().any(|&v| v > 0))
        .prop_map(|(_, m, w)| {
            let total: u32 = w.iter().sum();
            let grid = w
                .chunks(m)
                .map(|row| row.iter().map(|&v| Rational::new(v as i64, total as i64)).collect())
                .collect();
            Instance::from_grid(grid).unwrap()
        })
}

/// Feasible instances: a random row-stochastic matrix whose columns are
/// scaled down until every column sum is at most one, times a random prior.
pub fn arb_feasible_instance(max_n: usize, max_m: usize) -> impl Strategy<Value = Instance> {
    (1..=max_n, 1..=max_m)
        .prop_filter("n ≤ m", |(n, m)| n <= m)
        .prop_flat_map(|(n, m)| {
            (
                proptest::collection::vec(1u32..=4, n),
                proptest::collection::vec(0u32..=3, m),
                proptest::collection::vec(0u32..=3, n * m),
                Just((n, m)),
            )
        })
        .prop_map(|(px_w, col_w, noise, (n, m))| {
            // Mix of a uniform-over-all-columns component (column sums n/m ≤ 1)
            // and a permutation-shifted diagonal, both doubly-substochastic.
            let px_total: u32 = px_w.iter().sum();
            let shift = col_w.iter().sum::<u32>() as usize % m;
            let lambda = Rational::new(noise.iter().sum::<u32>() as i64 % 5, 4).min(Rational::one());
            let grid = (0..n)
                .map(|i| {
                    let p = Rational::new(px_w[i] as i64, px_total as i64);
                    (0..m)
                        .map(|j| {
                            let uniform = Rational::new(1, m as i64);
                            let diag = if (i + shift) % m == j { Rational::one() } else { Rational::zero() };
                            let c = &lambda * diag + (Rational::one() - &lambda) * uniform;
                            &p * c
                        })
                        .collect()
                })
                .collect();
            Instance::from_grid(grid).unwrap()
        })
}
