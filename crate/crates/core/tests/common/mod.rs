//! A fixed corpus of small instances shared by the integration tests.

#![allow(dead_code)]

use perfect_secrecy::construction::Scheme;
use perfect_secrecy::verification::all_permutations;
use perfect_secrecy::{Instance, RandomSource, Rational};

pub const CORPUS_SEED: u64 = 0x5eed_c0de;
pub const MAX_DIM: usize = 4;
pub const MAX_DENOMINATOR: i64 = 12;

/// At least 1000 instances with `n, m ≤ 4` and every entry a fraction with
/// denominator at most 12.
///
/// Three families, in order: every way to spread a mass of up to 4 units
/// over a grid of at most 4 cells; random spreads of `D ≤ 12` units over
/// larger grids; and uniform-prior mixtures of permutations, which are
/// feasible by construction. The first two families are mostly infeasible
/// once `n > 1`, so the third keeps the split balanced.
pub fn corpus() -> Vec<Instance> {
    let mut out = Vec::new();
    for n in 1..=MAX_DIM {
        for m in 1..=MAX_DIM {
            if n * m <= 4 {
                for total in 1..=4 {
                    compositions(n * m, total, &mut |cells| out.push(grid(n, m, cells, total)));
                }
            }
        }
    }

    let mut rng = RandomSource::new(CORPUS_SEED);
    for n in 1..=MAX_DIM {
        for m in 1..=MAX_DIM {
            for _ in 0..60 {
                let total = 1 + rng.below_u64(MAX_DENOMINATOR as u64) as i64;
                let mut cells = vec![0i64; n * m];
                for _ in 0..total {
                    cells[rng.below_u64((n * m) as u64) as usize] += 1;
                }
                out.push(grid(n, m, &cells, total));
            }
        }
    }

    let mut rng = RandomSource::substream(CORPUS_SEED, 1);
    for m in 1..=MAX_DIM {
        let perms = all_permutations(m);
        for n in 1..=m {
            let units = MAX_DENOMINATOR / n as i64;
            for _ in 0..60 {
                let mut counts = vec![vec![0i64; m]; n];
                for _ in 0..units {
                    let sigma = &perms[rng.below_u64(perms.len() as u64) as usize];
                    for (i, row) in counts.iter_mut().enumerate() {
                        row[sigma[i]] += 1;
                    }
                }
                let cells: Vec<i64> = counts.concat();
                out.push(grid(n, m, &cells, units * n as i64));
            }
        }
    }

    let mut distinct: Vec<Instance> = Vec::with_capacity(out.len());
    for inst in out {
        if !distinct.contains(&inst) {
            distinct.push(inst);
        }
    }
    distinct
}

fn grid(n: usize, m: usize, cells: &[i64], total: i64) -> Instance {
    let rows = (0..n)
        .map(|i| (0..m).map(|j| Rational::new(cells[i * m + j], total)).collect())
        .collect();
    Instance::from_grid(rows).expect("corpus instance is a distribution")
}

fn compositions(slots: usize, total: i64, visit: &mut impl FnMut(&[i64])) {
    fn go(cells: &mut Vec<i64>, slots: usize, left: i64, visit: &mut impl FnMut(&[i64])) {
        if cells.len() + 1 == slots {
            cells.push(left);
            visit(cells);
            cells.pop();
            return;
        }
        for v in 0..=left {
            cells.push(v);
            go(cells, slots, left - v, visit);
            cells.pop();
        }
    }
    go(&mut Vec::new(), slots, total, visit);
}

pub fn rat(s: &str) -> Rational {
    perfect_secrecy::rat_parse(s).unwrap()
}

/// `P_XY` from a prior and a row-stochastic `P_{Y|X}` written as strings.
pub fn instance(px: &[&str], conditional: &[&[&str]]) -> Instance {
    let px: Vec<Rational> = px.iter().map(|s| rat(s)).collect();
    let rows = conditional
        .iter()
        .zip(&px)
        .map(|(row, p)| row.iter().map(|s| p * &rat(s)).collect())
        .collect();
    Instance::from_grid(rows).unwrap()
}

pub fn xor_pad() -> Instance {
    instance(&["1/2", "1/2"], &[&["1/2", "1/2"], &["1/2", "1/2"]])
}

pub fn corr23() -> Instance {
    instance(&["1/2", "1/2"], &[&["1/2", "1/2", "0"], &["0", "1/2", "1/2"]])
}

pub fn no_deterministic() -> Instance {
    instance(&["1/2", "1/2"], &[&["1/2", "1/2", "0"], &["0", "1/3", "2/3"]])
}

pub fn example_path(name: &str) -> String {
    format!("{}/examples/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn size_bound(s: &Scheme) -> usize {
    let m = s.m();
    if m < 2 {
        1
    } else {
        m * m - 2 * m + 2
    }
}
