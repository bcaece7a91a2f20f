//! Running a scheme: drawing worlds, encoding, decoding, and Monte Carlo
//! estimates of what Bob and Eve learn.
//!
//! # Randomness
//!
//! [`RandomSource`] is ChaCha20 keyed by `seed` through
//! `SeedableRng::seed_from_u64`, with the 64-bit ChaCha stream id selecting a
//! sub-stream. Simulations split their samples into consecutive chunks of
//! [`CHUNK_SIZE`]; chunk `c` draws from sub-stream `(seed, c)`. Results depend
//! only on `(scheme, instance, samples, seed)` and not on the worker count.
//!
//! Events are selected exactly: a distribution with rational weights is
//! scaled by the least common multiple of its denominators, and an integer
//! drawn uniformly below the scaled total picks the outcome.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::construction::Scheme;
use crate::error::{Error, Result};
use crate::model::Instance;
use crate::rational::Rational;
use crate::verification::verify;

pub const CHUNK_SIZE: u64 = 4096;
pub const DEFAULT_MIN_COUNT: u64 = 1000;

#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    stream: u64,
    rng: ChaCha20Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self::substream(seed, 0)
    }

    pub fn substream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RandomSource { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in `[0, bound)` by masked rejection. `bound` must be positive.
    pub fn below_u64(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let mask = u64::MAX >> (bound - 1).leading_zeros().min(63);
        let mask = if bound == 1 { 0 } else { mask };
        loop {
            let v = self.next_u64() & mask;
            if v < bound {
                return v;
            }
        }
    }

    /// Uniform in `[0, bound)` for arbitrarily large bounds.
    pub fn below(&mut self, bound: &BigUint) -> BigUint {
        assert!(!bound.is_zero(), "empty range");
        if let Some(b) = bound.to_u64() {
            return BigUint::from(self.below_u64(b));
        }
        let bits = bound.bits();
        let words = bits.div_ceil(64) as usize;
        let top_bits = bits - 64 * (words as u64 - 1);
        loop {
            let mut digits: Vec<u64> = (0..words).map(|_| self.next_u64()).collect();
            if top_bits < 64 {
                digits[words - 1] &= (1u64 << top_bits) - 1;
            }
            let v = BigUint::from_slice(
                &digits.iter().flat_map(|d| [*d as u32, (*d >> 32) as u32]).collect::<Vec<_>>(),
            );
            if &v < bound {
                return v;
            }
        }
    }
}

#[derive(Debug, Clone)]
enum Cumulative {
    Small(Vec<u64>),
    Big(Vec<BigUint>),
}

/// Draws an index with probability exactly `weight[t] / Σ weight`.
#[derive(Debug, Clone)]
pub struct ExactSampler {
    cumulative: Cumulative,
}

impl ExactSampler {
    /// Weights must be non-negative with a positive total.
    pub fn new(weights: &[Rational]) -> Self {
        assert!(weights.iter().all(|w| !w.is_negative()), "negative weight");
        let scale = Rational::common_denominator(weights.iter());
        let mut running = BigUint::zero();
        let big: Vec<BigUint> = weights
            .iter()
            .map(|w| {
                running += w.scaled_to_integer(&scale).expect("scale clears every denominator");
                running.clone()
            })
            .collect();
        assert!(!running.is_zero(), "weights must have positive total");
        let cumulative = match big.iter().map(ToPrimitive::to_u64).collect::<Option<Vec<u64>>>() {
            Some(small) => Cumulative::Small(small),
            None => Cumulative::Big(big),
        };
        ExactSampler { cumulative }
    }

    pub fn sample(&self, rng: &mut RandomSource) -> usize {
        match &self.cumulative {
            Cumulative::Small(c) => {
                let u = rng.below_u64(*c.last().expect("non-empty"));
                c.partition_point(|&v| v <= u)
            }
            Cumulative::Big(c) => {
                let u = rng.below(c.last().expect("non-empty"));
                c.partition_point(|v| *v <= u)
            }
        }
    }
}

/// Draws `(x_i, y_j)` index pairs from an instance.
#[derive(Debug, Clone)]
pub struct WorldSampler {
    m: usize,
    sampler: ExactSampler,
}

impl WorldSampler {
    pub fn new(inst: &Instance) -> Self {
        let cells: Vec<Rational> = inst.p_xy().iter().flatten().cloned().collect();
        WorldSampler { m: inst.m(), sampler: ExactSampler::new(&cells) }
    }

    pub fn sample(&self, rng: &mut RandomSource) -> (usize, usize) {
        let cell = self.sampler.sample(rng);
        (cell / self.m, cell % self.m)
    }
}

pub fn sample_world(inst: &Instance, rng: &mut RandomSource) -> (usize, usize) {
    WorldSampler::new(inst).sample(rng)
}

/// The signals in `φ(x, y)` with a sampler over them.
type Cell = (Vec<usize>, ExactSampler);

/// Alice's side: draws `z_k` with probability `α_k [σ_k(i) = j] / P(y_j | x_i)`.
#[derive(Debug, Clone)]
pub struct Encoder {
    /// `[i][j]`: the signals in `φ(x_i, y_j)` and a sampler over them.
    cells: Vec<Vec<Option<Cell>>>,
}

impl Encoder {
    pub fn new(s: &Scheme) -> Self {
        let cells = (0..s.n())
            .map(|i| {
                (0..s.m())
                    .map(|j| {
                        let phi = s.support_signals(i, j);
                        if phi.is_empty() {
                            return None;
                        }
                        let weights: Vec<Rational> = phi.iter().map(|&k| s.weights()[k].clone()).collect();
                        Some((phi, ExactSampler::new(&weights)))
                    })
                    .collect()
            })
            .collect();
        Encoder { cells }
    }

    pub fn encode(&self, i: usize, j: usize, rng: &mut RandomSource) -> Option<usize> {
        let (phi, sampler) = self.cells.get(i)?.get(j)?.as_ref()?;
        Some(phi[sampler.sample(rng)])
    }
}

pub fn encode(s: &Scheme, i: usize, j: usize, rng: &mut RandomSource) -> Result<usize> {
    if i >= s.n() || j >= s.m() {
        return Err(Error::DimensionMismatch(format!("({i}, {j}) is outside the {}×{} scheme", s.n(), s.m())));
    }
    Encoder::new(s).encode(i, j, rng).ok_or_else(|| Error::OffSupportPair {
        x: s.x_labels()[i].clone(),
        y: s.y_labels()[j].clone(),
    })
}

/// Bob's side: the unique state consistent with `(y_j, z_k)`.
pub fn decode(s: &Scheme, j: usize, k: usize) -> Result<usize> {
    if j >= s.m() || k >= s.p() {
        return Err(Error::DimensionMismatch(format!("({j}, {k}) is outside the scheme's observations")));
    }
    let i = s.preimage(j, k);
    if i < s.n() && s.px()[i].is_positive() {
        Ok(i)
    } else {
        Err(Error::OffSupport { y: s.y_labels()[j].clone(), z: s.z_labels()[k].clone() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    /// Signals observed fewer times than this are left out of `max_tv`.
    pub min_count: u64,
    /// Threads to spread chunks over. The report does not depend on it.
    pub workers: usize,
    /// Run even when the scheme fails verification (for debugging).
    pub allow_unverified: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig { min_count: DEFAULT_MIN_COUNT, workers: 1, allow_unverified: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub samples: u64,
    pub seed: u64,
    pub decode_successes: u64,
    /// `decode_successes / samples`, and 1.0 when there are no samples.
    pub decode_success: f64,
    pub z_labels: Vec<String>,
    pub signal_counts: Vec<u64>,
    pub empirical_qz: Vec<f64>,
    /// Total variation between the empirical law of X given `z` and `P_X`;
    /// `None` for signals seen fewer than `min_count` times.
    pub tv_secrecy: Vec<Option<f64>>,
    /// Largest reported `tv_secrecy`, or 0.0 when none is reported.
    pub max_tv: f64,
    pub min_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Tally {
    successes: u64,
    /// `[k][i]`.
    joint: Vec<Vec<u64>>,
}

impl Tally {
    fn new(n: usize, p: usize) -> Self {
        Tally { successes: 0, joint: vec![vec![0; n]; p] }
    }

    fn merge(&mut self, other: &Tally) {
        self.successes += other.successes;
        for (a, b) in self.joint.iter_mut().zip(&other.joint) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
    }
}

struct Runner<'a> {
    scheme: &'a Scheme,
    world: WorldSampler,
    encoder: Encoder,
    /// Instance row → scheme row.
    rows: Vec<Option<usize>>,
    /// Instance column → scheme column.
    cols: Vec<usize>,
}

impl Runner<'_> {
    fn chunk(&self, seed: u64, chunk: u64, samples: u64) -> Tally {
        let mut rng = RandomSource::substream(seed, chunk);
        let mut tally = Tally::new(self.scheme.n(), self.scheme.p());
        for _ in 0..samples {
            let (xi, yj) = self.world.sample(&mut rng);
            let (Some(i), j) = (self.rows[xi], self.cols[yj]) else {
                continue;
            };
            let Some(k) = self.encoder.encode(i, j, &mut rng) else {
                continue;
            };
            tally.joint[k][i] += 1;
            if decode(self.scheme, j, k) == Ok(i) {
                tally.successes += 1;
            }
        }
        tally
    }
}

/// Monte Carlo run of `samples` draws of `(x, y) ~ P_XY`, `z ~` encoder,
/// and Bob's decode.
///
/// Refuses schemes that do not verify against `inst` unless
/// `config.allow_unverified` is set.
pub fn simulate(s: &Scheme, inst: &Instance, samples: u64, seed: u64, config: &SimConfig) -> Result<SimReport> {
    let report = verify(s, inst)?;
    if !report.passed() && !config.allow_unverified {
        return Err(Error::Unverified(
            "run verification for details, or allow unverified simulation explicitly".into(),
        ));
    }
    let rows: Vec<Option<usize>> = inst.x_labels().iter().map(|l| s.x_index(l)).collect();
    let cols: Vec<usize> = inst.y_labels().iter().map(|l| s.y_index(l).expect("checked by verify")).collect();
    let runner = Runner { scheme: s, world: WorldSampler::new(inst), encoder: Encoder::new(s), rows, cols };

    let chunks = samples.div_ceil(CHUNK_SIZE);
    let chunk_len = |c: u64| CHUNK_SIZE.min(samples - c * CHUNK_SIZE);
    let workers = config.workers.max(1) as u64;
    let mut total = Tally::new(s.n(), s.p());
    if workers == 1 || chunks <= 1 {
        for c in 0..chunks {
            total.merge(&runner.chunk(seed, c, chunk_len(c)));
        }
    } else {
        let partials: Vec<Tally> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let runner = &runner;
                    scope.spawn(move || {
                        let mut t = Tally::new(runner.scheme.n(), runner.scheme.p());
                        for c in (w..chunks).step_by(workers as usize) {
                            t.merge(&runner.chunk(seed, c, chunk_len(c)));
                        }
                        t
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        for t in &partials {
            total.merge(t);
        }
    }
    Ok(summarize(s, samples, seed, config.min_count, &total))
}

fn summarize(s: &Scheme, samples: u64, seed: u64, min_count: u64, tally: &Tally) -> SimReport {
    let signal_counts: Vec<u64> = tally.joint.iter().map(|row| row.iter().sum()).collect();
    let px: Vec<f64> = s.px().iter().map(Rational::to_f64).collect();
    let tv_secrecy: Vec<Option<f64>> = tally
        .joint
        .iter()
        .zip(&signal_counts)
        .map(|(row, &count)| {
            (count >= min_count && count > 0).then(|| {
                0.5 * row.iter().zip(&px).map(|(&c, p)| (c as f64 / count as f64 - p).abs()).sum::<f64>()
            })
        })
        .collect();
    let max_tv = tv_secrecy.iter().flatten().fold(0.0f64, |a, &b| a.max(b));
    let empirical_qz = signal_counts
        .iter()
        .map(|&c| if samples == 0 { 0.0 } else { c as f64 / samples as f64 })
        .collect();
    SimReport {
        samples,
        seed,
        decode_successes: tally.successes,
        decode_success: if samples == 0 { 1.0 } else { tally.successes as f64 / samples as f64 },
        z_labels: s.z_labels().to_vec(),
        signal_counts,
        empirical_qz,
        tv_secrecy,
        max_tv,
        min_count,
    }
}
