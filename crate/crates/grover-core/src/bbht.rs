//! The randomized search loop for an unknown match count, after Boyer,
//! Brassard, Hoyer and Tapp: grow a cap `m` geometrically, run a uniformly
//! random number of iterations below the cap, and verify the measured index
//! classically. Valid for `1 <= M <= 3N/4`; beyond that the cost model
//! breaks down and plain classical sampling wins.
//!
//! Each round restarts from the uniform superposition, so the exact
//! two-class reduction applies: a measurement lands in the marked class
//! with probability `sin^2((2j+1)theta)` and is uniform within its class.
//! The default backend samples that distribution directly, which makes
//! large-n ensembles cheap; a full state-vector backend is kept for
//! cross-validation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analytic;
use crate::error::{Error, Result};
use crate::problem::SearchProblem;
use crate::statevector;

/// `1/sin(2 theta)` values above this are reported as divergent.
const DIVERGENCE_LIMIT: f64 = 1e9;

/// How a round's measurement outcome is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Backend {
    /// Sample the exact two-class distribution. Lossless and O(1) per round.
    #[default]
    TwoAmplitude,
    /// Simulate the full state vector and sample it. For cross-validation.
    StateVector,
}

#[derive(Debug, Clone)]
pub struct BbhtConfig {
    lambda: f64,
    max_oracle_calls: u64,
    seed: u64,
    backend: Backend,
}

impl BbhtConfig {
    pub const DEFAULT_LAMBDA: f64 = 8.0 / 7.0;
    pub const DEFAULT_MAX_CALLS: u64 = 1_000_000;

    pub fn new(seed: u64) -> Self {
        Self {
            lambda: Self::DEFAULT_LAMBDA,
            max_oracle_calls: Self::DEFAULT_MAX_CALLS,
            seed,
            backend: Backend::default(),
        }
    }

    /// Growth factor; any value in `(1, 4/3]`.
    pub fn with_lambda(mut self, lambda: f64) -> Result<Self> {
        if !(lambda > 1.0 && lambda <= 4.0 / 3.0) {
            return Err(Error::InvalidGrowthFactor { lambda });
        }
        self.lambda = lambda;
        Ok(self)
    }

    pub fn with_max_calls(mut self, max_oracle_calls: u64) -> Self {
        self.max_oracle_calls = max_oracle_calls.max(1);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_backend(mut self, backend: Backend) -> Self {
        self.backend = backend;
        self
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn max_oracle_calls(&self) -> u64 {
        self.max_oracle_calls
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }
}

/// Outcome of one search run. Every iteration counts as one oracle call and
/// each round's classical verification counts as one more, so
/// `oracle_calls = grover_iterations + rounds` on success.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BbhtOutcome {
    pub found_index: Option<u64>,
    pub oracle_calls: u64,
    pub grover_iterations: u64,
    pub rounds: u64,
}

/// Runs the unknown-M loop: `m = 1`; repeat { draw `j` uniform below
/// `ceil(m)`, run `j` iterations from the uniform state, measure, verify;
/// `m = min(lambda m, sqrt(N))` }. Stops at the call budget, which is how
/// the `M = 0` case (and the `M > 3N/4` stall) terminates.
pub fn bbht_search(problem: &SearchProblem, config: &BbhtConfig) -> BbhtOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let sqrt_n = (problem.size() as f64).sqrt();
    let mut m = 1.0_f64;
    let mut oracle_calls = 0u64;
    let mut grover_iterations = 0u64;
    let mut rounds = 0u64;

    loop {
        let limit = m.ceil() as u64;
        let j = rng.random_range(0..limit);
        let budget = config.max_oracle_calls - oracle_calls;
        if j + 1 > budget {
            // Not enough budget for the iterations plus the verification:
            // spend what remains and report exhaustion.
            grover_iterations += budget.min(j);
            return BbhtOutcome {
                found_index: None,
                oracle_calls: config.max_oracle_calls,
                grover_iterations,
                rounds,
            };
        }
        grover_iterations += j;
        oracle_calls += j;
        rounds += 1;

        let index = measure_after(problem, j, &mut rng, config.backend);
        oracle_calls += 1;
        if problem.is_match(index) {
            return BbhtOutcome {
                found_index: Some(index),
                oracle_calls,
                grover_iterations,
                rounds,
            };
        }
        m = (m * config.lambda).min(sqrt_n);
    }
}

fn measure_after<R: Rng>(problem: &SearchProblem, j: u64, rng: &mut R, backend: Backend) -> u64 {
    match backend {
        Backend::TwoAmplitude => measure_two_class(problem, j, rng),
        Backend::StateVector => {
            let state = statevector::grover_run(problem, j).expect("problem within simulator cap");
            state.sample_with_rng(rng)
        }
    }
}

fn measure_two_class<R: Rng>(problem: &SearchProblem, j: u64, rng: &mut R) -> u64 {
    let matches = problem.match_count();
    let size = problem.size();
    if matches == 0 {
        return rng.random_range(0..size);
    }
    if matches == size {
        return sample_marked(problem, rng);
    }
    let p = analytic::success_prob_ratio(j, problem.ratio());
    if rng.random::<f64>() < p {
        sample_marked(problem, rng)
    } else {
        sample_unmarked(problem, rng)
    }
}

/// One seeded measurement after `iterations` rounds from the uniform start,
/// drawn from the exact two-class distribution without materialising the
/// state vector.
pub fn sample_after_iterations(problem: &SearchProblem, iterations: u64, seed: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    measure_two_class(problem, iterations, &mut rng)
}

fn sample_marked<R: Rng>(problem: &SearchProblem, rng: &mut R) -> u64 {
    let matches = problem.match_count();
    if 4 * matches >= problem.size() {
        loop {
            let i = rng.random_range(0..problem.size());
            if problem.is_match(i) {
                return i;
            }
        }
    }
    problem.marked_at_rank(rng.random_range(0..matches))
}

fn sample_unmarked<R: Rng>(problem: &SearchProblem, rng: &mut R) -> u64 {
    let unmarked = problem.size() - problem.match_count();
    if 4 * unmarked >= problem.size() {
        loop {
            let i = rng.random_range(0..problem.size());
            if !problem.is_match(i) {
                return i;
            }
        }
    }
    problem.unmarked_at_rank(rng.random_range(0..unmarked))
}

/// Runs `trials` independent searches concurrently, each with a seed
/// derived from `(config.seed, trial)`. The returned vector is in trial
/// order regardless of scheduling.
pub fn run_trials(problem: &SearchProblem, config: &BbhtConfig, trials: u64) -> Vec<BbhtOutcome> {
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let cfg = config.clone().with_seed(derive_trial_seed(config.seed, trial));
            bbht_search(problem, &cfg)
        })
        .collect()
}

/// splitmix64 over `(base, trial)`, giving each trial an independent
/// stream while staying reproducible.
pub fn derive_trial_seed(base: u64, trial: u64) -> u64 {
    let mut z = base ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0x243F_6A88_85A3_08D3);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The per-stage lower bound `m_G = 1/sin(2 theta)`, which the loop's cap
/// must reach before success probability per round levels off. Diverges at
/// `M = N`.
pub fn m_lower_bound(matches: u64, size: u64) -> Result<f64> {
    if matches == size {
        return Err(Error::Divergence);
    }
    let angle = analytic::theta(matches, size)?;
    Ok(1.0 / (2.0 * angle).sin())
}

/// Ratio-parameterised [`m_lower_bound`]; `None` where the value diverges.
pub fn m_lower_bound_ratio(ratio: f64) -> Option<f64> {
    let s = (2.0 * analytic::theta_for_ratio(ratio)).sin();
    let value = 1.0 / s;
    (value.is_finite() && value <= DIVERGENCE_LIMIT).then_some(value)
}

/// The cost model `8 m_G`, approximately `4 sqrt(N/M)` for small `M/N`.
/// Only valid for `M <= 3N/4`; past that, classical sampling applies.
pub fn expected_calls_estimate(matches: u64, size: u64) -> Result<f64> {
    if 4 * matches > 3 * size {
        return Err(Error::OutOfValidity { matches, size });
    }
    Ok(8.0 * m_lower_bound(matches, size)?)
}

/// Plain classical sampling: i.i.d. uniform draws, each verified against
/// the oracle. Expected `N/M` calls.
pub fn classical_sampling_search(
    problem: &SearchProblem,
    seed: u64,
    max_calls: u64,
) -> BbhtOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_calls = max_calls.max(1);
    for call in 1..=max_calls {
        let index = rng.random_range(0..problem.size());
        if problem.is_match(index) {
            return BbhtOutcome {
                found_index: Some(index),
                oracle_calls: call,
                grover_iterations: 0,
                rounds: call,
            };
        }
    }
    BbhtOutcome {
        found_index: None,
        oracle_calls: max_calls,
        grover_iterations: 0,
        rounds: max_calls,
    }
}

/// One point of the known-versus-unknown iteration-count curves:
/// `q_real = pi/(4 theta)` and `m_real = 1/sin(2 theta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub ratio: f64,
    pub q_real: f64,
    pub m_real: Option<f64>,
}

pub fn curve_point(ratio: f64) -> CurvePoint {
    CurvePoint {
        ratio,
        q_real: std::f64::consts::PI / (4.0 * analytic::theta_for_ratio(ratio)),
        m_real: m_lower_bound_ratio(ratio),
    }
}

/// Both curves on the uniform ratio grid `k/grid`, `k = 1..=grid`. The
/// caller floors the values for the step-function view.
pub fn figure5_curves(grid: u32) -> Vec<CurvePoint> {
    (1..=grid)
        .map(|k| curve_point(k as f64 / grid as f64))
        .collect()
}
