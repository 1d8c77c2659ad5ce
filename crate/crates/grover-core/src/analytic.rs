//! Closed-form predictions for the search: single-iteration amplitudes and
//! probabilities, the two-amplitude recurrence and its closed form, the
//! optimal iteration count, and the exact-rational averaging identities.
//!
//! Everything here is a pure function of `(M, N)` or `(q, M, N)`; nothing
//! simulates. The state-vector module provides the independent ground truth
//! these formulas are verified against.

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};

/// Cap for the exact binomial sums; beyond this the big-integer terms get
/// impractically wide.
pub const MAX_EXACT_QUBITS: u32 = 20;

/// Values of `pi/(4 theta)` within this distance of an integer are snapped
/// to it before flooring, so boundary ratios like M/N = 1/2 (where the
/// value is exactly 1) cannot lose an iteration to representation error.
const FLOOR_GUARD: f64 = 1e-9;

fn check_domain(matches: u64, size: u64) -> Result<()> {
    if size == 0 || !size.is_power_of_two() {
        return Err(Error::TooManyMatches { matches, size });
    }
    if matches == 0 {
        return Err(Error::NoMatches);
    }
    if matches > size {
        return Err(Error::TooManyMatches { matches, size });
    }
    Ok(())
}

/// The rotation angle: `sin^2(theta) = M/N`, `0 < theta <= pi/2`.
pub fn theta(matches: u64, size: u64) -> Result<f64> {
    check_domain(matches, size)?;
    Ok(theta_for_ratio(matches as f64 / size as f64))
}

/// Ratio-parameterised [`theta`] for continuous sweeps; `ratio` must lie in
/// `(0, 1]`.
pub fn theta_for_ratio(ratio: f64) -> f64 {
    debug_assert!(ratio > 0.0 && ratio <= 1.0);
    ratio.sqrt().asin()
}

/// Mean amplitude right after the oracle: `(1/sqrt(N)) (1 - 2M/N)`.
pub fn mean_amplitude(matches: u64, size: u64) -> Result<f64> {
    check_domain(matches, size)?;
    let ratio = matches as f64 / size as f64;
    Ok((1.0 - 2.0 * ratio) / (size as f64).sqrt())
}

/// Amplitudes after one full iteration:
/// `a1 = (1/sqrt(N)) (3 - 4M/N)` for the marked class,
/// `b1 = (1/sqrt(N)) (1 - 4M/N)` for the rest.
pub fn first_iteration_amplitudes(matches: u64, size: u64) -> Result<(f64, f64)> {
    check_domain(matches, size)?;
    let ratio = matches as f64 / size as f64;
    let scale = 1.0 / (size as f64).sqrt();
    Ok(((3.0 - 4.0 * ratio) * scale, (1.0 - 4.0 * ratio) * scale))
}

/// Success probability of a single iteration, the cubic
/// `9(M/N) - 24(M/N)^2 + 16(M/N)^3` (equivalently `M a1^2`).
pub fn success_prob_one(matches: u64, size: u64) -> Result<f64> {
    check_domain(matches, size)?;
    Ok(success_prob_one_ratio(matches as f64 / size as f64))
}

/// Ratio-parameterised [`success_prob_one`].
pub fn success_prob_one_ratio(ratio: f64) -> f64 {
    let p = ratio * (9.0 + ratio * (-24.0 + ratio * 16.0));
    p.clamp(0.0, 1.0)
}

/// Probability that one classical random guess hits a match: `M/N`.
pub fn classical_guess_prob(matches: u64, size: u64) -> Result<f64> {
    if matches > size {
        return Err(Error::TooManyMatches { matches, size });
    }
    Ok(matches as f64 / size as f64)
}

/// The `(a_q, b_q)` pair: the amplitude shared by all marked states and the
/// amplitude shared by all unmarked states after `q` iterations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoAmpState {
    a: f64,
    b: f64,
    matches: u64,
    size: u64,
    q: u64,
}

impl TwoAmpState {
    /// The uniform start: `a0 = b0 = 1/sqrt(N)`. With every item marked the
    /// unmarked class is empty and `b` is pinned to 0 (zero weight).
    pub fn initial(matches: u64, size: u64) -> Result<Self> {
        check_domain(matches, size)?;
        let amp = 1.0 / (size as f64).sqrt();
        let b = if matches == size { 0.0 } else { amp };
        Ok(Self { a: amp, b, matches, size, q: 0 })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn matches(&self) -> u64 {
        self.matches
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// One iteration of the amplitude recurrence:
    /// `a' = ((N-2M)/N) a + (2(N-M)/N) b`,
    /// `b' = ((N-2M)/N) b - (2M/N) a` (vacuous, held at 0, when `M = N`).
    pub fn recurrence_step(&self) -> Self {
        let n = self.size as f64;
        let m = self.matches as f64;
        let diag = (n - 2.0 * m) / n;
        let a = diag * self.a + 2.0 * (n - m) / n * self.b;
        let b = if self.matches == self.size {
            0.0
        } else {
            diag * self.b - 2.0 * m / n * self.a
        };
        Self { a, b, matches: self.matches, size: self.size, q: self.q + 1 }
    }

    /// Success probability `M a_q^2` of measuring any marked state.
    pub fn success_probability(&self) -> f64 {
        (self.matches as f64 * self.a * self.a).clamp(0.0, 1.0)
    }

    /// `|M a^2 + (N-M) b^2 - 1|`; zero in exact arithmetic.
    pub fn normalization_residual(&self) -> f64 {
        let m = self.matches as f64;
        let n = self.size as f64;
        (m * self.a * self.a + (n - m) * self.b * self.b - 1.0).abs()
    }
}

/// Closed form of the recurrence: `a_q = sin((2q+1)theta)/sqrt(M)`,
/// `b_q = cos((2q+1)theta)/sqrt(N-M)`. At `M = N` the unmarked class is
/// empty and `b` is defined as 0 with zero weight.
pub fn closed_form(q: u64, matches: u64, size: u64) -> Result<TwoAmpState> {
    let angle = theta(matches, size)?;
    let phase = (2 * q + 1) as f64 * angle;
    let a = phase.sin() / (matches as f64).sqrt();
    let b = if matches == size {
        0.0
    } else {
        phase.cos() / ((size - matches) as f64).sqrt()
    };
    Ok(TwoAmpState { a, b, matches, size, q })
}

/// Success probability after `q` iterations: `sin^2((2q+1)theta)`.
pub fn success_prob(q: u64, matches: u64, size: u64) -> Result<f64> {
    let angle = theta(matches, size)?;
    Ok(success_prob_for_angle(q, angle))
}

/// Ratio-parameterised [`success_prob`].
pub fn success_prob_ratio(q: u64, ratio: f64) -> f64 {
    success_prob_for_angle(q, theta_for_ratio(ratio))
}

fn success_prob_for_angle(q: u64, angle: f64) -> f64 {
    let s = ((2 * q + 1) as f64 * angle).sin();
    (s * s).clamp(0.0, 1.0)
}

/// Failure probability after `q` iterations: `cos^2((2q+1)theta)`.
pub fn failure_prob(q: u64, matches: u64, size: u64) -> Result<f64> {
    let angle = theta(matches, size)?;
    let c = ((2 * q + 1) as f64 * angle).cos();
    Ok((c * c).clamp(0.0, 1.0))
}

/// The optimal iteration count `floor(pi / (4 theta))`, with the rounding
/// guard described on [`FLOOR_GUARD`]. Zero for `M/N > 1/2`.
pub fn optimal_iterations(matches: u64, size: u64) -> Result<u64> {
    Ok(guarded_floor(std::f64::consts::PI / (4.0 * theta(matches, size)?)))
}

/// Ratio-parameterised [`optimal_iterations`].
pub fn optimal_iterations_ratio(ratio: f64) -> u64 {
    guarded_floor(std::f64::consts::PI / (4.0 * theta_for_ratio(ratio)))
}

fn guarded_floor(x: f64) -> u64 {
    let nearest = x.round();
    if (x - nearest).abs() < FLOOR_GUARD {
        nearest as u64
    } else {
        x.floor() as u64
    }
}

/// The ratio `sin^2(pi/8)` where the optimal count steps between 2 and 1;
/// quoted as 0.145 in prose, exactly `(2 - sqrt(2))/4`.
pub fn q_one_threshold() -> f64 {
    (2.0 - std::f64::consts::SQRT_2) / 4.0
}

/// A known-M execution plan: angle, optimal iteration count, and the
/// success probability the closed form predicts for it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationPlan {
    pub theta: f64,
    pub q_opt: u64,
    pub predicted_success: f64,
}

pub fn plan(matches: u64, size: u64) -> Result<IterationPlan> {
    let angle = theta(matches, size)?;
    let q_opt = guarded_floor(std::f64::consts::PI / (4.0 * angle));
    Ok(IterationPlan {
        theta: angle,
        q_opt,
        predicted_success: success_prob_for_angle(q_opt, angle),
    })
}

/// Plan over the doubled search space (`N` padding non-matches appended),
/// which keeps the match fraction at or below one half. Success is at least
/// one half for every `M`, with equality at `M = N`.
pub fn padded_plan(matches: u64, size: u64) -> Result<IterationPlan> {
    check_domain(matches, size)?;
    plan(matches, 2 * size)
}

/// Exact average of the single-iteration success probability over all
/// `2^N` oracles, weighted by the number of oracles with each match count:
/// `(1/2^N) sum_{M=1..N} C(N,M) P1(M,N)`. Equals exactly 1/2.
pub fn average_success_one(n: u32) -> Result<BigRational> {
    let size = exact_size(n)?;
    let nb = BigInt::from(size);
    let n2 = &nb * &nb;
    let mut binom = BigInt::one();
    let mut acc = BigInt::zero();
    for m in 1..=size {
        binom = binom * BigInt::from(size - m + 1) / BigInt::from(m);
        let mb = BigInt::from(m);
        let weight = BigInt::from(9u32) * &mb * &n2 - BigInt::from(24u32) * &mb * &mb * &nb
            + BigInt::from(16u32) * &mb * &mb * &mb;
        acc += &binom * weight;
    }
    let den = &n2 * &nb * (BigInt::one() << size as usize);
    Ok(BigRational::new(acc, den))
}

/// Exact average of the classical single-guess probability `M/N` over all
/// oracles: `(1/2^N) sum_{M=1..N} C(N,M) M/N`. Equals exactly 1/2.
pub fn average_classical_one(n: u32) -> Result<BigRational> {
    let size = exact_size(n)?;
    let mut binom = BigInt::one();
    let mut acc = BigInt::zero();
    for m in 1..=size {
        binom = binom * BigInt::from(size - m + 1) / BigInt::from(m);
        acc += &binom * BigInt::from(m);
    }
    let den = BigInt::from(size) * (BigInt::one() << size as usize);
    Ok(BigRational::new(acc, den))
}

fn exact_size(n: u32) -> Result<u64> {
    if n == 0 || n > MAX_EXACT_QUBITS {
        return Err(Error::QubitCount { n, max: MAX_EXACT_QUBITS });
    }
    Ok(1 << n)
}

/// One row of the single-iteration performance table: extrema of `P1` over
/// the attainable integer match counts, plus the exact average.
#[derive(Debug, Clone)]
pub struct Table1Row {
    pub n: u32,
    pub max_prob: f64,
    pub max_at: u64,
    pub min_prob: f64,
    pub min_at: u64,
    pub avg_prob: BigRational,
}

pub fn table1_row(n: u32) -> Result<Table1Row> {
    if n < 2 {
        return Err(Error::QubitCount { n, max: MAX_EXACT_QUBITS });
    }
    let size = exact_size(n)?;
    let mut max_prob = f64::NEG_INFINITY;
    let mut min_prob = f64::INFINITY;
    let mut max_at = 0;
    let mut min_at = 0;
    for m in 1..=size {
        let p = success_prob_one(m, size)?;
        if p > max_prob {
            max_prob = p;
            max_at = m;
        }
        if p < min_prob {
            min_prob = p;
            min_at = m;
        }
    }
    Ok(Table1Row {
        n,
        max_prob,
        max_at,
        min_prob,
        min_at,
        avg_prob: average_success_one(n)?,
    })
}

/// Renders a rational like `1/2` (or `3` when integral).
pub fn rational_string(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Converts an exact rational to the nearest double.
pub fn rational_to_f64(value: &BigRational) -> f64 {
    use num::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}
