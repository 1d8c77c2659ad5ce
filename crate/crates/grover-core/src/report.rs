//! Deterministic CSV emitters for the performance tables and sweep figures,
//! plus the end-to-end run report.
//!
//! CSV dialect: comma separator, one header row, `.` decimal point, floats
//! at 17 significant digits, LF line endings. Reruns with the same
//! parameters and seed are byte-identical.

use std::fmt::Write as _;

use crate::analytic;
use crate::bbht::{self, BbhtConfig, BbhtOutcome};
use crate::error::{Error, Result};
use crate::problem::SearchProblem;
use crate::statevector;

/// Sentinel written where `1/sin(2 theta)` diverges, with the flag column
/// set on the same row.
pub const M_REAL_SENTINEL: f64 = 1e12;

/// 17 significant digits; round-trips any f64 exactly.
pub fn fmt_float(value: f64) -> String {
    format!("{value:.16e}")
}

/// Everything the sweep figures plot, at one match ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub ratio: f64,
    pub p_one: f64,
    pub p_classical: f64,
    pub q_opt: u64,
    pub p_at_q_opt: f64,
    pub q_real: f64,
    pub m_real: Option<f64>,
}

pub fn sweep_record(ratio: f64) -> SweepRecord {
    let q_opt = analytic::optimal_iterations_ratio(ratio);
    let point = bbht::curve_point(ratio);
    SweepRecord {
        ratio,
        p_one: analytic::success_prob_one_ratio(ratio),
        p_classical: ratio,
        q_opt,
        p_at_q_opt: analytic::success_prob_ratio(q_opt, ratio),
        q_real: point.q_real,
        m_real: point.m_real,
    }
}

fn check_grid(grid: u32) -> Result<()> {
    if grid < 2 {
        return Err(Error::GridTooSmall { grid });
    }
    Ok(())
}

fn ratio_grid(grid: u32) -> impl Iterator<Item = f64> {
    (1..=grid).map(move |k| k as f64 / grid as f64)
}

/// Single-iteration performance rows `n,max_prob,min_prob,avg_prob,avg_prob_exact`
/// for `n_min..=n_max`; the average is carried both as a decimal and as the
/// exact reduced fraction.
pub fn table1_csv(n_min: u32, n_max: u32) -> Result<String> {
    if n_min < 2 || n_min > n_max || n_max > analytic::MAX_EXACT_QUBITS {
        return Err(Error::TableRange { n_min, n_max });
    }
    let mut out = String::from("n,max_prob,min_prob,avg_prob,avg_prob_exact\n");
    for n in n_min..=n_max {
        let row = analytic::table1_row(n)?;
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            n,
            fmt_float(row.max_prob),
            fmt_float(row.min_prob),
            fmt_float(analytic::rational_to_f64(&row.avg_prob)),
            analytic::rational_string(&row.avg_prob),
        );
    }
    Ok(out)
}

/// Single-iteration success versus one classical guess over the ratio grid
/// `k/grid`, `k = 1..=grid`: columns `ratio,p_one,p_classical`.
pub fn fig3_csv(grid: u32) -> Result<String> {
    check_grid(grid)?;
    let mut out = String::from("ratio,p_one,p_classical\n");
    for ratio in ratio_grid(grid) {
        let rec = sweep_record(ratio);
        let _ = writeln!(
            out,
            "{},{},{}",
            fmt_float(rec.ratio),
            fmt_float(rec.p_one),
            fmt_float(rec.p_classical),
        );
    }
    Ok(out)
}

/// Success at the optimal iteration count over the ratio grid: columns
/// `ratio,q_opt,p_at_q_opt`.
pub fn fig4_csv(grid: u32) -> Result<String> {
    check_grid(grid)?;
    let mut out = String::from("ratio,q_opt,p_at_q_opt\n");
    for ratio in ratio_grid(grid) {
        let rec = sweep_record(ratio);
        let _ = writeln!(
            out,
            "{},{},{}",
            fmt_float(rec.ratio),
            rec.q_opt,
            fmt_float(rec.p_at_q_opt),
        );
    }
    Ok(out)
}

/// The known-M and unknown-M iteration-count curves over the ratio grid:
/// columns `ratio,q_real,m_real,q_floor,m_floor,m_capped`. Divergent
/// `m_real` is written as [`M_REAL_SENTINEL`] with the flag set.
pub fn fig5_csv(grid: u32) -> Result<String> {
    check_grid(grid)?;
    let mut out = String::from("ratio,q_real,m_real,q_floor,m_floor,m_capped\n");
    for ratio in ratio_grid(grid) {
        push_fig5_row(&mut out, ratio);
    }
    Ok(out)
}

/// Same columns as [`fig5_csv`], but on the attainable ratios `M/N` for
/// integer `M = 1..=N`.
pub fn fig5_attainable_csv(n: u32) -> Result<String> {
    crate::problem::check_qubits(n)?;
    let size = 1u64 << n;
    let mut out = String::from("ratio,q_real,m_real,q_floor,m_floor,m_capped\n");
    for m in 1..=size {
        push_fig5_row(&mut out, m as f64 / size as f64);
    }
    Ok(out)
}

fn push_fig5_row(out: &mut String, ratio: f64) {
    let rec = sweep_record(ratio);
    let (m_real, capped) = match rec.m_real {
        Some(value) => (value, 0),
        None => (M_REAL_SENTINEL, 1),
    };
    let _ = writeln!(
        out,
        "{},{},{},{},{},{}",
        fmt_float(rec.ratio),
        fmt_float(rec.q_real),
        fmt_float(m_real),
        rec.q_opt,
        m_real.floor() as u64,
        capped,
    );
}

/// Aggregate view of a batch of unknown-M runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BbhtSummary {
    pub trials: u64,
    pub successes: u64,
    pub mean_calls: f64,
    pub stddev_calls: f64,
    /// `8 m_G`, absent outside the model's validity range.
    pub model_calls: Option<f64>,
}

pub fn summarize_trials(problem: &SearchProblem, outcomes: &[BbhtOutcome]) -> BbhtSummary {
    let model_calls = bbht::expected_calls_estimate(problem.match_count(), problem.size()).ok();
    if outcomes.is_empty() {
        return BbhtSummary {
            trials: 0,
            successes: 0,
            mean_calls: 0.0,
            stddev_calls: 0.0,
            model_calls,
        };
    }
    let trials = outcomes.len() as u64;
    let successes = outcomes.iter().filter(|o| o.found_index.is_some()).count() as u64;
    let mean_calls = outcomes.iter().map(|o| o.oracle_calls as f64).sum::<f64>() / trials as f64;
    let variance = outcomes
        .iter()
        .map(|o| {
            let d = o.oracle_calls as f64 - mean_calls;
            d * d
        })
        .sum::<f64>()
        / (trials.max(2) - 1) as f64;
    BbhtSummary {
        trials,
        successes,
        mean_calls,
        stddev_calls: variance.sqrt(),
        model_calls,
    }
}

/// Per-trial rows `trial,found_index,oracle_calls,rounds` followed by one
/// `summary` row carrying the mean, standard deviation and the `8 m_G`
/// model value in the trailing columns.
pub fn bbht_csv(
    problem: &SearchProblem,
    config: &BbhtConfig,
    trials: u64,
) -> (String, BbhtSummary) {
    let outcomes = bbht::run_trials(problem, config, trials);
    let summary = summarize_trials(problem, &outcomes);
    let mut out =
        String::from("trial,found_index,oracle_calls,rounds,mean_calls,stddev_calls,model_calls\n");
    for (trial, outcome) in outcomes.iter().enumerate() {
        let found = outcome
            .found_index
            .map(|i| i.to_string())
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},,,",
            trial, found, outcome.oracle_calls, outcome.rounds
        );
    }
    let model = summary.model_calls.map(fmt_float).unwrap_or_default();
    let _ = writeln!(
        out,
        "summary,,,,{},{},{}",
        fmt_float(summary.mean_calls),
        fmt_float(summary.stddev_calls),
        model,
    );
    (out, summary)
}

/// Which execution path the end-to-end run takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMode {
    /// Full state-vector simulation plus the analytic prediction.
    Simulate,
    /// Analytic prediction only; the sample comes from the exact two-class
    /// distribution.
    Analytic,
}

/// An end-to-end search run: the plan, the predicted and (optionally)
/// simulated success probabilities, and one sampled measurement.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub n: u32,
    pub size: u64,
    pub matches: u64,
    pub theta: f64,
    pub iterations: u64,
    pub iterations_overridden: bool,
    pub predicted_success: f64,
    pub simulated_success: Option<f64>,
    pub sampled_index: u64,
    pub sampled_is_match: bool,
}

pub fn run_report(
    problem: &SearchProblem,
    mode: RunMode,
    iterations: Option<u64>,
    seed: u64,
) -> Result<RunReport> {
    let matches = problem.match_count();
    let size = problem.size();
    let theta = analytic::theta(matches, size)?;
    let q = match iterations {
        Some(q) => q,
        None => analytic::optimal_iterations(matches, size)?,
    };
    let predicted_success = analytic::success_prob(q, matches, size)?;
    let (simulated_success, sampled_index) = match mode {
        RunMode::Simulate => {
            let state = statevector::grover_run(problem, q)?;
            (
                Some(state.success_probability(problem)?),
                state.sample_measurement(seed),
            )
        }
        RunMode::Analytic => (None, bbht::sample_after_iterations(problem, q, seed)),
    };
    Ok(RunReport {
        n: problem.n(),
        size,
        matches,
        theta,
        iterations: q,
        iterations_overridden: iterations.is_some(),
        predicted_success,
        simulated_success,
        sampled_index,
        sampled_is_match: problem.is_match(sampled_index),
    })
}

impl std::fmt::Display for RunReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "list size N:       {} ({} qubits)", self.size, self.n)?;
        writeln!(f, "match count M:     {}", self.matches)?;
        writeln!(f, "ratio M/N:         {}", self.matches as f64 / self.size as f64)?;
        writeln!(f, "theta:             {:.12}", self.theta)?;
        let origin = if self.iterations_overridden { "requested" } else { "optimal" };
        writeln!(f, "iterations q:      {} ({origin})", self.iterations)?;
        writeln!(f, "predicted success: {:.12}", self.predicted_success)?;
        if let Some(p) = self.simulated_success {
            writeln!(f, "simulated success: {p:.12}")?;
        }
        writeln!(
            f,
            "sampled index:     {} (f = {})",
            self.sampled_index,
            u8::from(self.sampled_is_match)
        )
    }
}
