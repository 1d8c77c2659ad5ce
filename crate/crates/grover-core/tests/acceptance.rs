//! Acceptance suite: one test per criterion. Each prints a `PASS` line with
//! the measured quantities (visible under `--nocapture`) after its
//! assertions hold, so the suite doubles as a checklist.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use grover_core::analytic::{self, TwoAmpState};
use grover_core::bbht::{self, BbhtConfig};
use grover_core::oracles::CnfFormula;
use grover_core::report;
use grover_core::statevector::{grover_run, grover_run_with_ancilla, QuantumState};
use grover_core::SearchProblem;

use num::BigRational;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn assert_budget(elapsed: Duration, budget: Duration, label: &str) {
    assert!(
        elapsed <= budget,
        "{label} took {elapsed:?}, over the {budget:?} budget"
    );
}

/// Match counts for one register width: everything when the space is small,
/// otherwise the landmark ratios plus an even and a random spread, at least
/// `per_n` distinct values.
fn sampled_match_counts(n: u32, per_n: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let size = 1u64 << n;
    if size <= per_n as u64 {
        return (1..=size).collect();
    }
    let mut counts = BTreeSet::new();
    for anchor in [1, 2, size / 4, size / 2, 3 * size / 4, size - 1, size] {
        counts.insert(anchor.clamp(1, size));
    }
    let step = (size / per_n as u64).max(1);
    let mut k = step;
    while counts.len() < per_n * 3 / 4 && k <= size {
        counts.insert(k);
        k += step;
    }
    while counts.len() < per_n {
        counts.insert(rng.random_range(1..=size));
    }
    counts.into_iter().collect()
}

fn random_problem(n: u32, matches: u64, rng: &mut ChaCha8Rng) -> SearchProblem {
    let size = 1usize << n;
    let marked: Vec<u64> = sample(rng, size, matches as usize)
        .into_iter()
        .map(|i| i as u64)
        .collect();
    SearchProblem::from_marked_indices(n, &marked).unwrap()
}

fn max_state_diff(a: &QuantumState, b: &QuantumState) -> f64 {
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[test]
fn criterion_1_table1_reproduction() {
    let start = Instant::now();
    let csv = report::table1_csv(2, 6).unwrap();
    let half = BigRational::new(1.into(), 2.into());
    for (i, line) in csv.lines().skip(1).enumerate() {
        let n = i as u32 + 2;
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields[0], n.to_string());
        assert!((fields[1].parse::<f64>().unwrap() - 1.0).abs() < 1e-12, "max at n={n}");
        assert!(fields[2].parse::<f64>().unwrap().abs() < 1e-12, "min at n={n}");
        assert!((fields[3].parse::<f64>().unwrap() - 0.5).abs() < 1e-12, "avg at n={n}");
        assert_eq!(fields[4], "1/2", "exact average at n={n}");
        assert_eq!(analytic::average_success_one(n).unwrap(), half);
    }
    assert_eq!(csv.lines().count(), 6);
    let elapsed = start.elapsed();
    assert_budget(elapsed, Duration::from_secs(1), "criterion 1");
    println!("ACCEPTANCE 1 PASS table1 n=2..6: max=1.0 min=0.0 avg=1/2 exact ({elapsed:?})");
}

#[test]
fn criterion_2_certainty_and_failure_endpoints() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC2);
    for n in 2..=12u32 {
        let size = 1u64 << n;
        for (matches, expected) in [(size / 4, 1.0), (3 * size / 4, 0.0)] {
            let analytic_p = analytic::success_prob_one(matches, size).unwrap();
            assert!(
                (analytic_p - expected).abs() < 1e-12,
                "analytic P1({matches},{size}) = {analytic_p}, want {expected}"
            );
            let problem = random_problem(n, matches, &mut rng);
            let simulated = grover_run(&problem, 1)
                .unwrap()
                .success_probability(&problem)
                .unwrap();
            assert!(
                (simulated - expected).abs() < 1e-12,
                "simulated P1({matches},{size}) = {simulated}, want {expected}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert_budget(elapsed, Duration::from_secs(10), "criterion 2");
    println!(
        "ACCEPTANCE 2 PASS certainty at M=N/4 and failure at M=3N/4, analytic and simulated, n=2..12 ({elapsed:?})"
    );
}

#[test]
fn criterion_3_halfway_minimum() {
    let start = Instant::now();
    // Exactly one half at M/N = 1/2.
    for n in [2u32, 6, 10, 14] {
        let size = 1u64 << n;
        let q = analytic::optimal_iterations(size / 2, size).unwrap();
        assert_eq!(q, 1);
        let p = analytic::success_prob(q, size / 2, size).unwrap();
        assert!((p - 0.5).abs() < 1e-12, "n={n}: {p}");
    }
    // Above one half: zero iterations and the classical value.
    let grid = 100u32;
    for k in 51..=grid {
        let ratio = k as f64 / grid as f64;
        let q = analytic::optimal_iterations_ratio(ratio);
        assert_eq!(q, 0, "ratio {ratio}");
        let p = analytic::success_prob_ratio(q, ratio);
        assert!((p - ratio).abs() < 1e-12, "ratio {ratio}: {p}");
    }
    let elapsed = start.elapsed();
    assert_budget(elapsed, Duration::from_secs(1), "criterion 3");
    println!(
        "ACCEPTANCE 3 PASS success at q_G is 0.5 at M/N=0.5; q_G=0 with P=M/N for all grid ratios above 0.5 ({elapsed:?})"
    );
}

#[test]
fn criterion_4_oracle_equivalence_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC4);
    let mut pairs = 0u64;
    let mut worst_prob_gap = 0.0f64;
    let mut worst_two_amp = 0.0f64;

    for n in 2..=12u32 {
        let size = 1u64 << n;
        for matches in sampled_match_counts(n, 64, &mut rng) {
            let problem = random_problem(n, matches, &mut rng);
            let mut state = QuantumState::uniform(n).unwrap();
            let mut two_amp = TwoAmpState::initial(matches, size).unwrap();
            for q in 0..=50u64 {
                let simulated = state.success_probability(&problem).unwrap();
                let predicted = analytic::success_prob(q, matches, size).unwrap();
                let gap = (simulated - predicted).abs();
                worst_prob_gap = worst_prob_gap.max(gap);
                assert!(gap < 1e-9, "n={n} M={matches} q={q}: |{simulated} - {predicted}|");

                let closed = analytic::closed_form(q, matches, size).unwrap();
                let da = (two_amp.a() - closed.a()).abs();
                let db = (two_amp.b() - closed.b()).abs();
                worst_two_amp = worst_two_amp.max(da.max(db));
                assert!(da < 1e-10 && db < 1e-10, "n={n} M={matches} q={q}");

                state.apply_oracle(&problem).unwrap();
                state.apply_diffusion_mean();
                two_amp = two_amp.recurrence_step();
            }
            pairs += 1;
        }
    }

    // Both diffusion routes, elementwise, on seeded random states.
    let mut worst_diffusion = 0.0f64;
    for n in 1..=12u32 {
        let size = 1usize << n;
        for _ in 0..8 {
            let mut amps: Vec<num_complex::Complex64> = (0..size)
                .map(|_| num_complex::Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
                .collect();
            let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            for a in &mut amps {
                *a /= norm;
            }
            let mut mean_path = QuantumState::from_amplitudes(n, amps.clone()).unwrap();
            let mut conj_path = QuantumState::from_amplitudes(n, amps).unwrap();
            mean_path.apply_diffusion_mean();
            conj_path.apply_diffusion_conjugated();
            let diff = max_state_diff(&mean_path, &conj_path);
            worst_diffusion = worst_diffusion.max(diff);
            assert!(diff < 1e-12, "n={n}: diffusion paths differ by {diff}");
        }
    }

    // The workspace-qubit model against the phase model, n <= 10.
    let mut worst_ancilla = 0.0f64;
    for n in 2..=10u32 {
        for matches in sampled_match_counts(n, 64, &mut rng) {
            let problem = random_problem(n, matches, &mut rng);
            let q_opt = analytic::optimal_iterations(matches, 1 << n).unwrap();
            for q in [0u64, 1, 2, q_opt.min(12)] {
                let direct = grover_run(&problem, q).unwrap();
                let reduced = grover_run_with_ancilla(&problem, q).unwrap();
                let diff = max_state_diff(&direct, &reduced);
                worst_ancilla = worst_ancilla.max(diff);
                assert!(diff < 1e-12, "n={n} M={matches} q={q}: ancilla gap {diff}");
            }
        }
    }

    let elapsed = start.elapsed();
    assert_budget(elapsed, Duration::from_secs(300), "criterion 4");
    println!(
        "ACCEPTANCE 4 PASS oracle equivalence over {pairs} (n,M) pairs, q=0..50: \
         |analytic-simulated| <= {worst_prob_gap:.2e}, closed-vs-recurrence <= {worst_two_amp:.2e}, \
         diffusion paths <= {worst_diffusion:.2e}, ancilla model <= {worst_ancilla:.2e} ({elapsed:?})"
    );
}

#[test]
fn criterion_5_iteration_bound_and_transition() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC5);
    for n in 1..=14u32 {
        let size = 1u64 << n;
        for matches in sampled_match_counts(n, 64, &mut rng) {
            let q = analytic::optimal_iterations(matches, size).unwrap();
            let bound = std::f64::consts::FRAC_PI_4 * (size as f64 / matches as f64).sqrt();
            assert!(
                q as f64 <= bound.ceil(),
                "q_G={q} exceeds bound {bound} at M={matches} N={size}"
            );
        }
    }

    // The 2 -> 1 step sits within one grid cell of sin^2(pi/8).
    let grid = 10_000u32;
    let mut transition = None;
    for k in 1..=grid {
        let ratio = k as f64 / grid as f64;
        if analytic::optimal_iterations_ratio(ratio) == 1 {
            transition = Some(ratio);
            break;
        }
    }
    let transition = transition.expect("q=1 band exists");
    let threshold = analytic::q_one_threshold();
    let cell = 1.0 / grid as f64;
    assert!(
        (transition - threshold).abs() <= cell,
        "transition at {transition}, expected near {threshold}"
    );
    let elapsed = start.elapsed();
    assert_budget(elapsed, Duration::from_secs(1), "criterion 5");
    println!(
        "ACCEPTANCE 5 PASS q_G <= (pi/4)sqrt(N/M) everywhere; 2->1 transition at ratio {transition} vs sin^2(pi/8) = {threshold:.6} ({elapsed:?})"
    );
}

#[test]
fn criterion_6_unknown_m_cost_model() {
    // The model constant 8 in `8 m_G` is approximate and not asserted (the
    // measured constant runs near 3.5-4); what is asserted: 100% success,
    // the order of magnitude against 8 m_G, and the sqrt(N/M) scaling
    // exponent. The fitted constant is reported in the pass line.
    let start = Instant::now();
    let trials = 10_000u64;
    let mut lines = Vec::new();
    let mut fitted_constants = Vec::new();
    for n in [10u32, 12, 14] {
        let size = 1u64 << n;
        let mut points = Vec::new();
        for matches in [1, size / 64, size / 16] {
            let mut rng = ChaCha8Rng::seed_from_u64(0xACC6 ^ (u64::from(n) << 8) ^ matches);
            let problem = random_problem(n, matches, &mut rng);
            let config = BbhtConfig::new(0xACC6 + u64::from(n) * 1000 + matches);
            let outcomes = bbht::run_trials(&problem, &config, trials);
            let successes = outcomes.iter().filter(|o| o.found_index.is_some()).count() as u64;
            assert_eq!(successes, trials, "n={n} M={matches}: success rate below 100%");
            for outcome in &outcomes {
                assert!(problem.is_match(outcome.found_index.unwrap()));
            }
            let mean = outcomes.iter().map(|o| o.oracle_calls as f64).sum::<f64>()
                / trials as f64;
            let model = bbht::expected_calls_estimate(matches, size).unwrap();
            assert!(
                mean <= 10.0 * model && mean >= model / 10.0,
                "n={n} M={matches}: mean {mean} not within an order of magnitude of {model}"
            );
            let m_g = bbht::m_lower_bound(matches, size).unwrap();
            fitted_constants.push(mean / m_g);
            points.push((matches as f64, mean));
            lines.push(format!(
                "n={n} M={matches}: mean={mean:.1} vs 8m_G={model:.1} (c={:.2})",
                mean / m_g
            ));
        }
        let slope = log_log_slope(&points);
        assert!(
            (slope + 0.5).abs() <= 0.05,
            "n={n}: log-log slope {slope} outside -0.5 +/- 0.05"
        );
        lines.push(format!("n={n}: slope={slope:.3}"));
    }
    let mean_constant =
        fitted_constants.iter().sum::<f64>() / fitted_constants.len() as f64;
    let elapsed = start.elapsed();
    assert_budget(elapsed, Duration::from_secs(300), "criterion 6");
    println!(
        "ACCEPTANCE 6 PASS unknown-M cost: 100% success, order of magnitude of 8 m_G, \
         sqrt scaling; fitted constant c ~ {mean_constant:.2} in mean = c*m_G [{}] ({elapsed:?})",
        lines.join("; ")
    );
}

fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let cov: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let var: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.0 - mean_x)).sum();
    cov / var
}

#[test]
fn criterion_7_breakdown_demonstration() {
    let start = Instant::now();
    let grid = 1000u32;
    let points = bbht::figure5_curves(grid);
    let at = |ratio: f64| -> &bbht::CurvePoint {
        points
            .iter()
            .find(|p| (p.ratio - ratio).abs() < 1e-9)
            .unwrap_or_else(|| panic!("no grid point at {ratio}"))
    };

    // m_real strictly increases across [0.76, 0.99].
    let mut previous = at(0.76).m_real.unwrap();
    let mut k = 761;
    while k <= 990 {
        let point = &points[k - 1];
        let value = point.m_real.unwrap();
        assert!(
            value > previous,
            "m_real not increasing at ratio {}",
            point.ratio
        );
        previous = value;
        k += 1;
    }

    // q_real stays below one across the breakdown region.
    for point in points.iter().filter(|p| p.ratio > 0.7505) {
        assert!(point.q_real < 1.0, "q_real {} at ratio {}", point.q_real, point.ratio);
    }

    // Divergence: by the last grid row before 1 the curve has blown up more
    // than tenfold over its value at 0.75. (At exactly 0.99 the analytic
    // factor is 1/sin(2 theta) growth of ~4.35x; the tenfold mark is crossed
    // at M/N ~ 0.99813, so the check is pinned to the 0.999 row.)
    let base = at(0.75).m_real.unwrap();
    let near_one = at(0.999).m_real.unwrap();
    let at_99 = at(0.99).m_real.unwrap();
    assert!(
        near_one > 10.0 * base,
        "m_real(0.999) = {near_one} not above 10x m_real(0.75) = {base}"
    );
    let elapsed = start.elapsed();
    assert_budget(elapsed, Duration::from_secs(1), "criterion 7");
    println!(
        "ACCEPTANCE 7 PASS m_real strictly increasing on [0.76,0.99]; q_real < 1 there; \
         blow-up m(0.999)/m(0.75) = {:.1}x (> 10x; at 0.99 the factor is {:.2}x) ({elapsed:?})",
        near_one / base,
        at_99 / base
    );
}

#[test]
fn criterion_8_padding_trick() {
    let start = Instant::now();
    for n in 2..=12u32 {
        let size = 1u64 << n;
        for matches in 1..=size {
            let plan = analytic::padded_plan(matches, size).unwrap();
            assert!(
                plan.predicted_success >= 0.5 - 1e-12,
                "padded success {} below one half at M={matches} N={size}",
                plan.predicted_success
            );
            if matches == size {
                assert!(
                    (plan.predicted_success - 0.5).abs() < 1e-12,
                    "padded success at M=N is {}, want exactly one half",
                    plan.predicted_success
                );
            }
        }
    }
    let elapsed = start.elapsed();
    assert_budget(elapsed, Duration::from_secs(10), "criterion 8");
    println!(
        "ACCEPTANCE 8 PASS padded plans reach success >= 1/2 for every M, equality at M=N, n=2..12 ({elapsed:?})"
    );
}

#[test]
fn criterion_9_cnf_oracle_correctness() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC9);

    // 1000 random formulas: cached match count versus independent
    // clause-by-clause evaluation on decoded assignments.
    for case in 0..1000u32 {
        let vars = 1 + rng.random_range(0..12u32);
        let formula = random_formula(vars, &mut rng);
        let problem = formula.to_problem().unwrap();
        let brute = (0..problem.size())
            .filter(|&i| satisfies_decoded(&formula, i))
            .count() as u64;
        assert_eq!(problem.match_count(), brute, "case {case}: {formula:?}");
    }

    // A satisfiable instance run end to end: sampled assignments satisfy
    // the formula at least as often as the analytic prediction allows.
    let (formula, problem) = loop {
        let formula = random_formula(11, &mut rng);
        let problem = formula.to_problem().unwrap();
        let ratio = problem.ratio();
        if ratio > 0.0 && ratio <= 0.5 {
            break (formula, problem);
        }
    };
    let q = analytic::optimal_iterations(problem.match_count(), problem.size()).unwrap();
    let predicted = analytic::success_prob(q, problem.match_count(), problem.size()).unwrap();
    let state = grover_run(&problem, q).unwrap();
    let samples = 10_000usize;
    let hits = state
        .sample_many(samples, 0xACC9)
        .into_iter()
        .filter(|&i| formula.evaluate(i))
        .count();
    let frequency = hits as f64 / samples as f64;
    let sigma = (predicted * (1.0 - predicted) / samples as f64).sqrt();
    assert!(
        frequency >= predicted - 3.0 * sigma,
        "empirical {frequency} below predicted {predicted} - 3 sigma ({sigma})"
    );
    let elapsed = start.elapsed();
    assert_budget(elapsed, Duration::from_secs(120), "criterion 9");
    println!(
        "ACCEPTANCE 9 PASS 1000 CNF match counts exact; sampled satisfaction {frequency:.4} vs predicted {predicted:.4} (sigma {sigma:.4}) over {samples} draws ({elapsed:?})"
    );
}

fn random_formula(vars: u32, rng: &mut ChaCha8Rng) -> CnfFormula {
    let clause_count = rng.random_range(0..=2 * vars as usize);
    let clauses = (0..clause_count)
        .map(|_| {
            let len = 1 + rng.random_range(0..3usize);
            (0..len)
                .map(|_| {
                    let v = 1 + rng.random_range(0..vars) as i32;
                    if rng.random::<bool>() {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect();
    CnfFormula::new(vars, clauses).unwrap()
}

fn satisfies_decoded(formula: &CnfFormula, index: u64) -> bool {
    let assignment: Vec<bool> = (0..formula.variable_count())
        .map(|k| index >> k & 1 == 1)
        .collect();
    formula.clauses().iter().all(|clause| {
        clause.iter().any(|&lit| {
            let value = assignment[(lit.unsigned_abs() - 1) as usize];
            if lit > 0 {
                value
            } else {
                !value
            }
        })
    })
}
