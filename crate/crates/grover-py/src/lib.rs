//! Python bindings: the search-problem and state types plus the analytic,
//! unknown-M and CSV-report operations, importable as `grover_py`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use grover_core::bbht::{self, BbhtConfig};
use grover_core::oracles::{self, MarkedSetOracle};
use grover_core::report;
use grover_core::{analytic, statevector};

fn value_error(err: grover_core::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

/// A list of size 2^n with an oracle over its indices.
#[pyclass(name = "SearchProblem")]
struct PySearchProblem {
    inner: grover_core::SearchProblem,
}

#[pymethods]
impl PySearchProblem {
    /// Marks exactly the given indices over an n-qubit space.
    #[staticmethod]
    fn explicit(n: u32, indices: Vec<u64>) -> PyResult<Self> {
        let oracle = MarkedSetOracle::explicit(n, &indices).map_err(value_error)?;
        Ok(Self { inner: oracle.to_problem().map_err(value_error)? })
    }

    /// Parses DIMACS CNF text; the oracle accepts satisfying assignments
    /// (variable k is bit k-1 of the index, least significant first).
    #[staticmethod]
    fn from_dimacs(text: &str) -> PyResult<Self> {
        let formula = oracles::parse_dimacs(text).map_err(value_error)?;
        Ok(Self { inner: formula.to_problem().map_err(value_error)? })
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    #[getter]
    fn size(&self) -> u64 {
        self.inner.size()
    }

    #[getter]
    fn match_count(&self) -> u64 {
        self.inner.match_count()
    }

    #[getter]
    fn ratio(&self) -> f64 {
        self.inner.ratio()
    }

    fn is_match(&self, index: u64) -> bool {
        index < self.inner.size() && self.inner.is_match(index)
    }

    fn marked(&self) -> Vec<u64> {
        self.inner.marked_indices()
    }

    fn __repr__(&self) -> String {
        format!(
            "SearchProblem(n={}, size={}, match_count={})",
            self.inner.n(),
            self.inner.size(),
            self.inner.match_count()
        )
    }
}

/// A register of n qubits as 2^n complex amplitudes.
#[pyclass(name = "QuantumState")]
struct PyQuantumState {
    inner: statevector::QuantumState,
}

#[pymethods]
impl PyQuantumState {
    /// The uniform superposition over all 2^n indices.
    #[staticmethod]
    fn uniform(n: u32) -> PyResult<Self> {
        Ok(Self { inner: statevector::QuantumState::uniform(n).map_err(value_error)? })
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n()
    }

    fn amplitudes(&self) -> Vec<(f64, f64)> {
        self.inner.amplitudes().iter().map(|a| (a.re, a.im)).collect()
    }

    fn probabilities(&self) -> Vec<f64> {
        self.inner.probabilities()
    }

    fn norm_sqr(&self) -> f64 {
        self.inner.norm_sqr()
    }

    fn apply_oracle(&mut self, problem: &PySearchProblem) -> PyResult<()> {
        self.inner.apply_oracle(&problem.inner).map_err(value_error)
    }

    fn apply_diffusion(&mut self) {
        self.inner.apply_diffusion_mean();
    }

    fn apply_diffusion_conjugated(&mut self) {
        self.inner.apply_diffusion_conjugated();
    }

    fn success_probability(&self, problem: &PySearchProblem) -> PyResult<f64> {
        self.inner.success_probability(&problem.inner).map_err(value_error)
    }

    fn sample(&self, seed: u64) -> u64 {
        self.inner.sample_measurement(seed)
    }

    fn sample_many(&self, count: usize, seed: u64) -> Vec<u64> {
        self.inner.sample_many(count, seed)
    }

    fn __repr__(&self) -> String {
        format!("QuantumState(n={})", self.inner.n())
    }
}

/// Outcome of one unknown-match-count search.
#[pyclass(name = "BbhtOutcome", get_all)]
struct PyBbhtOutcome {
    found_index: Option<u64>,
    oracle_calls: u64,
    grover_iterations: u64,
    rounds: u64,
}

impl From<bbht::BbhtOutcome> for PyBbhtOutcome {
    fn from(outcome: bbht::BbhtOutcome) -> Self {
        Self {
            found_index: outcome.found_index,
            oracle_calls: outcome.oracle_calls,
            grover_iterations: outcome.grover_iterations,
            rounds: outcome.rounds,
        }
    }
}

#[pymethods]
impl PyBbhtOutcome {
    fn __repr__(&self) -> String {
        let found = match self.found_index {
            Some(index) => index.to_string(),
            None => "None".into(),
        };
        format!(
            "BbhtOutcome(found_index={found}, oracle_calls={}, grover_iterations={}, rounds={})",
            self.oracle_calls, self.grover_iterations, self.rounds
        )
    }
}

/// A known-M execution plan: (theta, q_opt, predicted_success).
#[pyclass(name = "IterationPlan", get_all)]
struct PyIterationPlan {
    theta: f64,
    q_opt: u64,
    predicted_success: f64,
}

impl From<analytic::IterationPlan> for PyIterationPlan {
    fn from(plan: analytic::IterationPlan) -> Self {
        Self {
            theta: plan.theta,
            q_opt: plan.q_opt,
            predicted_success: plan.predicted_success,
        }
    }
}

#[pymethods]
impl PyIterationPlan {
    fn __repr__(&self) -> String {
        format!(
            "IterationPlan(theta={}, q_opt={}, predicted_success={})",
            self.theta, self.q_opt, self.predicted_success
        )
    }
}

/// Runs `iterations` rounds of oracle-plus-diffusion from the uniform start.
#[pyfunction]
fn grover_run(problem: &PySearchProblem, iterations: u64) -> PyResult<PyQuantumState> {
    Ok(PyQuantumState {
        inner: statevector::grover_run(&problem.inner, iterations).map_err(value_error)?,
    })
}

/// Same run through the (n+1)-qubit workspace-qubit model, reduced back to
/// the n-qubit register.
#[pyfunction]
fn grover_run_with_ancilla(problem: &PySearchProblem, iterations: u64) -> PyResult<PyQuantumState> {
    Ok(PyQuantumState {
        inner: statevector::grover_run_with_ancilla(&problem.inner, iterations)
            .map_err(value_error)?,
    })
}

/// The rotation angle with sin^2(theta) = M/N.
#[pyfunction]
fn theta(matches: u64, size: u64) -> PyResult<f64> {
    analytic::theta(matches, size).map_err(value_error)
}

/// Success probability of a single iteration: 9x - 24x^2 + 16x^3 at x = M/N.
#[pyfunction]
fn success_prob_one(matches: u64, size: u64) -> PyResult<f64> {
    analytic::success_prob_one(matches, size).map_err(value_error)
}

/// Success probability of one classical random guess: M/N.
#[pyfunction]
fn classical_guess_prob(matches: u64, size: u64) -> PyResult<f64> {
    analytic::classical_guess_prob(matches, size).map_err(value_error)
}

/// Success probability after q iterations: sin^2((2q+1) theta).
#[pyfunction]
fn success_prob(q: u64, matches: u64, size: u64) -> PyResult<f64> {
    analytic::success_prob(q, matches, size).map_err(value_error)
}

/// The optimal iteration count floor(pi / (4 theta)).
#[pyfunction]
fn optimal_iterations(matches: u64, size: u64) -> PyResult<u64> {
    analytic::optimal_iterations(matches, size).map_err(value_error)
}

/// Plan for a known match count.
#[pyfunction]
fn plan(matches: u64, size: u64) -> PyResult<PyIterationPlan> {
    Ok(analytic::plan(matches, size).map_err(value_error)?.into())
}

/// Plan over the doubled search space; success is at least one half.
#[pyfunction]
fn padded_plan(matches: u64, size: u64) -> PyResult<PyIterationPlan> {
    Ok(analytic::padded_plan(matches, size).map_err(value_error)?.into())
}

/// Exact oracle-averaged single-iteration success probability, as a reduced
/// fraction string (always "1/2").
#[pyfunction]
fn average_success_one(n: u32) -> PyResult<String> {
    Ok(analytic::rational_string(
        &analytic::average_success_one(n).map_err(value_error)?,
    ))
}

/// One performance-table row: (max_prob, min_prob, avg_exact).
#[pyfunction]
fn table1_row(n: u32) -> PyResult<(f64, f64, String)> {
    let row = analytic::table1_row(n).map_err(value_error)?;
    Ok((row.max_prob, row.min_prob, analytic::rational_string(&row.avg_prob)))
}

/// The per-stage lower bound 1/sin(2 theta) of the unknown-M loop.
#[pyfunction]
fn m_lower_bound(matches: u64, size: u64) -> PyResult<f64> {
    bbht::m_lower_bound(matches, size).map_err(value_error)
}

/// The cost model 8 m_G, approximately 4 sqrt(N/M); valid for M <= 3N/4.
#[pyfunction]
fn expected_calls_estimate(matches: u64, size: u64) -> PyResult<f64> {
    bbht::expected_calls_estimate(matches, size).map_err(value_error)
}

/// The unknown-match-count search loop.
#[pyfunction]
#[pyo3(signature = (problem, seed = 0, growth_factor = 8.0 / 7.0, max_calls = 1_000_000))]
fn bbht_search(
    problem: &PySearchProblem,
    seed: u64,
    growth_factor: f64,
    max_calls: u64,
) -> PyResult<PyBbhtOutcome> {
    let config = BbhtConfig::new(seed)
        .with_lambda(growth_factor)
        .map_err(value_error)?
        .with_max_calls(max_calls);
    Ok(bbht::bbht_search(&problem.inner, &config).into())
}

/// Classical i.i.d. sampling with oracle verification.
#[pyfunction]
#[pyo3(signature = (problem, seed = 0, max_calls = 1_000_000))]
fn classical_sampling_search(
    problem: &PySearchProblem,
    seed: u64,
    max_calls: u64,
) -> PyBbhtOutcome {
    bbht::classical_sampling_search(&problem.inner, seed, max_calls).into()
}

/// The performance table as CSV.
#[pyfunction]
fn table1_csv(n_min: u32, n_max: u32) -> PyResult<String> {
    report::table1_csv(n_min, n_max).map_err(value_error)
}

/// Single-iteration success versus the classical guess, as CSV.
#[pyfunction]
fn fig3_csv(grid: u32) -> PyResult<String> {
    report::fig3_csv(grid).map_err(value_error)
}

/// Success at the optimal count over the ratio grid, as CSV.
#[pyfunction]
fn fig4_csv(grid: u32) -> PyResult<String> {
    report::fig4_csv(grid).map_err(value_error)
}

/// The known-M and unknown-M iteration-count curves, as CSV.
#[pyfunction]
fn fig5_csv(grid: u32) -> PyResult<String> {
    report::fig5_csv(grid).map_err(value_error)
}

#[pymodule]
fn grover_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySearchProblem>()?;
    m.add_class::<PyQuantumState>()?;
    m.add_class::<PyBbhtOutcome>()?;
    m.add_class::<PyIterationPlan>()?;
    m.add_function(wrap_pyfunction!(grover_run, m)?)?;
    m.add_function(wrap_pyfunction!(grover_run_with_ancilla, m)?)?;
    m.add_function(wrap_pyfunction!(theta, m)?)?;
    m.add_function(wrap_pyfunction!(success_prob_one, m)?)?;
    m.add_function(wrap_pyfunction!(classical_guess_prob, m)?)?;
    m.add_function(wrap_pyfunction!(success_prob, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_iterations, m)?)?;
    m.add_function(wrap_pyfunction!(plan, m)?)?;
    m.add_function(wrap_pyfunction!(padded_plan, m)?)?;
    m.add_function(wrap_pyfunction!(average_success_one, m)?)?;
    m.add_function(wrap_pyfunction!(table1_row, m)?)?;
    m.add_function(wrap_pyfunction!(m_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(expected_calls_estimate, m)?)?;
    m.add_function(wrap_pyfunction!(bbht_search, m)?)?;
    m.add_function(wrap_pyfunction!(classical_sampling_search, m)?)?;
    m.add_function(wrap_pyfunction!(table1_csv, m)?)?;
    m.add_function(wrap_pyfunction!(fig3_csv, m)?)?;
    m.add_function(wrap_pyfunction!(fig4_csv, m)?)?;
    m.add_function(wrap_pyfunction!(fig5_csv, m)?)?;
    Ok(())
}
