//! Grover search over the full multiple-match range `1 <= M <= N`.
//!
//! Three independent views of the same algorithm, cross-checked against
//! each other:
//!
//! - [`statevector`]: exact simulation on `2^n` complex amplitudes,
//!   including the (n+1)-qubit workspace-qubit model;
//! - [`analytic`]: closed-form amplitudes, probabilities and iteration
//!   counts, with exact-rational averaging identities;
//! - [`bbht`]: the randomized loop for an unknown match count and its
//!   cost model, including the regime past `M = 3N/4` where it breaks down.
//!
//! [`oracles`] builds search instances from explicit index sets or DIMACS
//! CNF formulas; [`report`] renders the standard tables and sweep figures
//! as deterministic CSV.

pub mod analytic;
pub mod bbht;
pub mod error;
pub mod oracles;
pub mod problem;
pub mod report;
pub mod statevector;

pub use error::{Error, Result};
pub use problem::{SearchProblem, MAX_QUBITS};
pub use statevector::{grover_run, grover_run_with_ancilla, QuantumState};
