//! Exact state-vector simulation of the search circuit on `2^n` complex
//! amplitudes. This is the ground truth the closed-form module is checked
//! against.
//!
//! Two diffusion implementations are provided: direct inversion about the
//! mean, and the conjugated form (Walsh-Hadamard transform, selective phase
//! flip of every basis state except index 0, inverse transform). They must
//! agree elementwise to 1e-12; the global-phase variant of the circuit is
//! deliberately not distinguished, since a global phase is unobservable.
//!
//! Reductions (mean, norm, success probability) use compensated summation in
//! a fixed index order, so results are deterministic and the mean stays
//! accurate enough for the 1e-12 endpoint checks downstream.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::problem::{check_qubits, SearchProblem};

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Tolerance for the ancilla tensor-factor check in the (n+1)-qubit model.
const ANCILLA_TOLERANCE: f64 = 1e-9;

/// A register of `n` qubits stored as the full vector of `2^n` amplitudes.
#[derive(Debug, Clone)]
pub struct QuantumState {
    n: u32,
    amps: Vec<Complex64>,
}

impl QuantumState {
    /// The uniform superposition `(1/sqrt(N)) sum_i |i>`, the state after
    /// Hadamard-initialising the zeroed register.
    pub fn uniform(n: u32) -> Result<Self> {
        check_qubits(n)?;
        let size = 1usize << n;
        let amp = Complex64::new(1.0 / (size as f64).sqrt(), 0.0);
        Ok(Self { n, amps: vec![amp; size] })
    }

    /// The computational basis state `|index>`.
    pub fn basis(n: u32, index: u64) -> Result<Self> {
        check_qubits(n)?;
        if index >= 1 << n {
            return Err(Error::IndexOutOfRange { index, n });
        }
        let mut amps = vec![Complex64::ZERO; 1 << n];
        amps[index as usize] = Complex64::ONE;
        Ok(Self { n, amps })
    }

    /// Builds a state from raw amplitudes; the length must be exactly `2^n`.
    pub fn from_amplitudes(n: u32, amps: Vec<Complex64>) -> Result<Self> {
        check_qubits(n)?;
        if amps.len() != 1 << n {
            return Err(Error::AmplitudeLength { expected: 1 << n, actual: amps.len() });
        }
        Ok(Self { n, amps })
    }

    fn from_parts(n: u32, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), 1 << n);
        Self { n, amps }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn probability(&self, index: u64) -> f64 {
        self.amps[index as usize].norm_sqr()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `sum_i |alpha_i|^2`; 1 within 1e-10 for any state produced here.
    pub fn norm_sqr(&self) -> f64 {
        let mut sum = KahanSum::default();
        for a in &self.amps {
            sum.add(a.norm_sqr());
        }
        sum.value()
    }

    /// Phase-flips the amplitude of every marked index.
    pub fn apply_oracle(&mut self, problem: &SearchProblem) -> Result<()> {
        self.check_problem(problem)?;
        for i in 0..self.amps.len() {
            if problem.is_match(i as u64) {
                self.amps[i] = -self.amps[i];
            }
        }
        Ok(())
    }

    /// Inversion about the mean: `alpha_j -> 2<alpha> - alpha_j`.
    pub fn apply_diffusion_mean(&mut self) {
        let mut sum = ComplexKahanSum::default();
        for a in &self.amps {
            sum.add(*a);
        }
        let twice_mean = sum.value() * Complex64::new(2.0 / self.amps.len() as f64, 0.0);
        for a in &mut self.amps {
            *a = twice_mean - *a;
        }
    }

    /// The same reflection computed as `H^n (2|0><0| - I) H^n`: transform,
    /// flip the sign of every basis state except index 0, transform back.
    pub fn apply_diffusion_conjugated(&mut self) {
        walsh_hadamard(&mut self.amps);
        for a in &mut self.amps[1..] {
            *a = -*a;
        }
        walsh_hadamard(&mut self.amps);
    }

    /// Total probability mass on marked indices.
    pub fn success_probability(&self, problem: &SearchProblem) -> Result<f64> {
        self.check_problem(problem)?;
        let mut sum = KahanSum::default();
        for i in 0..self.amps.len() {
            if problem.is_match(i as u64) {
                sum.add(self.amps[i].norm_sqr());
            }
        }
        Ok(sum.value())
    }

    /// Draws one basis index with probability `|alpha_i|^2`, by inverse CDF
    /// over the cumulative probability array. Deterministic per seed.
    pub fn sample_measurement(&self, seed: u64) -> u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with_rng(&mut rng)
    }

    pub fn sample_with_rng<R: Rng>(&self, rng: &mut R) -> u64 {
        let cumulative = self.cumulative();
        sample_from_cumulative(&cumulative, rng)
    }

    /// Draws `count` independent indices from one seed, building the
    /// cumulative array once.
    pub fn sample_many(&self, count: usize, seed: u64) -> Vec<u64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cumulative = self.cumulative();
        (0..count)
            .map(|_| sample_from_cumulative(&cumulative, &mut rng))
            .collect()
    }

    fn cumulative(&self) -> Vec<f64> {
        let mut running = 0.0;
        self.amps
            .iter()
            .map(|a| {
                running += a.norm_sqr();
                running
            })
            .collect()
    }

    fn check_problem(&self, problem: &SearchProblem) -> Result<()> {
        if self.n != problem.n() {
            return Err(Error::SizeMismatch { left: self.n, right: problem.n() });
        }
        Ok(())
    }
}

fn sample_from_cumulative<R: Rng>(cumulative: &[f64], rng: &mut R) -> u64 {
    let total = *cumulative.last().expect("non-empty state");
    let target = rng.random::<f64>() * total;
    match cumulative.binary_search_by(|c| c.partial_cmp(&target).unwrap()) {
        Ok(i) | Err(i) => (i.min(cumulative.len() - 1)) as u64,
    }
}

/// In-place unitary Walsh-Hadamard transform (`H^{tensor n}`), standard
/// butterfly with a 1/sqrt(2) scale per stage. Self-inverse.
fn walsh_hadamard(amps: &mut [Complex64]) {
    let len = amps.len();
    let mut step = 1;
    while step < len {
        let mut i = 0;
        while i < len {
            for j in i..i + step {
                let a = amps[j];
                let b = amps[j + step];
                amps[j] = (a + b) * FRAC_1_SQRT_2;
                amps[j + step] = (a - b) * FRAC_1_SQRT_2;
            }
            i += 2 * step;
        }
        step *= 2;
    }
}

/// Runs the full algorithm: uniform start, then `iterations` rounds of
/// oracle followed by diffusion. Deterministic.
pub fn grover_run(problem: &SearchProblem, iterations: u64) -> Result<QuantumState> {
    let mut state = QuantumState::uniform(problem.n())?;
    for _ in 0..iterations {
        state.apply_oracle(problem)?;
        state.apply_diffusion_mean();
    }
    Ok(state)
}

/// The (n+1)-qubit circuit with the workspace qubit kept in the register:
/// the oracle is the bit-flip `|i>|w> -> |i>|w xor f(i)>` and the phase
/// appears through the `(|0>-|1>)/sqrt(2)` workspace factor.
///
/// The workspace qubit is the top bit of the index, so the vector splits
/// into two contiguous `2^n` blocks, one per workspace value.
#[derive(Debug, Clone)]
pub struct AncillaSimulation {
    n: u32,
    full: Vec<Complex64>,
}

impl AncillaSimulation {
    /// Prepares `|0...0>|1>` and Hadamards all `n+1` qubits.
    pub fn new(n: u32) -> Result<Self> {
        check_qubits(n)?;
        let size = 1usize << (n + 1);
        let mut full = vec![Complex64::ZERO; size];
        full[1 << n] = Complex64::ONE;
        let mut sim = Self { n, full };
        for qubit in 0..=n {
            sim.hadamard(qubit);
        }
        Ok(sim)
    }

    fn hadamard(&mut self, qubit: u32) {
        let step = 1usize << qubit;
        let len = self.full.len();
        let mut i = 0;
        while i < len {
            for j in i..i + step {
                let a = self.full[j];
                let b = self.full[j + step];
                self.full[j] = (a + b) * FRAC_1_SQRT_2;
                self.full[j + step] = (a - b) * FRAC_1_SQRT_2;
            }
            i += 2 * step;
        }
    }

    /// `|i>|w> -> |i>|w xor f(i)>`: swaps the two workspace amplitudes of
    /// every marked index.
    pub fn apply_oracle_bitflip(&mut self, problem: &SearchProblem) -> Result<()> {
        if self.n != problem.n() {
            return Err(Error::SizeMismatch { left: self.n, right: problem.n() });
        }
        let block = 1usize << self.n;
        for i in 0..block {
            if problem.is_match(i as u64) {
                self.full.swap(i, i + block);
            }
        }
        Ok(())
    }

    /// Diffusion on the first `n` qubits only: inversion about the mean
    /// within each workspace block.
    pub fn apply_diffusion(&mut self) {
        let block = 1usize << self.n;
        for half in self.full.chunks_mut(block) {
            let mut sum = ComplexKahanSum::default();
            for a in half.iter() {
                sum.add(*a);
            }
            let twice_mean = sum.value() * Complex64::new(2.0 / block as f64, 0.0);
            for a in half.iter_mut() {
                *a = twice_mean - *a;
            }
        }
    }

    /// How far the workspace qubit has drifted from the `(|0>-|1>)/sqrt(2)`
    /// factor: the max elementwise magnitude of `block1 + block0`. Zero for
    /// an exactly separable state.
    pub fn separability_residual(&self) -> f64 {
        let block = 1usize << self.n;
        (0..block)
            .map(|i| (self.full[i] + self.full[i + block]).norm())
            .fold(0.0, f64::max)
    }

    /// Discards the workspace qubit, insisting it still factors out.
    pub fn reduced_register(&self) -> Result<QuantumState> {
        let residual = self.separability_residual();
        if residual > ANCILLA_TOLERANCE {
            return Err(Error::AncillaResidual { residual });
        }
        let block = 1usize << self.n;
        let scale = Complex64::new(std::f64::consts::SQRT_2, 0.0);
        let amps = self.full[..block].iter().map(|a| a * scale).collect();
        Ok(QuantumState::from_parts(self.n, amps))
    }
}

/// Same contract as [`grover_run`] but through the (n+1)-qubit model; the
/// workspace qubit is verified separable and discarded at the end.
pub fn grover_run_with_ancilla(problem: &SearchProblem, iterations: u64) -> Result<QuantumState> {
    let mut sim = AncillaSimulation::new(problem.n())?;
    for _ in 0..iterations {
        sim.apply_oracle_bitflip(problem)?;
        sim.apply_diffusion();
    }
    sim.reduced_register()
}

/// Neumaier-compensated running sum with a fixed accumulation order.
#[derive(Default, Clone, Copy)]
struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

#[derive(Default, Clone, Copy)]
struct ComplexKahanSum {
    re: KahanSum,
    im: KahanSum,
}

impl ComplexKahanSum {
    fn add(&mut self, value: Complex64) {
        self.re.add(value.re);
        self.im.add(value.im);
    }

    fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}
