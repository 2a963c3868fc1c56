//! Textbook QPE with `N` phase qubits, analytic and by branch simulation.
//!
//! The controlled power on phase qubit `q` is `U^{2^q}` (exact) or
//! `S(U^{2^q}, p)` (Trotterized), with `U = exp(−i·2π·t·H)`. Measuring `l`
//! estimates the phase `θ = (−tE) mod 1` as `l/2^N`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamiltonian::LcuHamiltonian;
use crate::linalg::{c, CVector, DenseOperator, InitialState, Spectrum};
use crate::trotter::{controlled_power_unitary, exact_power_unitary, TrotterPlan};

/// Largest phase register the simulator accepts.
pub const MAX_PHASE_QUBITS: u32 = 16;

/// `f(x) = (1/2^N) Σ_{m<2^N} e^{2πimx}`, with `f = 1` at integer `x`.
pub fn blur(x: f64, n_phase: u32) -> Complex64 {
    let big = 2f64.powi(n_phase as i32);
    let r = x.rem_euclid(1.0);
    if r < 1e-15 || 1.0 - r < 1e-15 {
        return c(1.0);
    }
    let mag = (PI * big * r).sin() / ((PI * r).sin() * big);
    Complex64::from_polar(mag, PI * (big - 1.0) * r)
}

fn check_register(n_phase: u32) -> Result<()> {
    if n_phase == 0 || n_phase > MAX_PHASE_QUBITS {
        return Err(Error::PhaseRegisterCap { phase_qubits: n_phase, cap: MAX_PHASE_QUBITS });
    }
    Ok(())
}

/// `P(l) = Σ_j |c_j|² |f(θ_j − l/2^N)|²` for exact controlled powers.
pub fn analytic_distribution(spectrum: &Spectrum, init: &InitialState, t: f64, n_phase: u32) -> Result<Vec<f64>> {
    check_register(n_phase)?;
    let weights: Vec<f64> = init.overlaps(spectrum)?.iter().map(|c| c.norm_sqr()).collect();
    let phases = spectrum.phases(t);
    let big = 1usize << n_phase;
    Ok((0..big)
        .map(|l| {
            let y = l as f64 / big as f64;
            weights.iter().zip(&phases).map(|(w, th)| w * blur(th - y, n_phase).norm_sqr()).sum()
        })
        .collect())
}

/// Unnormalized system state after reading `l`: `Σ_j c_j f(θ_j − l/2^N) |ψ_j⟩`.
pub fn analytic_outcome_state(
    spectrum: &Spectrum,
    init: &InitialState,
    t: f64,
    n_phase: u32,
    l: usize,
) -> Result<CVector> {
    check_register(n_phase)?;
    let overlaps = init.overlaps(spectrum)?;
    let y = l as f64 / 2f64.powi(n_phase as i32);
    let coeffs = CVector::from_iterator(
        spectrum.dim(),
        overlaps.iter().zip(spectrum.phases(t)).map(|(cj, th)| cj * blur(th - y, n_phase)),
    );
    Ok(spectrum.states() * coeffs)
}

/// Source of the controlled powers.
#[derive(Debug, Clone)]
pub enum ControlledPowers {
    Exact { time: f64 },
    Trotterized(TrotterPlan),
}

impl ControlledPowers {
    pub fn time(&self) -> f64 {
        match self {
            Self::Exact { time } => *time,
            Self::Trotterized(plan) => plan.time(),
        }
    }

    pub fn power(&self, h: &LcuHamiltonian, q: u32) -> Result<DenseOperator> {
        match self {
            Self::Exact { time } => exact_power_unitary(h, *time, q),
            Self::Trotterized(plan) => controlled_power_unitary(h, plan, q),
        }
    }
}

/// Joint result of one QPE run: per-outcome system amplitudes.
#[derive(Debug, Clone)]
pub struct QpeOutcome {
    n_phase: u32,
    /// `amplitudes[l]` is `(⟨l| ⊗ I)|final⟩`.
    amplitudes: Vec<CVector>,
    probabilities: Vec<f64>,
}

impl QpeOutcome {
    pub fn n_phase(&self) -> u32 {
        self.n_phase
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn probability(&self, l: usize) -> f64 {
        self.probabilities[l]
    }

    pub fn total_probability(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// Most probable outcome; ties go to the smallest `l`.
    pub fn most_likely(&self) -> usize {
        let mut best = 0;
        for (l, &p) in self.probabilities.iter().enumerate() {
            if p > self.probabilities[best] {
                best = l;
            }
        }
        best
    }

    pub fn amplitude(&self, l: usize) -> &CVector {
        &self.amplitudes[l]
    }

    /// Normalized post-measurement system state for outcome `l`.
    pub fn posterior_state(&self, l: usize) -> Result<CVector> {
        let v = &self.amplitudes[l];
        let norm = v.norm();
        if norm < 1e-300 {
            return Err(Error::InvalidArgument(format!("outcome {l} has zero probability")));
        }
        Ok(v / c(norm))
    }

    /// Seeded outcome counts over `shots` measurements.
    pub fn sample(&self, shots: usize, seed: u64) -> Result<Vec<u64>> {
        let dist = WeightedIndex::new(&self.probabilities)
            .map_err(|e| Error::InvalidArgument(format!("cannot sample outcomes: {e}")))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = vec![0u64; self.probabilities.len()];
        for _ in 0..shots {
            counts[dist.sample(&mut rng)] += 1;
        }
        Ok(counts)
    }
}

/// Simulates QPE on `init` by sweeping every control branch.
///
/// `v_m = Π_{q: bit q of m} S_q |ψ⟩` with the powers applied in increasing
/// `q`; the phase register after the inverse QFT then holds
/// `(1/2^N) Σ_m e^{−2πilm/2^N} v_m`, computed with one FFT per system component.
pub fn simulate_qpe(h: &LcuHamiltonian, powers: &ControlledPowers, init: &InitialState, n_phase: u32) -> Result<QpeOutcome> {
    check_register(n_phase)?;
    let dim = 1usize << h.n_qubits();
    if init.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: init.dim() });
    }
    let unitaries = (0..n_phase).map(|q| powers.power(h, q)).collect::<Result<Vec<_>>>()?;
    let big = 1usize << n_phase;
    let mut branches: Vec<CVector> = Vec::with_capacity(big);
    branches.push(init.amplitudes().clone());
    for m in 1..big {
        let top = usize::BITS - 1 - m.leading_zeros();
        let prev = &branches[m - (1 << top)];
        let next = unitaries[top as usize].apply(prev);
        branches.push(next);
    }

    let fft = FftPlanner::<f64>::new().plan_fft_forward(big);
    let scale = 1.0 / big as f64;
    let mut amplitudes = vec![CVector::zeros(dim); big];
    let mut column = vec![Complex64::new(0.0, 0.0); big];
    for s in 0..dim {
        for (m, v) in branches.iter().enumerate() {
            column[m] = v[s];
        }
        fft.process(&mut column);
        for (l, a) in column.iter().enumerate() {
            amplitudes[l][s] = a * scale;
        }
    }
    let probabilities = amplitudes.iter().map(|a| a.norm_squared()).collect();
    Ok(QpeOutcome { n_phase, amplitudes, probabilities })
}

/// `E = −(1/t)·(l/2^N) + ⌈E₀t⌉/t`.
pub fn energy_from_outcome(l: usize, n_phase: u32, t: f64, ceil_e0t: i64) -> f64 {
    -(l as f64 / 2f64.powi(n_phase as i32)) / t + ceil_e0t as f64 / t
}

/// Trace distance `√(1 − |⟨a|b⟩|²)` between normalized pure states.
pub fn trace_distance(a: &CVector, b: &CVector) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    for v in [a, b] {
        let norm_sq = v.norm_squared();
        if (norm_sq - 1.0).abs() > 1e-6 {
            return Err(Error::NotNormalized { norm_sq });
        }
    }
    let fidelity = a.dotc(b).norm_sqr().min(1.0);
    Ok((1.0 - fidelity).sqrt())
}

/// Phase register and energy-recovery settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QpeConfig {
    pub n_phase: u32,
    pub time: f64,
    /// `a` in `N = N_min + a`.
    pub extra_qubits: u32,
    /// A-priori `⌈E₀t⌉`.
    pub ceil_e0t: i64,
}

impl QpeConfig {
    pub fn new(n_phase: u32, time: f64, extra_qubits: u32, ceil_e0t: i64) -> Result<Self> {
        check_register(n_phase)?;
        if !(time > 0.0 && time.is_finite()) {
            return Err(Error::InvalidArgument(format!("time must be positive, got {time}")));
        }
        Ok(Self { n_phase, time, extra_qubits, ceil_e0t })
    }

    pub fn energy(&self, l: usize) -> f64 {
        energy_from_outcome(l, self.n_phase, self.time, self.ceil_e0t)
    }
}

/// Exact-unitary outcome built from the spectrum: `P(l)` and every
/// post-measurement system state.
pub fn analytic_qpe(spectrum: &Spectrum, init: &InitialState, t: f64, n_phase: u32) -> Result<QpeOutcome> {
    check_register(n_phase)?;
    let amplitudes = (0..1usize << n_phase)
        .map(|l| analytic_outcome_state(spectrum, init, t, n_phase, l))
        .collect::<Result<Vec<_>>>()?;
    let probabilities = amplitudes.iter().map(|a| a.norm_squared()).collect();
    Ok(QpeOutcome { n_phase, amplitudes, probabilities })
}

/// Summary of a run against the exact target state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QpeSummary {
    pub n_phase: u32,
    pub most_likely: usize,
    pub p_most_likely: f64,
    pub energy_estimate: f64,
    pub energy_error: f64,
    pub trace_distance: f64,
}

pub fn summarize(outcome: &QpeOutcome, config: &QpeConfig, spectrum: &Spectrum, state_index: usize) -> Result<QpeSummary> {
    if outcome.n_phase() != config.n_phase {
        return Err(Error::InvalidArgument("outcome and config disagree on N".into()));
    }
    let l = outcome.most_likely();
    let target = spectrum.energy(state_index);
    let energy = config.energy(l);
    let trace = trace_distance(&spectrum.state(state_index), &outcome.posterior_state(l)?)?;
    Ok(QpeSummary {
        n_phase: outcome.n_phase(),
        most_likely: l,
        p_most_likely: outcome.probability(l),
        energy_estimate: energy,
        energy_error: (energy - target).abs(),
        trace_distance: trace,
    })
}
