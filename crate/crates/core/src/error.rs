use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed Hamiltonian file: {0}")]
    Parse(String),

    #[error("invalid Pauli axes {axes:?}: {reason}")]
    MalformedAxes { axes: String, reason: String },

    #[error("inconsistent qubit count: declared {declared}, term {axes:?} has {found}")]
    QubitCountMismatch {
        declared: usize,
        found: usize,
        axes: String,
    },

    #[error("Hamiltonian has no terms")]
    EmptyHamiltonian,

    #[error("{qubits} qubits exceeds the dense-operator cap of {cap}")]
    DimensionCap { qubits: usize, cap: usize },

    #[error("{phase_qubits} phase qubits exceeds the simulation cap of {cap}")]
    PhaseRegisterCap { phase_qubits: u32, cap: u32 },

    #[error("operator is not Hermitian (max |A - A†| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("operator is not unitary (max |A†A - 1| = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("eigenphase {phase} is within {tolerance:e} of ±π; principal logarithm is ambiguous")]
    BranchAmbiguity { phase: f64, tolerance: f64 },

    #[error("step angle 2π·dt·Σ|γ| = {angle} is not below π; effective Hamiltonian extraction is unsafe")]
    BranchUnsafe { angle: f64 },

    #[error("state {index} is degenerate (gap {gap:e} Ha)")]
    Degenerate { index: usize, gap: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized (norm² = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("second moment ⟨ψ|δH²|ψ⟩ = {0:e} vanishes; A coefficient undefined")]
    VanishingSecondMoment(f64),

    #[error("extraction did not converge: residual slope {slope} outside [0.5, 3]")]
    NonConvergent { slope: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors caused by user input or the filesystem rather than numerics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Io { .. }
                | Error::Parse(_)
                | Error::MalformedAxes { .. }
                | Error::QubitCountMismatch { .. }
                | Error::EmptyHamiltonian
                | Error::InvalidArgument(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
