//! Precision analysis of quantum phase estimation with approximate
//! (Trotterized) controlled unitaries.
//!
//! The crate covers four layers:
//!
//! * [`hamiltonian`], [`pauli`], [`linalg`]: Pauli-string LCU Hamiltonians,
//!   their dense realization, exact eigensystems, Hermitian exponentials,
//!   principal logarithms of unitaries and spectral norms.
//! * [`trotter`]: order-1/2 product formulas per controlled power, the
//!   symbolic error operators `δH₁`, `δH₂` and effective Hamiltonians.
//! * [`bounds`]: precision conditions on energy and output state, the
//!   `C_p` variants, `A_i`, `ε` selection and Trotter resource counts.
//! * [`qpe`]: the QPE measurement model, analytic and by full simulation.
//!
//! [`report`] ties them together into the reports produced by the
//! `qpe-precision` binary.

pub mod bounds;
pub mod error;
pub mod fit;
pub mod fixtures;
pub mod hamiltonian;
pub mod linalg;
pub mod pauli;
pub mod qpe;
pub mod report;
pub mod trotter;

pub use error::{Error, Result};
pub use hamiltonian::{ingest_hamiltonian, to_dense, IdentityConvention, LcuHamiltonian, PauliTerm};
pub use linalg::{
    diagonalize, expm_hermitian, logm_unitary_hermitian, spectral_norm, DenseOperator, InitialState,
    Spectrum,
};
pub use pauli::{PauliString, PauliSum};
pub use qpe::{simulate_qpe, ControlledPowers, QpeConfig, QpeOutcome};
pub use trotter::{
    controlled_power_unitary, delta_h1, delta_h2, effective_hamiltonian, extract_first_order,
    trotter_step, ErrorOperator, StepSchedule, TrotterOrder, TrotterPlan,
};
