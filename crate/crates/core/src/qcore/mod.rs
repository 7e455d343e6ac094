//! Dense quantum linear algebra for small systems.
//!
//! Qubit `0` is the most significant bit of a basis index, so `|100⟩` is the
//! state with qubit 0 set. A [`LocalOperator`] lists its qubits in the order of
//! its matrix's tensor factors.

mod hamiltonian;
pub mod linalg;
mod operator;
mod partial;
pub mod random;
mod state;

pub use hamiltonian::{energy, min_eigenvalue, LocalHamiltonian, DENSE_QUBIT_LIMIT};
pub use linalg::{CMatrix, C64};
pub use operator::{apply_local, apply_sequence, expectation, LocalOperator, Projector};
pub use partial::{gentle_measurement_residual, partial_outer, reduced_density};
pub use state::{parse_bits, StateVector};

/// Numerical slack used wherever an exact identity is checked in floating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// `‖UU† − I‖_max` allowed for an operator treated as unitary.
    pub unitarity: f64,
    /// `‖A − A†‖_max` allowed for an operator treated as Hermitian.
    pub hermiticity: f64,
    /// General comparison slack (energies, distances, trace norms).
    pub comparison: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        unitarity: 1e-10,
        hermiticity: 1e-12,
        comparison: 1e-9,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
