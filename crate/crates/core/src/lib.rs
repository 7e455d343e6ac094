//! Ground-state connectivity toolkit.
//!
//! Dense, desk-scale implementations of the objects needed to study whether a
//! ground state of a local Hamiltonian can be carried to another one by a short
//! sequence of local unitaries without leaving the low-energy space:
//!
//! * [`qcore`]: state vectors, local operators, local Hamiltonians, norms and
//!   partial traces.
//! * [`nets`]: an exact ε-net over single-qubit unitaries and an ε-pseudo-net
//!   over `d × d` unitaries with its check/round procedures.
//! * [`korth`]: k-orthogonality of states and subspaces.
//! * [`traversal`]: the traversal bound verifier and the staircase sequence.
//! * [`reductions`]: instance builders from 3-CNF reconfiguration, quantum
//!   verifier circuits and succinct clause oracles.
//! * [`verify`]: the instance model, the exact witness checker and the two
//!   net-based deciders with a brute-force cross-check.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub mod korth;
pub mod nets;
pub mod qcore;
pub mod reductions;
pub mod traversal;
pub mod verify;

pub use error::{Error, Result};
pub use qcore::{
    apply_local, energy, min_eigenvalue, CMatrix, LocalHamiltonian, LocalOperator, Projector,
    StateVector, Tolerances, C64,
};
