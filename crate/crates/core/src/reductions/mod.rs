//! Instance generators: reconfiguration of 3-CNF solutions, circuits to
//! clock Hamiltonians with a GO register, and succinctly described formulas.

mod circuit;
mod cnf;
mod go;
mod kitaev;
mod stconn;
mod succinct;

pub use circuit::{CircuitDescriptor, Gate};
pub use cnf::{Clause, Cnf3, Literal};
pub use go::{go_compose, go_reduction, go_witness_sequence, p_pieces, GoParams, GoReduction};
pub use kitaev::{history_preparation, history_state, kitaev_hamiltonian, KitaevHamiltonian};
pub use stconn::{
    h_dominates_p_check, stconn_bfs, stconn_hamiltonian, stconn_partition, stconn_to_gscon, stconn_witness,
};
pub use succinct::{
    find_satisfying, lemma72_explicit, oracle3sat_to_succinct, ClauseOracle, ClauseTable, SuccinctInstance,
};
