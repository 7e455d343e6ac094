//! GSCON instances and the deciders that run on them: exact witness
//! checking, a classical simulation of the net-based QCMA verifier, the
//! rounding-based net search for 1-local instances, and a brute-force oracle.

mod brute;
mod instance;
mod pspace;
mod qcma;

pub use brute::{brute_force_gscon, two_qubit_alphabet, BruteForceConfig, BruteForceOutcome};
pub use instance::{verify_witness, GsconInstance, GsconParams, Verdict, VerifyReport};
pub use pspace::{
    coarse_alphabet, pspace_epsilon, pspace_search, pspace_trace, DriftStep, PspaceConfig, PspaceOutcome,
};
pub use qcma::{
    honest_qcma_proof, qcma_epsilon, qcma_verifier_sim, ProofElement, QcmaOutcome, QcmaStage,
};
