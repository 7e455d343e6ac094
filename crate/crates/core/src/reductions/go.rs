use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::circuit::CircuitDescriptor;
use super::kitaev::{history_preparation, kitaev_hamiltonian, KitaevHamiltonian};
use crate::qcore::linalg::{self, c64, CMatrix};
use crate::qcore::{LocalHamiltonian, LocalOperator, StateVector};
use crate::verify::{GsconInstance, GsconParams};
use crate::{Error, Result};

/// The six 2-local pieces, each already scaled by ½, whose sum is
/// `I − |000⟩⟨000| − |111⟩⟨111|` on a 3-qubit GO register. Qubit positions
/// are relative to the register.
pub fn p_pieces() -> Vec<([usize; 2], CMatrix)> {
    let d = |bits: [f64; 4]| linalg::diagonal(&bits) * c64(0.5, 0.0);
    vec![
        ([0, 1], d([0.0, 1.0, 0.0, 0.0])),
        ([0, 1], d([0.0, 0.0, 1.0, 0.0])),
        ([1, 2], d([0.0, 1.0, 0.0, 0.0])),
        ([1, 2], d([0.0, 0.0, 1.0, 0.0])),
        ([0, 2], d([0.0, 0.0, 1.0, 0.0])),
        ([0, 2], d([0.0, 1.0, 0.0, 0.0])),
    ]
}

/// Inputs to the GO parameters: `η₁ = α`, `η₂ = β/(16m²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoParams {
    pub alpha: f64,
    pub beta: f64,
    pub m: usize,
}

/// `H = Σ_j H′_j ⊗ P` expanded over the six pieces of `P`, with a 3-qubit GO
/// register appended after `H′`'s qubits; `ψ = |0…0⟩|000⟩`, `φ = |0…0⟩|111⟩`,
/// `η₃ = 0`, `η₄ = 1/4`, `l = 2`, `Δ = min(η₂ − η₁, η₄ − η₃)`.
pub fn go_compose(h_prime: &LocalHamiltonian, p: GoParams) -> Result<GsconInstance> {
    let nh = h_prime.n();
    let go = [nh, nh + 1, nh + 2];
    let mut terms = Vec::new();
    for t in h_prime.terms() {
        for (pair, piece) in p_pieces() {
            let mut qubits = t.qubits().to_vec();
            qubits.extend(pair.iter().map(|&g| go[g]));
            terms.push(LocalOperator::new(qubits, linalg::kron(t.matrix(), &piece))?);
        }
    }
    let h = LocalHamiltonian::new(nh + 3, terms)?;
    let eta1 = p.alpha;
    let eta2 = p.beta / (16.0 * (p.m as f64).powi(2));
    let (eta3, eta4) = (0.0, 0.25);
    let delta = (eta2 - eta1).min(eta4 - eta3);
    if delta < 0.0 {
        return Err(Error::InvalidParameter(alloc::format!(
            "β/(16m²) = {eta2} is below α = {eta1}; no valid promise gap"
        )));
    }
    let params = GsconParams {
        k: h.locality().max(1),
        eta1,
        eta2,
        eta3,
        eta4,
        delta,
        l: 2,
        m: p.m,
    };
    let zeros = StateVector::zero(nh);
    let psi = zeros.tensor(&StateVector::from_bits("000")?);
    let phi = zeros.tensor(&StateVector::from_bits("111")?);
    GsconInstance::new(h, params, psi, phi)
}

fn x_on(q: usize) -> Result<LocalOperator> {
    LocalOperator::new(vec![q], linalg::from_real_rows(2, &[0.0, 1.0, 1.0, 0.0])?)
}

/// `X^x` on the proof, `W`, `X⊗X` on GO qubits 0 and 1, `X` on GO qubit 2,
/// `W†`, `X^x` again: exactly `2(n_p + |W| + 1)` operators.
pub fn go_witness_sequence(x: &[bool], w: &[LocalOperator], go: [usize; 3]) -> Result<Vec<LocalOperator>> {
    let flips = x
        .iter()
        .enumerate()
        .map(|(i, &b)| if b { x_on(i) } else { LocalOperator::identity(vec![i]) })
        .collect::<Result<Vec<_>>>()?;
    let mut ops = flips.clone();
    ops.extend(w.iter().cloned());
    let xx = linalg::kron(x_on(0)?.matrix(), x_on(0)?.matrix());
    ops.push(LocalOperator::new(vec![go[0], go[1]], xx)?);
    ops.push(x_on(go[2])?);
    ops.extend(w.iter().rev().map(|o| o.adjoint()));
    ops.extend(flips);
    Ok(ops)
}

/// End-to-end GO construction for a verifier circuit and a classical proof.
#[derive(Debug, Clone, PartialEq)]
pub struct GoReduction {
    pub instance: GsconInstance,
    pub kitaev: KitaevHamiltonian,
    pub preparation: Vec<LocalOperator>,
    pub witness: Vec<LocalOperator>,
    pub go_qubits: [usize; 3],
}

/// Copies the proof into fresh ancillas, builds the clock Hamiltonian `H′`
/// with `α` measured on `x`, and composes it with the GO register using
/// `m = 2(n_p + |W| + 1)`.
pub fn go_reduction(circ: &CircuitDescriptor, x: &[bool]) -> Result<GoReduction> {
    if x.len() != circ.n_proof() {
        return Err(Error::DimensionMismatch { expected: circ.n_proof(), got: x.len() });
    }
    let v = circ.with_proof_copy()?;
    let proof = StateVector::from_bool_slice(x);
    let kitaev = kitaev_hamiltonian(&v, core::slice::from_ref(&proof))?;
    let preparation = history_preparation(&v)?;
    let m = 2 * (v.n_proof() + preparation.len() + 1);
    let instance = go_compose(
        &kitaev.hamiltonian,
        GoParams { alpha: kitaev.alpha_bound, beta: kitaev.beta_estimate, m },
    )?;
    let nh = kitaev.hamiltonian.n();
    let go_qubits = [nh, nh + 1, nh + 2];
    let witness = go_witness_sequence(x, &preparation, go_qubits)?;
    Ok(GoReduction { instance, kitaev, preparation, witness, go_qubits })
}
