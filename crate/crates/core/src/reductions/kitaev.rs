use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::circuit::{controlled, CircuitDescriptor, Gate};
use crate::qcore::linalg::{self, c64, CMatrix};
use crate::qcore::{energy, min_eigenvalue, LocalHamiltonian, LocalOperator, StateVector, DENSE_QUBIT_LIMIT};
use crate::{Error, Result};

/// Unary-clock Hamiltonian of a verifier circuit over
/// proof ⊗ ancilla ⊗ clock, the clock holding `L` qubits `C_1…C_L` in which
/// time `t` reads `1^t 0^{L−t}`.
#[derive(Debug, Clone, PartialEq)]
pub struct KitaevHamiltonian {
    pub hamiltonian: LocalHamiltonian,
    pub circuit: CircuitDescriptor,
    pub n_clock: usize,
    /// `max (1 − p_acc)/(L + 1)` over the supplied proofs.
    pub alpha_bound: f64,
    /// Smallest eigenvalue of the Hamiltonian, clamped at zero.
    pub beta_estimate: f64,
}

fn proj(bit: usize) -> CMatrix {
    linalg::diagonal(if bit == 0 { &[1.0, 0.0] } else { &[0.0, 1.0] })
}

fn raise() -> CMatrix {
    let mut m = CMatrix::zeros(2, 2);
    m[(1, 0)] = linalg::ONE;
    m
}

fn kron_all(ms: &[CMatrix]) -> CMatrix {
    ms.iter().fold(CMatrix::identity(1, 1), |acc, m| linalg::kron(&acc, m))
}

/// `½[I⊗Q − V⊗X⁺ − V†⊗X⁻]` with `Q` selecting times `t−1, t` and `X⁺`
/// advancing the clock from `t−1` to `t`.
fn propagation_term(gate: &Gate, t: usize, l: usize, clock0: usize) -> Result<LocalOperator> {
    let v = gate.operator()?;
    let mut qubits = v.qubits().to_vec();
    let mut q_parts = Vec::new();
    let mut x_parts = Vec::new();
    if t > 1 {
        qubits.push(clock0 + t - 2);
        q_parts.push(proj(1));
        x_parts.push(proj(1));
    }
    qubits.push(clock0 + t - 1);
    q_parts.push(linalg::identity(2));
    x_parts.push(raise());
    if t < l {
        qubits.push(clock0 + t);
        q_parts.push(proj(0));
        x_parts.push(proj(0));
    }
    let q = kron_all(&q_parts);
    let xp = kron_all(&x_parts);
    let gdim = v.matrix().nrows();
    let fwd = linalg::kron(v.matrix(), &xp);
    let m = (linalg::kron(&linalg::identity(gdim), &q) - &fwd - fwd.adjoint()) * c64(0.5, 0.0);
    LocalOperator::new(qubits, m)
}

/// Builds input, clock, propagation and output terms and measures `α`
/// on `test_proofs` and `β` by dense diagonalisation.
pub fn kitaev_hamiltonian(circ: &CircuitDescriptor, test_proofs: &[StateVector]) -> Result<KitaevHamiltonian> {
    let l = circ.len();
    if l == 0 {
        return Err(Error::InvalidParameter("the circuit needs at least one gate".into()));
    }
    let width = circ.width();
    let total = width + l;
    if total > DENSE_QUBIT_LIMIT {
        return Err(Error::GuardExceeded(alloc::format!(
            "{total} qubits exceeds the dense limit of {DENSE_QUBIT_LIMIT}"
        )));
    }
    let clock0 = width;
    let mut terms = Vec::new();
    for b in circ.n_proof()..width {
        terms.push(LocalOperator::new(vec![b, clock0], linalg::kron(&proj(1), &proj(0)))?);
    }
    for t in 1..l {
        terms.push(LocalOperator::new(
            vec![clock0 + t - 1, clock0 + t],
            linalg::kron(&proj(0), &proj(1)),
        )?);
    }
    for (i, g) in circ.gates().iter().enumerate() {
        terms.push(propagation_term(g, i + 1, l, clock0)?);
    }
    terms.push(LocalOperator::new(
        vec![circ.output(), clock0 + l - 1],
        linalg::kron(&proj(0), &proj(1)),
    )?);
    let hamiltonian = LocalHamiltonian::new(total, terms)?;

    let mut alpha_bound: f64 = 0.0;
    for proof in test_proofs {
        let p_acc = circ.acceptance_probability(proof)?;
        let alpha = (1.0 - p_acc) / (l as f64 + 1.0);
        let e = energy(&hamiltonian, &history_state(circ, proof)?)?;
        if e > alpha + 1e-10 {
            return Err(Error::InvalidInput(alloc::format!(
                "history state energy {e} exceeds (1 − p)/(L + 1) = {alpha}"
            )));
        }
        alpha_bound = alpha_bound.max(alpha);
    }
    let beta_estimate = min_eigenvalue(&hamiltonian)?.max(0.0);
    Ok(KitaevHamiltonian {
        hamiltonian,
        circuit: circ.clone(),
        n_clock: l,
        alpha_bound,
        beta_estimate,
    })
}

/// `(L+1)^{-1/2} Σ_t V_t⋯V_1(|proof⟩|0…0⟩) ⊗ |1^t 0^{L−t}⟩`.
pub fn history_state(circ: &CircuitDescriptor, proof: &StateVector) -> Result<StateVector> {
    let l = circ.len();
    let traj = circ.trajectory(proof)?;
    let clock_dim = 1usize << l;
    let mut amps = vec![linalg::ZERO; traj[0].dim() * clock_dim];
    let norm = 1.0 / ((l + 1) as f64).sqrt();
    for (t, s) in traj.iter().enumerate() {
        let clock = ((1usize << t) - 1) << (l - t);
        for (i, a) in s.amps().iter().enumerate() {
            amps[i * clock_dim + clock] = a * norm;
        }
    }
    StateVector::new(circ.width() + l, amps)
}

fn rotation(a: f64) -> CMatrix {
    let b = (1.0 - a * a).max(0.0).sqrt();
    linalg::from_real_rows(2, &[a, -b, b, a]).expect("2x2")
}

fn controlled_op(control: usize, target: usize, u: &CMatrix) -> Result<LocalOperator> {
    LocalOperator::unitary(vec![control, target], controlled(u))
}

/// Circuit of 1- and 2-qubit unitaries taking `|x⟩|0…0⟩|0^L⟩` to the history
/// state: a cascade of clock rotations, then each gate controlled on its clock
/// qubit. Controlled gates become doubly controlled through the
/// `CV, CNOT, CV†, CNOT, CV` decomposition with `V = √u`.
pub fn history_preparation(circ: &CircuitDescriptor) -> Result<Vec<LocalOperator>> {
    let l = circ.len();
    let clock0 = circ.width();
    let mut ops = Vec::new();
    ops.push(LocalOperator::unitary(vec![clock0], rotation(1.0 / ((l + 1) as f64).sqrt()))?);
    for t in 2..=l {
        let a = 1.0 / ((l - t + 2) as f64).sqrt();
        ops.push(controlled_op(clock0 + t - 2, clock0 + t - 1, &rotation(a))?);
    }
    let x = linalg::from_real_rows(2, &[0.0, 1.0, 1.0, 0.0])?;
    for (i, g) in circ.gates().iter().enumerate() {
        let clock = clock0 + i;
        match g {
            Gate::Single { qubit, u } => ops.push(controlled_op(clock, *qubit, u)?),
            Gate::Controlled { control, target, u } => {
                let v = linalg::sqrt_2x2(u)?;
                let v_dag = v.adjoint();
                ops.push(controlled_op(*control, *target, &v)?);
                ops.push(controlled_op(clock, *control, &x)?);
                ops.push(controlled_op(*control, *target, &v_dag)?);
                ops.push(controlled_op(clock, *control, &x)?);
                ops.push(controlled_op(clock, *target, &v)?);
            }
        }
    }
    Ok(ops)
}
