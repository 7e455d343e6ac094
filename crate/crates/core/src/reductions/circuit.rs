use alloc::vec;
use alloc::vec::Vec;

use crate::qcore::linalg::{self, CMatrix};
use crate::qcore::{apply_local, LocalOperator, StateVector, Tolerances};
use crate::{Error, Result};

/// A one- or two-qubit gate on the proof-plus-ancilla register.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    Single { qubit: usize, u: CMatrix },
    /// `|0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ u` on `(control, target)`.
    Controlled { control: usize, target: usize, u: CMatrix },
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::Single { qubit, .. } => vec![*qubit],
            Gate::Controlled { control, target, .. } => vec![*control, *target],
        }
    }

    pub fn base(&self) -> &CMatrix {
        match self {
            Gate::Single { u, .. } | Gate::Controlled { u, .. } => u,
        }
    }

    pub fn operator(&self) -> Result<LocalOperator> {
        match self {
            Gate::Single { qubit, u } => LocalOperator::unitary(vec![*qubit], u.clone()),
            Gate::Controlled { control, target, u } => {
                LocalOperator::unitary(vec![*control, *target], controlled(u))
            }
        }
    }

    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate::Controlled {
            control,
            target,
            u: linalg::from_real_rows(2, &[0.0, 1.0, 1.0, 0.0]).expect("2x2"),
        }
    }
}

/// `|0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ u` for a 2×2 `u`.
pub(crate) fn controlled(u: &CMatrix) -> CMatrix {
    let mut m = linalg::identity(4);
    for r in 0..2 {
        for c in 0..2 {
            m[(2 + r, 2 + c)] = u[(r, c)];
        }
    }
    m
}

/// Verifier circuit `V = V_L⋯V_1` on `n_proof` proof qubits followed by
/// `n_ancilla` ancillas initialised to `|0⟩`; it accepts when `output` reads 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitDescriptor {
    n_proof: usize,
    n_ancilla: usize,
    output: usize,
    gates: Vec<Gate>,
}

impl CircuitDescriptor {
    pub fn new(n_proof: usize, n_ancilla: usize, output: usize, gates: Vec<Gate>) -> Result<Self> {
        let width = n_proof + n_ancilla;
        if output >= width {
            return Err(Error::QubitOutOfRange { index: output, n: width });
        }
        for g in &gates {
            let op = g.operator()?;
            op.check_range(width)?;
            if g.base().nrows() != 2 || g.base().ncols() != 2 {
                return Err(Error::DimensionMismatch { expected: 2, got: g.base().nrows() });
            }
            if op.unitarity_deviation() > Tolerances::DEFAULT.unitarity {
                return Err(Error::NotUnitary(op.unitarity_deviation()));
            }
        }
        Ok(CircuitDescriptor { n_proof, n_ancilla, output, gates })
    }

    pub fn n_proof(&self) -> usize {
        self.n_proof
    }

    pub fn n_ancilla(&self) -> usize {
        self.n_ancilla
    }

    pub fn width(&self) -> usize {
        self.n_proof + self.n_ancilla
    }

    pub fn output(&self) -> usize {
        self.output
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Gate count `L`.
    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// `proof ⊗ |0…0⟩`.
    pub fn initial_state(&self, proof: &StateVector) -> Result<StateVector> {
        if proof.n() != self.n_proof {
            return Err(Error::DimensionMismatch { expected: self.n_proof, got: proof.n() });
        }
        Ok(proof.tensor(&StateVector::zero(self.n_ancilla)))
    }

    /// States after `0, 1, …, L` gates.
    pub fn trajectory(&self, proof: &StateVector) -> Result<Vec<StateVector>> {
        let mut cur = self.initial_state(proof)?;
        let mut out = vec![cur.clone()];
        for g in &self.gates {
            cur = apply_local(&cur, &g.operator()?)?;
            out.push(cur.clone());
        }
        Ok(out)
    }

    /// Probability that the output qubit reads 1 after the circuit.
    pub fn acceptance_probability(&self, proof: &StateVector) -> Result<f64> {
        let last = self.trajectory(proof)?.pop().expect("trajectory is nonempty");
        let bit = self.width() - 1 - self.output;
        Ok(last
            .amps()
            .iter()
            .enumerate()
            .filter(|(i, _)| (i >> bit) & 1 == 1)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Prepends CNOTs copying each proof qubit into a fresh ancilla appended
    /// after the existing ones.
    pub fn with_proof_copy(&self) -> Result<CircuitDescriptor> {
        let base = self.width();
        let mut gates: Vec<Gate> = (0..self.n_proof).map(|i| Gate::cnot(i, base + i)).collect();
        gates.extend(self.gates.iter().cloned());
        CircuitDescriptor::new(self.n_proof, self.n_ancilla + self.n_proof, self.output, gates)
    }
}
