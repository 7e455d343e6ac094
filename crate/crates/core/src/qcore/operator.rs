use alloc::vec;
use alloc::vec::Vec;

use super::linalg::{self, CMatrix, C64};
use super::state::StateVector;
use super::Tolerances;
use crate::{Error, Result};

/// A `2^j × 2^j` matrix acting on the listed qubits, first listed qubit being
/// the most significant tensor factor.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalOperator {
    qubits: Vec<usize>,
    matrix: CMatrix,
}

impl LocalOperator {
    pub fn new(qubits: Vec<usize>, matrix: CMatrix) -> Result<Self> {
        for (i, q) in qubits.iter().enumerate() {
            if qubits[..i].contains(q) {
                return Err(Error::DuplicateQubit(*q));
            }
        }
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        let dim = 1usize << qubits.len();
        if matrix.nrows() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: matrix.nrows(),
            });
        }
        Ok(LocalOperator { qubits, matrix })
    }

    /// Like [`LocalOperator::new`], additionally requiring unitarity.
    pub fn unitary(qubits: Vec<usize>, matrix: CMatrix) -> Result<Self> {
        let op = Self::new(qubits, matrix)?;
        let dev = op.unitarity_deviation();
        if dev > Tolerances::DEFAULT.unitarity {
            return Err(Error::NotUnitary(dev));
        }
        Ok(op)
    }

    pub fn identity(qubits: Vec<usize>) -> Result<Self> {
        let dim = 1usize << qubits.len();
        Self::new(qubits, linalg::identity(dim))
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn locality(&self) -> usize {
        self.qubits.len()
    }

    pub fn adjoint(&self) -> LocalOperator {
        LocalOperator {
            qubits: self.qubits.clone(),
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn unitarity_deviation(&self) -> f64 {
        linalg::unitarity_deviation(&self.matrix)
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        linalg::hermiticity_deviation(&self.matrix)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// `self ⊗ other` on the concatenated qubit list.
    pub fn tensor(&self, other: &LocalOperator) -> Result<LocalOperator> {
        let mut qubits = self.qubits.clone();
        qubits.extend_from_slice(&other.qubits);
        Self::new(qubits, linalg::kron(&self.matrix, &other.matrix))
    }

    /// Same matrix on different qubits.
    pub fn relabel(&self, qubits: Vec<usize>) -> Result<LocalOperator> {
        Self::new(qubits, self.matrix.clone())
    }

    pub fn check_range(&self, n: usize) -> Result<()> {
        check_qubits(&self.qubits, n)
    }

    /// Dense `2^n × 2^n` matrix of this operator embedded in `n` qubits.
    pub fn embed(&self, n: usize) -> Result<CMatrix> {
        self.check_range(n)?;
        let mut full = CMatrix::zeros(1 << n, 1 << n);
        add_embedded(&mut full, n, &self.qubits, &self.matrix, linalg::ONE);
        Ok(full)
    }
}

pub(crate) fn check_qubits(qubits: &[usize], n: usize) -> Result<()> {
    for (i, &q) in qubits.iter().enumerate() {
        if q >= n {
            return Err(Error::QubitOutOfRange { index: q, n });
        }
        if qubits[..i].contains(&q) {
            return Err(Error::DuplicateQubit(q));
        }
    }
    Ok(())
}

/// Full-index offset contributed by each local index `s` on `qubits`.
pub(crate) fn local_offsets(n: usize, qubits: &[usize]) -> Vec<usize> {
    let j = qubits.len();
    (0..1usize << j)
        .map(|s| {
            qubits
                .iter()
                .enumerate()
                .filter(|(t, _)| (s >> (j - 1 - t)) & 1 == 1)
                .map(|(_, &q)| 1usize << (n - 1 - q))
                .sum()
        })
        .collect()
}

/// Full indices with every bit of `qubits` cleared.
pub(crate) fn rest_indices(n: usize, qubits: &[usize]) -> impl Iterator<Item = usize> {
    let mask: usize = qubits.iter().map(|&q| 1usize << (n - 1 - q)).sum();
    (0..1usize << n).filter(move |i| i & mask == 0)
}

pub(crate) fn apply_matrix(amps: &mut [C64], n: usize, qubits: &[usize], m: &CMatrix) {
    let offsets = local_offsets(n, qubits);
    let dim = offsets.len();
    let mut buf = vec![linalg::ZERO; dim];
    for base in rest_indices(n, qubits) {
        for (s, off) in offsets.iter().enumerate() {
            buf[s] = amps[base + off];
        }
        for (r, off) in offsets.iter().enumerate() {
            let mut acc = linalg::ZERO;
            for (c, b) in buf.iter().enumerate() {
                acc += m[(r, c)] * b;
            }
            amps[base + off] = acc;
        }
    }
}

pub(crate) fn add_embedded(full: &mut CMatrix, n: usize, qubits: &[usize], m: &CMatrix, scale: C64) {
    let offsets = local_offsets(n, qubits);
    for base in rest_indices(n, qubits) {
        for (r, ro) in offsets.iter().enumerate() {
            for (c, co) in offsets.iter().enumerate() {
                full[(base + ro, base + co)] += m[(r, c)] * scale;
            }
        }
    }
}

/// Applies a unitary local operator by gathering and scattering amplitudes.
pub fn apply_local(state: &StateVector, op: &LocalOperator) -> Result<StateVector> {
    op.check_range(state.n())?;
    let dev = op.unitarity_deviation();
    if dev > Tolerances::DEFAULT.unitarity {
        return Err(Error::NotUnitary(dev));
    }
    let mut out = state.clone();
    apply_matrix(out.amps_mut(), state.n(), op.qubits(), op.matrix());
    Ok(out)
}

/// Applies a sequence of unitaries in order.
pub fn apply_sequence(state: &StateVector, ops: &[LocalOperator]) -> Result<StateVector> {
    let mut cur = state.clone();
    for op in ops {
        cur = apply_local(&cur, op)?;
    }
    Ok(cur)
}

/// `⟨ψ|A|ψ⟩` for any local `A`.
pub fn expectation(state: &StateVector, op: &LocalOperator) -> Result<C64> {
    op.check_range(state.n())?;
    let amps = state.amps();
    let offsets = local_offsets(state.n(), op.qubits());
    let m = op.matrix();
    let mut total = linalg::ZERO;
    for base in rest_indices(state.n(), op.qubits()) {
        for (r, ro) in offsets.iter().enumerate() {
            let left = amps[base + ro].conj();
            if left == linalg::ZERO {
                continue;
            }
            let mut acc = linalg::ZERO;
            for (c, co) in offsets.iter().enumerate() {
                acc += m[(r, c)] * amps[base + co];
            }
            total += left * acc;
        }
    }
    Ok(total)
}

/// Hermitian idempotent local operator.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    op: LocalOperator,
}

impl Projector {
    pub fn new(op: LocalOperator) -> Result<Self> {
        let h = op.hermiticity_deviation();
        if h > Tolerances::DEFAULT.hermiticity {
            return Err(Error::NotHermitian(h));
        }
        let m = op.matrix();
        let idem = linalg::max_abs_diff(&(m * m), m);
        if idem > 1e-10 {
            return Err(Error::NotProjector(idem));
        }
        Ok(Projector { op })
    }

    /// `Σ |s⟩⟨s|` over orthonormal `states`, acting on all `n` qubits.
    pub fn onto_states(n: usize, states: &[StateVector]) -> Result<Self> {
        let dim = 1usize << n;
        let mut m = CMatrix::zeros(dim, dim);
        for s in states {
            if s.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: s.n(),
                });
            }
            m += linalg::outer(s.amps(), s.amps());
        }
        Self::new(LocalOperator::new((0..n).collect(), m)?)
    }

    pub fn operator(&self) -> &LocalOperator {
        &self.op
    }

    /// Orthonormal basis of the range, embedded in `n` qubits.
    pub fn range_basis(&self, n: usize) -> Result<Vec<StateVector>> {
        let full = self.op.embed(n)?;
        linalg::hermitian_eigenpairs(&full)?
            .into_iter()
            .filter(|(l, _)| *l > 0.5)
            .map(|(_, v)| StateVector::normalized(n, v))
            .collect()
    }
}
