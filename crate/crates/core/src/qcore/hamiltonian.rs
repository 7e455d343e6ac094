use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::linalg::{self, CMatrix};
use super::operator::{self, expectation, LocalOperator};
use super::state::StateVector;
use super::Tolerances;
use crate::{Error, Result};

/// Largest `n` accepted by dense eigensolves.
pub const DENSE_QUBIT_LIMIT: usize = 14;

/// Sum of Hermitian local terms with spectral norm at most one.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalHamiltonian {
    n: usize,
    terms: Vec<LocalOperator>,
}

impl LocalHamiltonian {
    pub fn new(n: usize, terms: Vec<LocalOperator>) -> Result<Self> {
        for t in &terms {
            t.check_range(n)?;
            let h = t.hermiticity_deviation();
            if h > Tolerances::DEFAULT.hermiticity {
                return Err(Error::NotHermitian(h));
            }
            let norm = linalg::spectral_norm(t.matrix())?;
            if norm > 1.0 + 1e-10 {
                return Err(Error::TermNormTooLarge(norm));
            }
        }
        Ok(LocalHamiltonian { n, terms })
    }

    /// As [`LocalHamiltonian::new`], rejecting terms on more than `k` qubits.
    pub fn with_locality(n: usize, terms: Vec<LocalOperator>, k: usize) -> Result<Self> {
        let h = Self::new(n, terms)?;
        let got = h.locality();
        if got > k {
            return Err(Error::LocalityExceeded { got, limit: k });
        }
        Ok(h)
    }

    pub fn empty(n: usize) -> Self {
        LocalHamiltonian { n, terms: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[LocalOperator] {
        &self.terms
    }

    /// Number of local terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest number of qubits touched by a single term.
    pub fn locality(&self) -> usize {
        self.terms.iter().map(|t| t.locality()).max().unwrap_or(0)
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.iter().all(|t| {
            let m = t.matrix();
            (0..m.nrows()).all(|r| (0..m.ncols()).all(|c| r == c || m[(r, c)].norm() == 0.0))
        })
    }

    /// Diagonal of the full operator, when every term is diagonal.
    pub fn diagonal(&self) -> Result<Vec<f64>> {
        if !self.is_diagonal() {
            return Err(Error::NotDiagonal);
        }
        guard(self.n)?;
        let mut diag = vec![0.0; 1 << self.n];
        for t in &self.terms {
            let offsets = operator::local_offsets(self.n, t.qubits());
            for base in operator::rest_indices(self.n, t.qubits()) {
                for (s, off) in offsets.iter().enumerate() {
                    diag[base + off] += t.matrix()[(s, s)].re;
                }
            }
        }
        Ok(diag)
    }

    /// Dense `2^n × 2^n` matrix of the sum.
    pub fn dense(&self) -> Result<CMatrix> {
        guard(self.n)?;
        let mut full = CMatrix::zeros(1 << self.n, 1 << self.n);
        for t in &self.terms {
            operator::add_embedded(&mut full, self.n, t.qubits(), t.matrix(), linalg::ONE);
        }
        Ok(full)
    }
}

fn guard(n: usize) -> Result<()> {
    if n > DENSE_QUBIT_LIMIT {
        return Err(Error::GuardExceeded(format!(
            "{n} qubits exceeds the dense limit of {DENSE_QUBIT_LIMIT}"
        )));
    }
    Ok(())
}

/// `Σ_i ⟨ψ|H_i|ψ⟩`, evaluated term by term.
pub fn energy(h: &LocalHamiltonian, state: &StateVector) -> Result<f64> {
    if h.n() != state.n() {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            got: state.n(),
        });
    }
    let mut total = 0.0;
    for t in h.terms() {
        let e = expectation(state, t)?;
        if e.im.abs() > 1e-10 {
            return Err(Error::NotHermitian(e.im.abs()));
        }
        total += e.re;
    }
    Ok(total)
}

/// Smallest eigenvalue of `H`, by diagonal scan or dense eigensolve.
pub fn min_eigenvalue(h: &LocalHamiltonian) -> Result<f64> {
    guard(h.n())?;
    if h.is_diagonal() {
        return Ok(h.diagonal()?.into_iter().fold(f64::INFINITY, f64::min));
    }
    let ev = linalg::hermitian_eigenvalues(&h.dense()?)?;
    Ok(ev[0])
}
