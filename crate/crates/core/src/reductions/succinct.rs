use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::cnf::{falsifying_assignment, Clause, Literal};
use crate::qcore::linalg::{self, CMatrix, C64};
use crate::qcore::{LocalHamiltonian, LocalOperator, StateVector, DENSE_QUBIT_LIMIT};
use crate::verify::{GsconInstance, GsconParams};
use crate::{Error, Result};

/// Formula on `2^n_exp` variables with `2^r_exp` clauses, queried one clause
/// at a time.
pub trait ClauseOracle: Sync {
    fn n_exp(&self) -> u32;
    fn r_exp(&self) -> u32;
    fn clause(&self, index: u64) -> Result<Clause>;
}

/// Explicit clause list served through the oracle interface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseTable {
    n_exp: u32,
    r_exp: u32,
    clauses: Vec<Clause>,
}

fn exact_log2(v: usize, what: &str) -> Result<u32> {
    if v == 0 || !v.is_power_of_two() {
        return Err(Error::InvalidParameter(format!("{what} {v} is not a power of two")));
    }
    Ok(v.trailing_zeros())
}

impl ClauseTable {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self> {
        let n_exp = exact_log2(num_vars, "variable count")?;
        let r_exp = exact_log2(clauses.len(), "clause count")?;
        if let Some(l) = clauses.iter().flatten().find(|l| l.var >= num_vars) {
            return Err(Error::InvalidInput(format!("variable {} of {num_vars}", l.var + 1)));
        }
        Ok(ClauseTable { n_exp, r_exp, clauses })
    }

    /// Pads the clause list to a power of two with the tautology
    /// `x₀ ∨ ¬x₀ ∨ x₀`, whose constraint is zero.
    pub fn padded(num_vars: usize, mut clauses: Vec<Clause>) -> Result<Self> {
        let target = clauses.len().max(1).next_power_of_two();
        let taut = [Literal::pos(0), Literal::neg(0), Literal::pos(0)];
        clauses.resize(target, taut);
        Self::new(num_vars, clauses)
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }
}

impl ClauseOracle for ClauseTable {
    fn n_exp(&self) -> u32 {
        self.n_exp
    }

    fn r_exp(&self) -> u32 {
        self.r_exp
    }

    fn clause(&self, index: u64) -> Result<Clause> {
        self.clauses.get(index as usize).copied().ok_or(Error::IndexOutOfRange)
    }
}

/// GSCON instance given by oracles: term `i` is the clause projector onto
/// its falsifying assignment tensored with `P = I − |00⟩⟨00| − |11⟩⟨11|` on a
/// 2-qubit GO register placed after the `2^n_exp` variable qubits.
#[derive(Debug, Clone)]
pub struct SuccinctInstance<O: ClauseOracle> {
    oracle: O,
}

/// Wraps a clause oracle. Exponents above 62 are rejected so every index fits
/// in a `u64`.
pub fn oracle3sat_to_succinct<O: ClauseOracle>(oracle: O) -> Result<SuccinctInstance<O>> {
    if oracle.n_exp() > 62 || oracle.r_exp() > 62 {
        return Err(Error::InvalidParameter("oracle exponents above 62".into()));
    }
    Ok(SuccinctInstance { oracle })
}

impl<O: ClauseOracle> SuccinctInstance<O> {
    pub fn oracle(&self) -> &O {
        &self.oracle
    }

    pub fn num_vars(&self) -> u64 {
        1u64 << self.oracle.n_exp()
    }

    pub fn num_qubits(&self) -> u64 {
        self.num_vars() + 2
    }

    pub fn term_count(&self) -> u64 {
        1u64 << self.oracle.r_exp()
    }

    pub fn go_qubits(&self) -> [u64; 2] {
        let n = self.num_vars();
        [n, n + 1]
    }

    /// `η₁ = η₃ = 0`, `η₂ = Δ = 1/(16m²)`, `η₄ = 1/4`, `l = 1`,
    /// `m = 2^{n_exp+1} + 2`; `k = 5` bounds three clause variables plus GO.
    pub fn params(&self) -> GsconParams {
        let m = 2 * self.num_vars() as usize + 2;
        let eta2 = 1.0 / (16.0 * (m as f64) * (m as f64));
        GsconParams { k: 5, eta1: 0.0, eta2, eta3: 0.0, eta4: 0.25, delta: eta2, l: 1, m }
    }

    /// Term oracle: `(qubits, matrix)` for clause `index`. A tautological
    /// clause yields the zero matrix.
    pub fn term(&self, index: u64) -> Result<(Vec<u64>, CMatrix)> {
        if index >= self.term_count() {
            return Err(Error::IndexOutOfRange);
        }
        let clause = self.oracle.clause(index)?;
        if let Some(l) = clause.iter().find(|l| l.var as u64 >= self.num_vars()) {
            return Err(Error::InvalidInput(format!("clause {index} uses variable {}", l.var + 1)));
        }
        let p = linalg::diagonal(&[0.0, 1.0, 1.0, 0.0]);
        let (vars, diag) = match falsifying_assignment(&clause) {
            Some((vars, values)) => {
                let idx = values.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
                let mut d = CMatrix::zeros(1 << vars.len(), 1 << vars.len());
                d[(idx, idx)] = linalg::ONE;
                (vars, d)
            }
            None => {
                let mut vars: Vec<usize> = clause.iter().map(|l| l.var).collect();
                vars.sort_unstable();
                vars.dedup();
                let dim = 1 << vars.len();
                (vars, CMatrix::zeros(dim, dim))
            }
        };
        let mut qubits: Vec<u64> = vars.iter().map(|&v| v as u64).collect();
        qubits.extend(self.go_qubits());
        Ok((qubits, linalg::kron(&diag, &p)))
    }

    /// Start state oracle: `|0⟩` on every qubit.
    pub fn psi_qubit(&self, index: u64) -> Result<[C64; 2]> {
        if index >= self.num_qubits() {
            return Err(Error::IndexOutOfRange);
        }
        Ok([linalg::ONE, linalg::ZERO])
    }

    /// Target state oracle: `|0⟩` on variables, `|1⟩` on the GO register.
    pub fn phi_qubit(&self, index: u64) -> Result<[C64; 2]> {
        if index >= self.num_qubits() {
            return Err(Error::IndexOutOfRange);
        }
        Ok(if index >= self.num_vars() {
            [linalg::ZERO, linalg::ONE]
        } else {
            [linalg::ONE, linalg::ZERO]
        })
    }

    /// Explicit instance built by querying every oracle index.
    pub fn expand(&self) -> Result<GsconInstance> {
        let n = self.num_qubits();
        if n > DENSE_QUBIT_LIMIT as u64 {
            return Err(Error::GuardExceeded(format!("{n} qubits exceeds {DENSE_QUBIT_LIMIT}")));
        }
        let n = n as usize;
        let terms = (0..self.term_count())
            .map(|i| {
                let (q, m) = self.term(i)?;
                LocalOperator::new(q.into_iter().map(|v| v as usize).collect(), m)
            })
            .collect::<Result<Vec<_>>>()?;
        let h = LocalHamiltonian::new(n, terms)?;
        let product = |f: &dyn Fn(u64) -> Result<[C64; 2]>| -> Result<StateVector> {
            let mut s = StateVector::new(0, vec![linalg::ONE])?;
            for i in 0..n as u64 {
                s = s.tensor(&StateVector::new(1, f(i)?.to_vec())?);
            }
            Ok(s)
        };
        let psi = product(&|i| self.psi_qubit(i))?;
        let phi = product(&|i| self.phi_qubit(i))?;
        GsconInstance::new(h, self.params(), psi, phi)
    }

    /// `X^x` on the variables, `X` on the first GO qubit, `X` on the second,
    /// `X^x` again: `2·2^n_exp + 2` single-qubit operators.
    pub fn witness(&self, assignment: &[bool]) -> Result<Vec<LocalOperator>> {
        if assignment.len() as u64 != self.num_vars() {
            return Err(Error::DimensionMismatch { expected: self.num_vars() as usize, got: assignment.len() });
        }
        let x = linalg::from_real_rows(2, &[0.0, 1.0, 1.0, 0.0])?;
        let flips = assignment
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                if b {
                    LocalOperator::new(vec![i], x.clone())
                } else {
                    LocalOperator::identity(vec![i])
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let [g0, g1] = self.go_qubits();
        let mut ops = flips.clone();
        ops.push(LocalOperator::new(vec![g0 as usize], x.clone())?);
        ops.push(LocalOperator::new(vec![g1 as usize], x)?);
        ops.extend(flips);
        Ok(ops)
    }
}

/// Exhaustive search for a satisfying assignment, up to 16 variables.
pub fn find_satisfying<O: ClauseOracle>(oracle: &O) -> Result<Option<Vec<bool>>> {
    if oracle.n_exp() > 4 {
        return Err(Error::GuardExceeded(format!("2^{} variables", oracle.n_exp())));
    }
    let n = 1usize << oracle.n_exp();
    let clauses = (0..1u64 << oracle.r_exp()).map(|i| oracle.clause(i)).collect::<Result<Vec<_>>>()?;
    for a in 0..1u64 << n {
        let bits: Vec<bool> = (0..n).map(|v| (a >> (n - 1 - v)) & 1 == 1).collect();
        let ok = clauses
            .iter()
            .all(|c| c.iter().any(|l| l.var < n && l.eval(bits[l.var])));
        if ok {
            return Ok(Some(bits));
        }
    }
    Ok(None)
}

/// Diagonal of `Σ_i H_i ⊗ P` over `num_vars + 2` qubits computed directly
/// per basis state: the number of falsified clauses when the two GO bits
/// differ, zero otherwise.
pub fn lemma72_explicit(num_vars: usize, clauses: &[Clause]) -> Result<Vec<f64>> {
    let n = num_vars + 2;
    if n > DENSE_QUBIT_LIMIT {
        return Err(Error::GuardExceeded(format!("{n} qubits exceeds {DENSE_QUBIT_LIMIT}")));
    }
    let bit = |z: usize, q: usize| (z >> (n - 1 - q)) & 1 == 1;
    Ok((0..1usize << n)
        .map(|z| {
            if bit(z, num_vars) == bit(z, num_vars + 1) {
                return 0.0;
            }
            clauses
                .iter()
                .filter(|c| c.iter().all(|l| !l.eval(bit(z, l.var))))
                .count() as f64
        })
        .collect())
}
