use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::cnf::{falsifying_assignment, Cnf3};
use crate::korth::Subspace;
use crate::qcore::linalg::{self, CMatrix};
use crate::qcore::{LocalHamiltonian, LocalOperator, StateVector, DENSE_QUBIT_LIMIT};
use crate::verify::{GsconInstance, GsconParams};
use crate::{Error, Result};

const BFS_LIMIT: usize = 22;

fn guard(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::GuardExceeded(alloc::format!("{n} variables exceeds the limit of {limit}")));
    }
    Ok(())
}

/// Breadth-first search through satisfying assignments connected by single
/// bit flips. Returns the path from `x` to `y` when one exists.
pub fn stconn_bfs(phi: &Cnf3, x: usize, y: usize) -> Result<Option<Vec<usize>>> {
    let n = phi.num_vars();
    guard(n, BFS_LIMIT)?;
    if x >> n != 0 || y >> n != 0 {
        return Err(Error::IndexOutOfRange);
    }
    if !phi.satisfied_by(x) || !phi.satisfied_by(y) {
        return Err(Error::Unsatisfying);
    }
    let mut parent = vec![usize::MAX; 1 << n];
    parent[x] = x;
    let mut queue = VecDeque::from([x]);
    while let Some(cur) = queue.pop_front() {
        if cur == y {
            let mut path = vec![y];
            let mut at = y;
            while at != x {
                at = parent[at];
                path.push(at);
            }
            path.reverse();
            return Ok(Some(path));
        }
        for b in 0..n {
            let next = cur ^ (1 << b);
            if parent[next] == usize::MAX && phi.satisfied_by(next) {
                parent[next] = cur;
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

/// One projector `|z_i⟩⟨z_i|` per clause onto its falsifying assignment.
pub fn stconn_hamiltonian(phi: &Cnf3) -> Result<LocalHamiltonian> {
    let mut terms = Vec::new();
    for c in phi.clauses() {
        let Some((vars, values)) = falsifying_assignment(c) else {
            continue;
        };
        let idx = values.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        let dim = 1usize << vars.len();
        let mut m = CMatrix::zeros(dim, dim);
        m[(idx, idx)] = linalg::ONE;
        terms.push(LocalOperator::new(vars, m)?);
    }
    LocalHamiltonian::new(phi.num_vars(), terms)
}

/// Instance with `η₁ = η₃ = 0`, `η₂ = Δ = 2^{−(2n+4)}`, `η₄ = 1/4`, `l = 1`,
/// `m = 2ⁿ`, `ψ = |x⟩`, `φ = |y⟩`.
pub fn stconn_to_gscon(phi: &Cnf3, x: usize, y: usize) -> Result<GsconInstance> {
    let n = phi.num_vars();
    guard(n, BFS_LIMIT)?;
    if !phi.satisfied_by(x) || !phi.satisfied_by(y) {
        return Err(Error::Unsatisfying);
    }
    let h = stconn_hamiltonian(phi)?;
    let delta = 2f64.powi(-(2 * n as i32 + 4));
    let params = GsconParams {
        k: h.locality().max(1),
        eta1: 0.0,
        eta2: delta,
        eta3: 0.0,
        eta4: 0.25,
        delta,
        l: 1,
        m: 1 << n,
    };
    GsconInstance::new(h, params, StateVector::basis(n, x)?, StateVector::basis(n, y)?)
}

fn pauli_x() -> CMatrix {
    linalg::from_real_rows(2, &[0.0, 1.0, 1.0, 0.0]).expect("2x2")
}

/// X gates along consecutive assignments of `path`, padded with identities
/// on qubit 0 to length `m`.
pub fn stconn_witness(n: usize, path: &[usize], m: usize) -> Result<Vec<LocalOperator>> {
    let mut ops = Vec::with_capacity(m);
    for pair in path.windows(2) {
        let diff = pair[0] ^ pair[1];
        if diff.count_ones() != 1 {
            return Err(Error::InvalidInput("path steps must flip exactly one bit".into()));
        }
        let q = n - 1 - diff.trailing_zeros() as usize;
        ops.push(LocalOperator::new(vec![q], pauli_x())?);
    }
    if ops.len() > m {
        return Err(Error::InvalidInput("path longer than m".into()));
    }
    while ops.len() < m {
        ops.push(LocalOperator::identity(vec![0])?);
    }
    Ok(ops)
}

/// `S`: satisfying assignments reachable from `x`; `T`: every other
/// satisfying assignment.
pub fn stconn_partition(phi: &Cnf3, x: usize) -> Result<(Subspace, Subspace)> {
    let n = phi.num_vars();
    guard(n, DENSE_QUBIT_LIMIT)?;
    if !phi.satisfied_by(x) {
        return Err(Error::Unsatisfying);
    }
    let mut reached = vec![false; 1 << n];
    reached[x] = true;
    let mut queue = VecDeque::from([x]);
    while let Some(cur) = queue.pop_front() {
        for b in 0..n {
            let next = cur ^ (1 << b);
            if !reached[next] && phi.satisfied_by(next) {
                reached[next] = true;
                queue.push_back(next);
            }
        }
    }
    let s: Vec<usize> = (0..1 << n).filter(|&z| reached[z]).collect();
    let t: Vec<usize> = (0..1 << n).filter(|&z| !reached[z] && phi.satisfied_by(z)).collect();
    Ok((Subspace::from_basis_indices(n, &s)?, Subspace::from_basis_indices(n, &t)?))
}

fn basis_index(s: &StateVector) -> Result<usize> {
    let i = s.dominant_basis_index();
    if (s.amps()[i].norm() - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidInput("subspace basis must be computational basis states".into()));
    }
    Ok(i)
}

/// Diagonal scan of `H ⪰ I − Π_S − Π_T` with matching kernels: every basis
/// state inside `S ⊕ T` has zero energy and every state outside has energy
/// at least one.
pub fn h_dominates_p_check(h: &LocalHamiltonian, s: &Subspace, t: &Subspace) -> Result<bool> {
    let n = h.n();
    guard(n, DENSE_QUBIT_LIMIT)?;
    if s.n() != n || t.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: s.n() });
    }
    let diag = h.diagonal()?;
    let mut inside = vec![false; 1 << n];
    for b in s.basis().iter().chain(t.basis()) {
        inside[basis_index(b)?] = true;
    }
    Ok(diag.iter().zip(&inside).all(|(&e, &ins)| {
        if ins {
            e.abs() <= 1e-12
        } else {
            e >= 1.0 - 1e-12
        }
    }))
}
