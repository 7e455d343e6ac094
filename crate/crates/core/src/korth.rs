//! k-orthogonality of states and subspaces.
//!
//! Two states are k-orthogonal when no unitary on at most `k` qubits creates
//! overlap between them. Equivalently every partial trace `tr_{[n]∖S}|v⟩⟨w|`
//! with `|S| ≤ k` vanishes, or every product of reduced densities on the
//! complement of such an `S` vanishes.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::seq::index::sample;
use rand::Rng;

use crate::qcore::linalg::{self, c64, CMatrix, C64};
use crate::qcore::random::{haar_local, haar_unitary, rng};
use crate::qcore::{apply_local, partial_outer, reduced_density, LocalOperator, StateVector};
use crate::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Span of an orthonormal list of states.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    n: usize,
    basis: Vec<StateVector>,
}

impl Subspace {
    pub fn new(n: usize, basis: Vec<StateVector>) -> Result<Self> {
        for (i, a) in basis.iter().enumerate() {
            if a.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: a.n(),
                });
            }
            for b in &basis[..i] {
                let ov = a.inner(b)?.norm();
                if ov > 1e-10 {
                    return Err(Error::NonOrthogonal(ov));
                }
            }
        }
        Ok(Subspace { n, basis })
    }

    /// Span of computational basis states.
    pub fn from_basis_indices(n: usize, indices: &[usize]) -> Result<Self> {
        let basis = indices
            .iter()
            .map(|&i| StateVector::basis(n, i))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, basis)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[StateVector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// All subsets of `0..n` with at most `k` elements, by size then lexicographically.
pub fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..k.min(n) {
        let mut next = Vec::new();
        for s in &layer {
            let start = s.last().map_or(0, |&l| l + 1);
            for q in start..n {
                let mut t = s.clone();
                t.push(q);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn complement(n: usize, s: &[usize]) -> Vec<usize> {
    (0..n).filter(|q| !s.contains(q)).collect()
}

fn check_pair(v: &StateVector, w: &StateVector, k: usize) -> Result<()> {
    if v.n() != w.n() {
        return Err(Error::DimensionMismatch {
            expected: v.n(),
            got: w.n(),
        });
    }
    if k == 0 || k > v.n() {
        return Err(Error::InvalidParameter("k must satisfy 1 ≤ k ≤ n".into()));
    }
    Ok(())
}

/// Partial-trace test: `‖tr_{[n]∖S}|v⟩⟨w|‖_tr ≤ tol` for every `|S| ≤ k`.
pub fn k_orth_states(v: &StateVector, w: &StateVector, k: usize, tol: f64) -> Result<bool> {
    check_pair(v, w, k)?;
    for keep in subsets_up_to(v.n(), k) {
        if linalg::trace_norm(&partial_outer(v, w, &keep)?)? > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Density test: `‖(tr_S|v⟩⟨v|)(tr_S|w⟩⟨w|)‖_tr ≤ tol` for every `|S| ≤ k`.
pub fn k_orth_density(v: &StateVector, w: &StateVector, k: usize, tol: f64) -> Result<bool> {
    check_pair(v, w, k)?;
    for traced in subsets_up_to(v.n(), k) {
        let keep = complement(v.n(), &traced);
        let rho = reduced_density(v, &keep)?;
        let sigma = reduced_density(w, &keep)?;
        if linalg::trace_norm(&(rho * sigma))? > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every basis pair of `s × t` passes [`k_orth_states`].
pub fn k_orth_subspaces(s: &Subspace, t: &Subspace, k: usize, tol: f64) -> Result<bool> {
    if s.n() != t.n() {
        return Err(Error::DimensionMismatch {
            expected: s.n(),
            got: t.n(),
        });
    }
    for a in s.basis() {
        for b in t.basis() {
            if !k_orth_states(a, b, k, tol)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Largest `|⟨w|U|v⟩|` over `trials` Haar unitaries on random `k`-subsets.
pub fn k_orth_bruteforce(v: &StateVector, w: &StateVector, k: usize, trials: usize, seed: u64) -> Result<f64> {
    check_pair(v, w, k)?;
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    let mut r = rng(seed);
    let mut best: f64 = 0.0;
    for _ in 0..trials {
        let qubits = sample(&mut r, v.n(), k).into_vec();
        let op = haar_local(qubits, &mut r);
        best = best.max(overlap(v, w, &op)?);
    }
    Ok(best)
}

fn overlap(v: &StateVector, w: &StateVector, op: &LocalOperator) -> Result<f64> {
    Ok(w.inner(&apply_local(v, op)?)?.norm())
}

fn pauli(i: usize) -> CMatrix {
    let o = c64(0.0, 0.0);
    let l = c64(1.0, 0.0);
    let j = c64(0.0, 1.0);
    let e: [C64; 4] = match i {
        0 => [l, o, o, l],
        1 => [o, l, l, o],
        2 => [o, -j, j, o],
        _ => [l, o, o, -l],
    };
    CMatrix::from_row_slice(2, 2, &e)
}

/// Unitary `U` on `keep` maximizing `|tr(U A)|` for `A = tr_{rest}|v⟩⟨w|`;
/// with `A = WΣZ†` it is `ZW†`.
pub fn svd_witness(v: &StateVector, w: &StateVector, keep: &[usize]) -> Result<LocalOperator> {
    let a = partial_outer(v, w, keep)?;
    let svd = a.svd(true, true);
    let (u, vt) = match (svd.u, svd.v_t) {
        (Some(u), Some(vt)) => (u, vt),
        _ => return Err(Error::InvalidInput("singular value decomposition failed".into())),
    };
    LocalOperator::new(keep.to_vec(), vt.adjoint() * u.adjoint())
}

/// Largest overlap over deterministic `≤k`-local probes: every Pauli string
/// on every subset of at most `k` qubits, plus the SVD witness per subset.
pub fn k_orth_probe(v: &StateVector, w: &StateVector, k: usize) -> Result<f64> {
    check_pair(v, w, k)?;
    let mut best: f64 = 0.0;
    for keep in subsets_up_to(v.n(), k) {
        if keep.is_empty() {
            best = best.max(w.inner(v)?.norm());
            continue;
        }
        for code in 0..1usize << (2 * keep.len()) {
            let mut m = CMatrix::identity(1, 1);
            for t in 0..keep.len() {
                m = m.kronecker(&pauli((code >> (2 * t)) & 3));
            }
            best = best.max(overlap(v, w, &LocalOperator::new(keep.clone(), m)?)?);
        }
        best = best.max(overlap(v, w, &svd_witness(v, w, &keep)?)?);
    }
    Ok(best)
}

/// Random pair that is k-orthogonal by construction: superpositions over two
/// sets of basis strings at Hamming distance greater than `k`, both rotated by
/// one random product unitary.
pub fn random_k_orthogonal_pair<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> (StateVector, StateVector) {
    assert!(k < n, "k-orthogonal pairs need k < n");
    let dim = 1usize << n;
    let far = |a: usize, b: usize| (a ^ b).count_ones() as usize > k;
    loop {
        let a0 = rng.random_range(0..dim);
        let b0 = rng.random_range(0..dim);
        if !far(a0, b0) {
            continue;
        }
        let mut left = vec![a0];
        let mut right = vec![b0];
        for _ in 0..rng.random_range(0..3) {
            let c = rng.random_range(0..dim);
            let to_left = rng.random::<bool>();
            let (mine, other) = if to_left { (&mut left, &right) } else { (&mut right, &left) };
            if !mine.contains(&c) && other.iter().all(|&o| far(c, o)) {
                mine.push(c);
            }
        }
        let build = |set: &[usize], rng: &mut R| {
            let mut amps = vec![linalg::ZERO; dim];
            for &i in set {
                amps[i] = crate::qcore::random::gaussian_complex(rng);
            }
            StateVector::normalized(n, amps)
        };
        let (Ok(mut v), Ok(mut w)) = (build(&left, rng), build(&right, rng)) else {
            continue;
        };
        for q in 0..n {
            let u = LocalOperator::new(vec![q], haar_unitary(2, rng)).expect("single qubit");
            v = apply_local(&v, &u).expect("unitary");
            w = apply_local(&w, &u).expect("unitary");
        }
        return (v, w);
    }
}
