//! Seeded samplers for states, unitaries, and measurement operators.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::linalg::{self, c64, CMatrix, C64};
use super::operator::LocalOperator;
use super::state::StateVector;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c64(re, im)
}

pub fn gaussian_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<C64> {
    (0..dim).map(|_| gaussian_complex(rng)).collect()
}

pub fn ginibre<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(dim, dim, |_, _| gaussian_complex(rng))
}

/// Haar-distributed unitary: Gram–Schmidt on the columns of a Ginibre matrix.
pub fn haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    loop {
        let mut m = ginibre(dim, rng);
        if orthonormalize_columns(&mut m) {
            return m;
        }
    }
}

/// Modified Gram–Schmidt in place; false if the columns were degenerate.
fn orthonormalize_columns(m: &mut CMatrix) -> bool {
    for j in 0..m.ncols() {
        for i in 0..j {
            let proj: C64 = (0..m.nrows()).map(|r| m[(r, i)].conj() * m[(r, j)]).sum();
            for r in 0..m.nrows() {
                let t = m[(r, i)] * proj;
                m[(r, j)] -= t;
            }
        }
        let norm = (0..m.nrows()).map(|r| m[(r, j)].norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return false;
        }
        for r in 0..m.nrows() {
            m[(r, j)] /= norm;
        }
    }
    true
}

pub fn haar_local<R: Rng + ?Sized>(qubits: Vec<usize>, rng: &mut R) -> LocalOperator {
    let u = haar_unitary(1 << qubits.len(), rng);
    LocalOperator::new(qubits, u).expect("distinct qubits supplied by caller")
}

/// Haar-random pure state on `n` qubits.
pub fn random_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> StateVector {
    loop {
        if let Ok(s) = StateVector::normalized(n, gaussian_vector(1 << n, rng)) {
            return s;
        }
    }
}

/// Random product state `⊗_q |s_q⟩`.
pub fn random_product_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> StateVector {
    let mut s = random_state(0, rng);
    for _ in 0..n {
        s = s.tensor(&random_state(1, rng));
    }
    s
}

/// Density matrix `GG†/tr(GG†)` of rank up to `dim`.
pub fn random_density<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let g = ginibre(dim, rng);
    let rho = &g * g.adjoint();
    let tr: f64 = (0..dim).map(|i| rho[(i, i)].re).sum();
    rho / c64(tr, 0.0)
}

/// Measurement operator `U diag(λ) U†` with `λ_i` uniform in `[0, 1]`.
pub fn random_measurement<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let u = haar_unitary(dim, rng);
    let vals: Vec<f64> = (0..dim).map(|_| rng.random::<f64>()).collect();
    &u * linalg::diagonal(&vals) * u.adjoint()
}
