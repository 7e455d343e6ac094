//! Matrix helpers on top of `nalgebra`'s dense complex matrices.

use alloc::vec::Vec;
use nalgebra::DMatrix;
use num_complex::Complex;
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

/// Builds a square matrix from row-major entries.
pub fn from_rows(dim: usize, entries: &[C64]) -> Result<CMatrix> {
    if entries.len() != dim * dim {
        return Err(Error::DimensionMismatch {
            expected: dim * dim,
            got: entries.len(),
        });
    }
    Ok(CMatrix::from_row_slice(dim, dim, entries))
}

pub fn from_real_rows(dim: usize, entries: &[f64]) -> Result<CMatrix> {
    let entries: Vec<C64> = entries.iter().map(|&r| c64(r, 0.0)).collect();
    from_rows(dim, &entries)
}

pub fn diagonal(entries: &[f64]) -> CMatrix {
    let mut m = CMatrix::zeros(entries.len(), entries.len());
    for (i, &e) in entries.iter().enumerate() {
        m[(i, i)] = c64(e, 0.0);
    }
    m
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// `|v⟩⟨w|`.
pub fn outer(v: &[C64], w: &[C64]) -> CMatrix {
    CMatrix::from_fn(v.len(), w.len(), |i, j| v[i] * w[j].conj())
}

/// `⟨v|w⟩`, conjugate-linear in the first argument.
pub fn inner(v: &[C64], w: &[C64]) -> C64 {
    v.iter().zip(w).map(|(a, b)| a.conj() * b).sum()
}

pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vec_distance(v: &[C64], w: &[C64]) -> f64 {
    v.iter()
        .zip(w)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

pub fn mat_vec(m: &CMatrix, v: &[C64]) -> Vec<C64> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)] * v[j]).sum())
        .collect()
}

fn ensure_square(m: &CMatrix) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(())
}

/// Singular values in descending order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Schatten-1 norm `tr √(A†A)`.
pub fn trace_norm(m: &CMatrix) -> Result<f64> {
    ensure_square(m)?;
    Ok(singular_values(m).iter().sum())
}

/// Largest singular value.
pub fn spectral_norm(m: &CMatrix) -> Result<f64> {
    ensure_square(m)?;
    Ok(singular_values(m).first().copied().unwrap_or(0.0))
}

/// `max_ij |A_ij|`.
pub fn max_entry_norm(m: &CMatrix) -> Result<f64> {
    ensure_square(m)?;
    Ok(m.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

pub fn frobenius_norm(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `‖AA† − I‖_max`; infinite for non-square input.
pub fn unitarity_deviation(m: &CMatrix) -> f64 {
    if m.nrows() != m.ncols() {
        return f64::INFINITY;
    }
    let p = m * m.adjoint() - identity(m.nrows());
    p.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `‖A − A†‖_max`; infinite for non-square input.
pub fn hermiticity_deviation(m: &CMatrix) -> f64 {
    if m.nrows() != m.ncols() {
        return f64::INFINITY;
    }
    (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * c64(0.5, 0.0)
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    ensure_square(m)?;
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    let mut ev: Vec<f64> = hermitian_part(m).symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    Ok(ev)
}

/// Eigenpairs `(λ, |e⟩)` of a Hermitian matrix, ascending in `λ`.
pub fn hermitian_eigenpairs(m: &CMatrix) -> Result<Vec<(f64, Vec<C64>)>> {
    ensure_square(m)?;
    let eig = hermitian_part(m).symmetric_eigen();
    let mut pairs: Vec<(f64, Vec<C64>)> = (0..m.nrows())
        .map(|i| {
            (
                eig.eigenvalues[i],
                eig.eigenvectors.column(i).iter().copied().collect(),
            )
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(pairs)
}

/// `f(A)` for Hermitian `A` through its spectral decomposition.
pub fn hermitian_function(m: &CMatrix, f: impl Fn(f64) -> f64) -> Result<CMatrix> {
    ensure_square(m)?;
    let eig = hermitian_part(m).symmetric_eigen();
    let vals: Vec<C64> = eig.eigenvalues.iter().map(|&l| c64(f(l), 0.0)).collect();
    let v = &eig.eigenvectors;
    let d = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vals));
    Ok(v * d * v.adjoint())
}

/// Principal square root of a positive semidefinite matrix.
pub fn psd_sqrt(m: &CMatrix) -> Result<CMatrix> {
    hermitian_function(m, |l| l.max(0.0).sqrt())
}

/// Principal square root of a 2×2 matrix with no eigenvalues on the
/// non-positive real axis issues (any unitary qualifies).
pub fn sqrt_2x2(m: &CMatrix) -> Result<CMatrix> {
    if m.nrows() != 2 || m.ncols() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: m.nrows(),
        });
    }
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let tr = m[(0, 0)] + m[(1, 1)];
    for sign in [1.0, -1.0] {
        let s = det.sqrt() * sign;
        let t = (tr + s * 2.0).sqrt();
        if t.norm() > 1e-9 {
            return Ok((m + identity(2) * s) / t);
        }
    }
    Err(Error::InvalidInput("matrix has no principal square root".into()))
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
