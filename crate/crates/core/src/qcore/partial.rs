use alloc::vec::Vec;

use super::linalg::{self, CMatrix};
use super::operator::{check_qubits, local_offsets, rest_indices};
use super::state::StateVector;
use crate::{Error, Result};

/// `tr_{[n]∖keep} |v⟩⟨w|` as a `2^|keep|` square matrix indexed in `keep` order.
pub fn partial_outer(v: &StateVector, w: &StateVector, keep: &[usize]) -> Result<CMatrix> {
    if v.n() != w.n() {
        return Err(Error::DimensionMismatch {
            expected: v.n(),
            got: w.n(),
        });
    }
    let n = v.n();
    check_qubits(keep, n)?;
    let offsets = local_offsets(n, keep);
    let dim = offsets.len();
    let (a, b) = (v.amps(), w.amps());
    let rest: Vec<usize> = rest_indices(n, keep).collect();
    Ok(CMatrix::from_fn(dim, dim, |r, c| {
        rest.iter()
            .map(|&base| a[base + offsets[r]] * b[base + offsets[c]].conj())
            .sum()
    }))
}

/// Reduced density matrix of `v` on `keep`.
pub fn reduced_density(v: &StateVector, keep: &[usize]) -> Result<CMatrix> {
    partial_outer(v, v, keep)
}

/// `‖ρ − √Λ ρ √Λ‖_tr` for `0 ⪯ Λ ⪯ I`.
pub fn gentle_measurement_residual(rho: &CMatrix, lambda: &CMatrix) -> Result<f64> {
    if rho.shape() != lambda.shape() {
        return Err(Error::DimensionMismatch {
            expected: rho.nrows(),
            got: lambda.nrows(),
        });
    }
    let ev = linalg::hermitian_eigenvalues(lambda)?;
    for &l in &ev {
        if !(-1e-10..=1.0 + 1e-10).contains(&l) {
            return Err(Error::InvalidMeasurement(l));
        }
    }
    let s = linalg::psd_sqrt(lambda)?;
    linalg::trace_norm(&(rho - &s * rho * &s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::linalg::{c64, diagonal, identity, max_abs_diff, outer};

    #[test]
    fn product_state_marginal() {
        let v = StateVector::from_bits("00").unwrap();
        let m = partial_outer(&v, &v, &[0]).unwrap();
        assert!(max_abs_diff(&m, &diagonal(&[1.0, 0.0])) < 1e-15);
    }

    #[test]
    fn ghz_pair_vanishes_on_two() {
        let v = StateVector::from_bits("000").unwrap();
        let w = StateVector::from_bits("111").unwrap();
        let m = partial_outer(&v, &w, &[0, 1]).unwrap();
        assert_eq!(linalg::frobenius_norm(&m), 0.0);
    }

    #[test]
    fn off_diagonal_marginal() {
        let v = StateVector::from_bits("00").unwrap();
        let w = StateVector::from_bits("10").unwrap();
        let m = partial_outer(&v, &w, &[0]).unwrap();
        let mut expect = CMatrix::zeros(2, 2);
        expect[(0, 1)] = c64(1.0, 0.0);
        assert!(max_abs_diff(&m, &expect) < 1e-15);
    }

    #[test]
    fn empty_keep_is_inner_product() {
        let r = 1.0 / 2f64.sqrt();
        let v = StateVector::new(1, alloc::vec![c64(r, 0.0), c64(0.0, r)]).unwrap();
        let w = StateVector::from_bits("1").unwrap();
        let m = partial_outer(&v, &w, &[]).unwrap();
        assert!((m[(0, 0)] - w.inner(&v).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn gentle_measurement_cases() {
        let rho0 = diagonal(&[1.0, 0.0]);
        assert_eq!(gentle_measurement_residual(&rho0, &identity(2)).unwrap(), 0.0);
        assert!(gentle_measurement_residual(&rho0, &rho0).unwrap() < 1e-12);
        let r = 1.0 / 2f64.sqrt();
        let plus = [c64(r, 0.0), c64(r, 0.0)];
        let rho = outer(&plus, &plus);
        let res = gentle_measurement_residual(&rho, &rho0).unwrap();
        // ρ − √Λρ√Λ = [[0, 1/2], [1/2, 1/2]], eigenvalues (1 ± √5)/4.
        assert!((res - 5f64.sqrt() / 2.0).abs() < 1e-12);
        assert!(res <= 2.0 * 0.5f64.sqrt() + 1e-12);
        assert!(gentle_measurement_residual(&rho, &diagonal(&[1.5, 0.0])).is_err());
    }
}
