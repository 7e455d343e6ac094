use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::round_half_down;
use crate::qcore::linalg::{self, c64, CMatrix, C64};
use crate::qcore::Tolerances;
use crate::{Error, Result};

/// Entry-grid coordinates of a pseudo-net element, row-major, each entry a
/// pair of lattice integers `(a, b)` standing for `δ(a + ib)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PseudoIndex {
    pub coords: Vec<[i64; 2]>,
}

/// Result of the checking algorithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOutcome {
    pub accepted: bool,
    /// `‖MM† − I‖`.
    pub deviation: f64,
    pub threshold: f64,
}

/// ε-pseudo-net over `d × d` operators. Every entry lives on a square lattice
/// of pitch `δ = δ′/√d` inside the closed unit disk, `δ′ = ε/(6d(d+ε))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PseudoNet {
    d: usize,
    eps: f64,
    delta_prime: f64,
    delta: f64,
    half_width: i64,
}

impl PseudoNet {
    pub fn new(d: usize, eps: f64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter("pseudo-net dimension must be at least 2".into()));
        }
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::InvalidParameter("pseudo-net eps must lie in (0, 1)".into()));
        }
        let df = d as f64;
        let delta_prime = eps / (6.0 * df * (df + eps));
        let delta = delta_prime / df.sqrt();
        // Entries are at most 1, so a pitch below machine epsilon cannot
        // separate lattice points.
        if delta < f64::EPSILON {
            return Err(Error::InvalidParameter(
                "pseudo-net eps too small for f64 lattice coordinates".into(),
            ));
        }
        Ok(PseudoNet {
            d,
            eps,
            delta_prime,
            delta,
            half_width: (1.0 / delta).ceil() as i64,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn delta_prime(&self) -> f64 {
        self.delta_prime
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Acceptance threshold `ε/(2(d+ε))` on `‖B − I‖`.
    pub fn threshold(&self) -> f64 {
        self.eps / (2.0 * (self.d as f64 + self.eps))
    }

    /// Lattice points per entry before clipping to the disk.
    pub fn entry_points(&self) -> u64 {
        let side = (2 * self.half_width + 1) as u64;
        side * side
    }

    /// `d²` times the per-entry lattice size: the `O(d⁷/ε²)` count of
    /// entry-level choices.
    pub fn entry_choice_count(&self) -> f64 {
        (self.d * self.d) as f64 * self.entry_points() as f64
    }

    /// `log₁₀` of the number of distinct index tuples, `entry_points^(d²)`.
    pub fn log10_matrix_count(&self) -> f64 {
        (self.d * self.d) as f64 * (self.entry_points() as f64).log10()
    }

    fn entry_value(&self, a: i64, b: i64) -> C64 {
        let z = c64(a as f64 * self.delta, b as f64 * self.delta);
        let r = z.norm();
        if r > 1.0 {
            z / r
        } else {
            z
        }
    }

    pub fn element(&self, idx: &PseudoIndex) -> Result<CMatrix> {
        if idx.coords.len() != self.d * self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d * self.d,
                got: idx.coords.len(),
            });
        }
        let k = self.half_width;
        if idx.coords.iter().any(|[a, b]| a.abs() > k || b.abs() > k) {
            return Err(Error::IndexOutOfRange);
        }
        let entries: Vec<C64> = idx.coords.iter().map(|&[a, b]| self.entry_value(a, b)).collect();
        Ok(CMatrix::from_row_slice(self.d, self.d, &entries))
    }

    fn ensure_dim(&self, m: &CMatrix) -> Result<()> {
        if m.nrows() != self.d || m.ncols() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: m.nrows(),
            });
        }
        Ok(())
    }

    /// Index of the entrywise-nearest net element of a unitary.
    pub fn snap_index(&self, u: &CMatrix) -> Result<PseudoIndex> {
        self.ensure_dim(u)?;
        let dev = linalg::unitarity_deviation(u);
        if dev > Tolerances::DEFAULT.unitarity {
            return Err(Error::NotUnitary(dev));
        }
        let k = self.half_width;
        let mut coords = Vec::with_capacity(self.d * self.d);
        for r in 0..self.d {
            for c in 0..self.d {
                let z = u[(r, c)];
                coords.push([
                    round_half_down(z.re / self.delta).clamp(-k, k),
                    round_half_down(z.im / self.delta).clamp(-k, k),
                ]);
            }
        }
        Ok(PseudoIndex { coords })
    }

    pub fn snap(&self, u: &CMatrix) -> Result<CMatrix> {
        self.element(&self.snap_index(u)?)
    }

    /// Checking algorithm: accept iff `‖MM† − I‖ ≤ ε/(2(d+ε))`.
    pub fn check(&self, m: &CMatrix) -> Result<CheckOutcome> {
        self.ensure_dim(m)?;
        let b = m * m.adjoint();
        let deviation = linalg::spectral_norm(&(b - linalg::identity(self.d)))?;
        let threshold = self.threshold();
        Ok(CheckOutcome {
            accepted: deviation <= threshold,
            deviation,
            threshold,
        })
    }

    /// Rounding algorithm: `B^{-1/2} M`, refused unless the check accepts.
    pub fn round(&self, m: &CMatrix) -> Result<CMatrix> {
        let outcome = self.check(m)?;
        if !outcome.accepted {
            return Err(Error::CheckRejected {
                deviation: outcome.deviation,
                threshold: outcome.threshold,
            });
        }
        let b = m * m.adjoint();
        let inv_sqrt = linalg::hermitian_function(&b, |l| 1.0 / l.sqrt())?;
        Ok(inv_sqrt * m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::linalg::{identity, max_abs_diff, spectral_norm};
    use crate::qcore::random::{haar_unitary, rng};

    #[test]
    fn parameters_and_threshold() {
        let net = PseudoNet::new(4, 0.1).unwrap();
        assert!((net.threshold() - 0.1 / 8.2).abs() < 1e-15);
        assert!((net.threshold() - 0.0121951).abs() < 1e-7);
        assert_eq!(net.delta_prime(), 0.1 / (24.0 * 4.1));
        assert_eq!(net.delta(), net.delta_prime() / 2.0);
        assert!(PseudoNet::new(1, 0.1).is_err());
        assert!(PseudoNet::new(4, 1e-20).is_err());
        assert!(PseudoNet::new(4, 1.0).is_err());
    }

    #[test]
    fn identity_accepted_and_fixed() {
        let net = PseudoNet::new(4, 0.1).unwrap();
        let i = identity(4);
        let out = net.check(&i).unwrap();
        assert!(out.accepted);
        assert_eq!(out.deviation, 0.0);
        assert!(max_abs_diff(&net.round(&i).unwrap(), &i) < 1e-14);
        assert!(net.check(&net.snap(&i).unwrap()).unwrap().accepted);
    }

    #[test]
    fn zero_column_rejected() {
        let net = PseudoNet::new(2, 0.5).unwrap();
        let mut m = identity(2);
        m[(1, 1)] = c64(0.0, 0.0);
        let out = net.check(&m).unwrap();
        assert!(!out.accepted);
        assert!((out.deviation - 1.0).abs() < 1e-12);
        assert!(matches!(net.round(&m), Err(Error::CheckRejected { .. })));
        assert!(net.check(&identity(3)).is_err());
    }

    #[test]
    fn scaled_haar_rounds_back() {
        let net = PseudoNet::new(4, 0.1).unwrap();
        let mut r = rng(5);
        for _ in 0..50 {
            let u = haar_unitary(4, &mut r);
            let m = &u * c64(1.001, 0.0);
            let v = net.round(&m).unwrap();
            assert!(linalg::unitarity_deviation(&v) < 1e-10);
            assert!(spectral_norm(&(&v - &m)).unwrap() <= 0.1);
        }
    }

    #[test]
    fn snap_contract() {
        let net = PseudoNet::new(4, 0.1).unwrap();
        let mut r = rng(9);
        for _ in 0..100 {
            let u = haar_unitary(4, &mut r);
            let s = net.snap(&u).unwrap();
            assert!(spectral_norm(&(&u - &s)).unwrap() <= net.delta_prime() * 4.0);
            assert!(net.check(&s).unwrap().accepted);
            let v = net.round(&s).unwrap();
            assert!(spectral_norm(&(&v - &u)).unwrap() <= 2.0 * net.eps());
        }
    }

    #[test]
    fn entries_stay_in_disk() {
        let net = PseudoNet::new(2, 0.5).unwrap();
        let k = net.half_width;
        let m = net
            .element(&PseudoIndex {
                coords: alloc::vec![[k, k], [0, 0], [-k, 0], [0, -k]],
            })
            .unwrap();
        assert!(m.iter().all(|z| z.norm() <= 1.0 + 1e-15));
        assert_eq!(
            net.element(&PseudoIndex {
                coords: alloc::vec![[k + 1, 0], [0, 0], [0, 0], [0, 0]]
            }),
            Err(Error::IndexOutOfRange)
        );
    }

    #[test]
    fn counts() {
        let net = PseudoNet::new(2, 0.5).unwrap();
        let side = (2 * net.half_width + 1) as f64;
        assert_eq!(net.entry_choice_count(), 4.0 * side * side);
        assert!((net.log10_matrix_count() - 4.0 * (side * side).log10()).abs() < 1e-9);
    }
}
