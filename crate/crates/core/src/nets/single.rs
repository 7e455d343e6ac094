use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use super::round_half_down;
use crate::qcore::linalg::{self, CMatrix, C64};
use crate::qcore::Tolerances;
use crate::{Error, Result};

const TAU: f64 = 2.0 * PI;
const ZERO_MAGNITUDE: f64 = 1e-14;

/// Grid coordinates `(x, φ₁, φ₂, φ₃)` of a single-qubit net element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NetIndex {
    pub x: u64,
    pub phi1: u64,
    pub phi2: u64,
    pub phi3: u64,
}

impl NetIndex {
    pub const fn new(x: u64, phi1: u64, phi2: u64, phi3: u64) -> Self {
        NetIndex { x, phi1, phi2, phi3 }
    }
}

/// The unitary
/// `[[√x e^{iφ₁}, √(1−x) e^{iφ₂}], [√(1−x) e^{iφ₃}, √x e^{iφ₄}]]`
/// with `φ₄ = −φ₁ + φ₂ + φ₃ + π`.
pub fn parametrized_unitary(x: f64, phi1: f64, phi2: f64, phi3: f64) -> CMatrix {
    let phi4 = -phi1 + phi2 + phi3 + PI;
    let (p, q) = (x.sqrt(), (1.0 - x).sqrt());
    let e = |r: f64, t: f64| C64::from_polar(r, t);
    CMatrix::from_row_slice(2, 2, &[e(p, phi1), e(q, phi2), e(q, phi3), e(p, phi4)])
}

/// ε-net over `U(2)` in spectral norm, on a grid of pitch at most `ε²/64`
/// in each of the four parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleQubitNet {
    eps: f64,
    delta: f64,
    x_steps: u64,
    phase_steps: u64,
}

fn even_ceil(v: f64) -> u64 {
    let c = v.ceil() as u64;
    c + (c & 1)
}

impl SingleQubitNet {
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(Error::InvalidParameter("net eps must lie in (0, 1]".into()));
        }
        let delta = eps * eps / 64.0;
        Ok(SingleQubitNet {
            eps,
            delta,
            x_steps: even_ceil(1.0 / delta),
            phase_steps: even_ceil(TAU / delta),
        })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Number of intervals on `[0, 1]`; the `x` coordinate ranges over `0..=x_steps`.
    pub fn x_steps(&self) -> u64 {
        self.x_steps
    }

    /// Number of grid points on the circle; phase coordinates range over `0..phase_steps`.
    pub fn phase_steps(&self) -> u64 {
        self.phase_steps
    }

    /// Number of distinct indices.
    pub fn cardinality(&self) -> f64 {
        (self.x_steps + 1) as f64 * (self.phase_steps as f64).powi(3)
    }

    pub fn contains(&self, idx: NetIndex) -> bool {
        idx.x <= self.x_steps
            && idx.phi1 < self.phase_steps
            && idx.phi2 < self.phase_steps
            && idx.phi3 < self.phase_steps
    }

    pub fn x_value(&self, i: u64) -> f64 {
        i as f64 / self.x_steps as f64
    }

    pub fn phase_value(&self, j: u64) -> f64 {
        TAU * j as f64 / self.phase_steps as f64
    }

    pub fn element(&self, idx: NetIndex) -> Result<CMatrix> {
        if !self.contains(idx) {
            return Err(Error::IndexOutOfRange);
        }
        Ok(parametrized_unitary(
            self.x_value(idx.x),
            self.phase_value(idx.phi1),
            self.phase_value(idx.phi2),
            self.phase_value(idx.phi3),
        ))
    }

    /// Representative index for the element at `idx`: coordinates that do not
    /// affect the matrix are zeroed.
    pub fn canonical(&self, idx: NetIndex) -> NetIndex {
        let mut c = idx;
        if c.x == 0 {
            c.phi1 = 0;
        }
        if c.x == self.x_steps {
            c.phi3 = (c.phi2 + c.phi3) % self.phase_steps;
            c.phi2 = 0;
        }
        c
    }

    fn snap_phase(&self, phi: f64) -> u64 {
        let t = num_traits::Euclid::rem_euclid(&phi, &TAU) / TAU * self.phase_steps as f64;
        round_half_down(t).rem_euclid(self.phase_steps as i64) as u64
    }

    /// Canonical index of a grid element within `ε` of `u`.
    pub fn snap(&self, u: &CMatrix) -> Result<NetIndex> {
        if u.nrows() != 2 || u.ncols() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: u.nrows(),
            });
        }
        let dev = linalg::unitarity_deviation(u);
        if dev > Tolerances::DEFAULT.unitarity {
            return Err(Error::NotUnitary(dev));
        }
        let (x, phi1, phi2, phi3) = extract_parameters(u);
        let i = round_half_down(x * self.x_steps as f64).clamp(0, self.x_steps as i64) as u64;
        Ok(self.canonical(NetIndex {
            x: i,
            phi1: self.snap_phase(phi1),
            phi2: self.snap_phase(phi2),
            phi3: self.snap_phase(phi3),
        }))
    }

    /// `element(snap(u))`.
    pub fn round(&self, u: &CMatrix) -> Result<CMatrix> {
        self.element(self.snap(u)?)
    }
}

/// Inverts [`parametrized_unitary`]. Phases of vanishing entries default to 0,
/// except that at `x = 1` the sum `φ₂ + φ₃` is kept so that the diagonal
/// phases remain reachable.
fn extract_parameters(u: &CMatrix) -> (f64, f64, f64, f64) {
    let (a, b, c, d) = (u[(0, 0)], u[(0, 1)], u[(1, 0)], u[(1, 1)]);
    let (na, nb) = (a.norm_sqr(), b.norm_sqr());
    let x = na / (na + nb);
    if a.norm() < ZERO_MAGNITUDE {
        return (x, 0.0, b.arg(), c.arg());
    }
    let phi1 = a.arg();
    let sum = d.arg() + phi1 - PI;
    if b.norm() >= c.norm() {
        let phi2 = if b.norm() < ZERO_MAGNITUDE { 0.0 } else { b.arg() };
        (x, phi1, phi2, sum - phi2)
    } else {
        let phi3 = c.arg();
        (x, phi1, sum - phi3, phi3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::linalg::{c64, from_real_rows, identity, max_abs_diff, spectral_norm};
    use crate::qcore::random::{haar_unitary, rng};
    use proptest::prelude::*;

    fn dist(a: &CMatrix, b: &CMatrix) -> f64 {
        spectral_norm(&(a - b)).unwrap()
    }

    #[test]
    fn delta_and_grid() {
        let net = SingleQubitNet::new(0.1).unwrap();
        assert_eq!(net.delta(), 0.1 * 0.1 / 64.0);
        assert_eq!(net.x_steps(), 6400);
        assert_eq!(net.phase_steps() % 2, 0);
        assert!(TAU / net.phase_steps() as f64 <= net.delta());
        assert!(SingleQubitNet::new(0.0).is_err());
        assert!(SingleQubitNet::new(1.5).is_err());
    }

    #[test]
    fn x_one_zero_phases_is_z() {
        let net = SingleQubitNet::new(0.5).unwrap();
        let m = net.element(NetIndex::new(net.x_steps(), 0, 0, 0)).unwrap();
        assert!(max_abs_diff(&m, &from_real_rows(2, &[1.0, 0.0, 0.0, -1.0]).unwrap()) < 1e-15);
    }

    #[test]
    fn x_zero_is_antidiagonal() {
        let net = SingleQubitNet::new(0.5).unwrap();
        let m = net.element(NetIndex::new(0, 0, 0, 0)).unwrap();
        assert!(max_abs_diff(&m, &from_real_rows(2, &[0.0, 1.0, 1.0, 0.0]).unwrap()) < 1e-15);
    }

    #[test]
    fn identity_and_paulis_are_exact() {
        let net = SingleQubitNet::new(0.1).unwrap();
        let half = net.phase_steps() / 2;
        let i = net.element(NetIndex::new(net.x_steps(), 0, 0, half)).unwrap();
        assert!(max_abs_diff(&i, &identity(2)) < 1e-12);
        let x = from_real_rows(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        assert!(dist(&net.round(&x).unwrap(), &x) < 1e-12);
        assert!(dist(&net.round(&identity(2)).unwrap(), &identity(2)) < 1e-12);
    }

    #[test]
    fn out_of_range_index() {
        let net = SingleQubitNet::new(0.5).unwrap();
        let bad = NetIndex::new(net.x_steps() + 1, 0, 0, 0);
        assert_eq!(net.element(bad), Err(Error::IndexOutOfRange));
    }

    #[test]
    fn non_unitary_snap_rejected() {
        let net = SingleQubitNet::new(0.5).unwrap();
        let m = identity(2) * c64(1.1, 0.0);
        assert!(matches!(net.snap(&m), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn haar_coverage_sample() {
        let mut r = rng(3);
        for eps in [0.5, 0.1] {
            let net = SingleQubitNet::new(eps).unwrap();
            for _ in 0..500 {
                let u = haar_unitary(2, &mut r);
                let idx = net.snap(&u).unwrap();
                let v = net.element(idx).unwrap();
                assert!(dist(&u, &v) <= eps);
                assert_eq!(net.snap(&v).unwrap(), idx);
            }
        }
    }

    #[test]
    fn parametrization_reconstructs_haar() {
        let mut r = rng(11);
        for _ in 0..200 {
            let u = haar_unitary(2, &mut r);
            let (x, p1, p2, p3) = extract_parameters(&u);
            assert!(max_abs_diff(&parametrized_unitary(x, p1, p2, p3), &u) < 1e-9);
        }
    }

    proptest! {
        #[test]
        fn element_is_unitary_and_round_trips(
            xf in 0.0f64..=1.0, a in 0.0f64..1.0, b in 0.0f64..1.0, c in 0.0f64..1.0,
        ) {
            let net = SingleQubitNet::new(0.2).unwrap();
            let ph = |f: f64| ((f * net.phase_steps() as f64) as u64).min(net.phase_steps() - 1);
            let idx = NetIndex::new((xf * net.x_steps() as f64) as u64, ph(a), ph(b), ph(c));
            let m = net.element(idx).unwrap();
            prop_assert!(linalg::unitarity_deviation(&m) < 1e-12);
            prop_assert_eq!(net.snap(&m).unwrap(), net.canonical(idx));
            prop_assert!(max_abs_diff(&net.element(net.canonical(idx)).unwrap(), &m) < 1e-12);
        }

        #[test]
        fn nearby_parameters_are_close(
            x in 0.0f64..=1.0, p1 in 0.0f64..6.28, p2 in 0.0f64..6.28, p3 in 0.0f64..6.28,
            dx in -1.0f64..1.0, d1 in -1.0f64..1.0, d2 in -1.0f64..1.0, d3 in -1.0f64..1.0,
        ) {
            let delta = 1e-3;
            let x2 = (x + dx * delta).clamp(0.0, 1.0);
            let u = parametrized_unitary(x, p1, p2, p3);
            let v = parametrized_unitary(x2, p1 + d1 * delta, p2 + d2 * delta, p3 + d3 * delta);
            let d = &u - &v;
            for z in d.iter() {
                prop_assert!(z.norm() <= 4.0 * delta.sqrt());
            }
            prop_assert!(dist(&u, &v) <= 8.0 * delta.sqrt());
        }
    }
}
