use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::linalg::{self, C64};
use crate::{Error, Result};

const NORM_TOL: f64 = 1e-10;

/// Unit vector of `2^n` complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// Wraps `amps`, which must already have unit norm.
    pub fn new(n: usize, amps: Vec<C64>) -> Result<Self> {
        check_len(n, amps.len())?;
        let norm = linalg::vec_norm(&amps);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(StateVector { n, amps })
    }

    /// Rescales `amps` to unit norm.
    pub fn normalized(n: usize, mut amps: Vec<C64>) -> Result<Self> {
        check_len(n, amps.len())?;
        let norm = linalg::vec_norm(&amps);
        if norm < 1e-300 {
            return Err(Error::NotNormalized(norm));
        }
        for a in &mut amps {
            *a /= norm;
        }
        Ok(StateVector { n, amps })
    }

    /// `|index⟩`, with qubit 0 as the most significant bit.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n;
        if index >= dim {
            return Err(Error::IndexOutOfRange);
        }
        let mut amps = vec![linalg::ZERO; dim];
        amps[index] = linalg::ONE;
        Ok(StateVector { n, amps })
    }

    pub fn zero(n: usize) -> Self {
        Self::basis(n, 0).expect("index 0 is always valid")
    }

    /// Parses a bitstring such as `"101"`, leftmost character = qubit 0.
    pub fn from_bits(bits: &str) -> Result<Self> {
        let index = parse_bits(bits)?;
        Self::basis(bits.len(), index)
    }

    pub fn from_bool_slice(bits: &[bool]) -> Self {
        let index = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        Self::basis(bits.len(), index).expect("index fits by construction")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<C64> {
        self.amps
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn norm(&self) -> f64 {
        linalg::vec_norm(&self.amps)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        self.same_n(other)?;
        Ok(linalg::inner(&self.amps, &other.amps))
    }

    /// Euclidean distance `‖self − other‖₂`.
    pub fn distance(&self, other: &StateVector) -> Result<f64> {
        self.same_n(other)?;
        Ok(linalg::vec_distance(&self.amps, &other.amps))
    }

    /// `self ⊗ other`; `self`'s qubits come first.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        StateVector {
            n: self.n + other.n,
            amps,
        }
    }

    /// Index of the largest-magnitude amplitude.
    pub fn dominant_basis_index(&self) -> usize {
        let mut best = 0;
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm_sqr() > self.amps[best].norm_sqr() {
                best = i;
            }
        }
        best
    }

    fn same_n(&self, other: &StateVector) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }
}

fn check_len(n: usize, len: usize) -> Result<()> {
    if n >= usize::BITS as usize || len != 1usize << n {
        return Err(Error::DimensionMismatch {
            expected: if n < usize::BITS as usize { 1 << n } else { 0 },
            got: len,
        });
    }
    Ok(())
}

/// Basis index of a `0`/`1` string, leftmost character most significant.
pub fn parse_bits(bits: &str) -> Result<usize> {
    let mut index = 0usize;
    for c in bits.chars() {
        index = match c {
            '0' => index << 1,
            '1' => (index << 1) | 1,
            other => return Err(Error::InvalidInput(format!("bad bit character {other:?}"))),
        };
    }
    Ok(index)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_bits_is_msb_first() {
        let s = StateVector::from_bits("100").unwrap();
        assert_eq!(s.dominant_basis_index(), 4);
        assert_eq!(s.amps()[4], linalg::ONE);
    }

    #[test]
    fn unnormalized_is_rejected() {
        let amps = vec![linalg::ONE, linalg::ONE];
        assert!(matches!(StateVector::new(1, amps.clone()), Err(Error::NotNormalized(_))));
        let s = StateVector::normalized(1, amps).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn wrong_length_is_rejected() {
        assert!(StateVector::new(2, vec![linalg::ONE; 3]).is_err());
    }

    #[test]
    fn tensor_orders_factors() {
        let a = StateVector::from_bits("1").unwrap();
        let b = StateVector::from_bits("0").unwrap();
        assert_eq!(a.tensor(&b), StateVector::from_bits("10").unwrap());
    }
}
