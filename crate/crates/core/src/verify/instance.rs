use alloc::format;
use alloc::vec::Vec;

use crate::qcore::{apply_local, energy, LocalHamiltonian, LocalOperator, StateVector};
use crate::{Error, Result};

/// Slack used when comparing energies and distances against thresholds.
const THRESHOLD_SLACK: f64 = 1e-9;

/// Scalar parameters of an instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GsconParams {
    pub k: usize,
    pub eta1: f64,
    pub eta2: f64,
    pub eta3: f64,
    pub eta4: f64,
    pub delta: f64,
    pub l: usize,
    pub m: usize,
}

/// `(H, k, η₁, η₂, η₃, η₄, Δ, l, m, ψ, φ)` with explicit endpoint states.
#[derive(Debug, Clone, PartialEq)]
pub struct GsconInstance {
    h: LocalHamiltonian,
    params: GsconParams,
    psi: StateVector,
    phi: StateVector,
}

impl GsconInstance {
    pub fn new(h: LocalHamiltonian, params: GsconParams, psi: StateVector, phi: StateVector) -> Result<Self> {
        let p = &params;
        for s in [&psi, &phi] {
            if s.n() != h.n() {
                return Err(Error::DimensionMismatch {
                    expected: h.n(),
                    got: s.n(),
                });
            }
        }
        if h.locality() > p.k {
            return Err(Error::LocalityExceeded {
                got: h.locality(),
                limit: p.k,
            });
        }
        if p.l == 0 {
            return Err(Error::InvalidParameter("l must be at least 1".into()));
        }
        let finite = [p.eta1, p.eta2, p.eta3, p.eta4, p.delta];
        if finite.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("parameters must be finite".into()));
        }
        if p.delta < 0.0 {
            return Err(Error::InvalidParameter("Delta must be nonnegative".into()));
        }
        if p.eta2 - p.eta1 < p.delta - 1e-15 || p.eta4 - p.eta3 < p.delta - 1e-15 {
            return Err(Error::InvalidParameter(
                "promise gaps η₂−η₁ and η₄−η₃ must be at least Delta".into(),
            ));
        }
        for (name, s) in [("psi", &psi), ("phi", &phi)] {
            let e = energy(&h, s)?;
            if e > p.eta1 + 1e-10 {
                return Err(Error::InvalidInput(format!(
                    "{name} has energy {e} above eta1 = {}",
                    p.eta1
                )));
            }
        }
        Ok(GsconInstance { h, params, psi, phi })
    }

    pub fn hamiltonian(&self) -> &LocalHamiltonian {
        &self.h
    }

    pub fn params(&self) -> &GsconParams {
        &self.params
    }

    pub fn psi(&self) -> &StateVector {
        &self.psi
    }

    pub fn phi(&self) -> &StateVector {
        &self.phi
    }

    pub fn n(&self) -> usize {
        self.h.n()
    }

    /// Number of local terms, at least one.
    pub fn term_count(&self) -> usize {
        self.h.len().max(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// All intermediate energies at most `η₁` and final distance at most `η₃`.
    Yes,
    /// Some energy at least `η₂` or final distance at least `η₄`.
    No,
    /// Inside the promise gap.
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub verdict: Verdict,
    /// Energy after each supplied step; identity padding repeats the last state.
    pub per_step_energies: Vec<f64>,
    pub final_distance: f64,
    /// First step (1-based) whose energy exceeds `η₁`.
    pub first_violation: Option<usize>,
}

/// Runs `ops` from `ψ` and classifies the result against both promises.
pub fn verify_witness(inst: &GsconInstance, ops: &[LocalOperator]) -> Result<VerifyReport> {
    let p = inst.params();
    if ops.len() > p.m {
        return Err(Error::InvalidInput(format!(
            "witness has {} steps but m = {}",
            ops.len(),
            p.m
        )));
    }
    let mut cur = inst.psi().clone();
    let mut per_step_energies = Vec::with_capacity(ops.len());
    for op in ops {
        if op.locality() > p.l {
            return Err(Error::LocalityExceeded {
                got: op.locality(),
                limit: p.l,
            });
        }
        cur = apply_local(&cur, op)?;
        per_step_energies.push(energy(inst.hamiltonian(), &cur)?);
    }
    let final_distance = cur.distance(inst.phi())?;
    let first_violation = per_step_energies
        .iter()
        .position(|&e| e > p.eta1 + THRESHOLD_SLACK)
        .map(|i| i + 1);
    let verdict = if first_violation.is_none() && final_distance <= p.eta3 + THRESHOLD_SLACK {
        Verdict::Yes
    } else if per_step_energies.iter().any(|&e| e >= p.eta2) || final_distance >= p.eta4 {
        Verdict::No
    } else {
        Verdict::Indeterminate
    };
    Ok(VerifyReport {
        verdict,
        per_step_energies,
        final_distance,
        first_violation,
    })
}
