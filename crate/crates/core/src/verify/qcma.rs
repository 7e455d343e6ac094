use alloc::vec::Vec;

use super::instance::GsconInstance;
use crate::nets::{PseudoIndex, PseudoNet};
use crate::qcore::linalg::{self, CMatrix};
use crate::qcore::{apply_local, energy, LocalOperator};
use crate::{Error, Result};

/// One claimed 2-qubit unitary, given as pseudo-net coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofElement {
    pub qubits: [usize; 2],
    pub index: PseudoIndex,
}

/// Where the simulated verifier stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QcmaStage {
    Accepted,
    UnitaryCheck { step: usize },
    LowEnergy { step: usize },
    CloseToTarget,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QcmaOutcome {
    pub accepted: bool,
    pub stage: QcmaStage,
    pub eps: f64,
    pub energies: Vec<f64>,
    pub final_distance: Option<f64>,
}

/// `ε = Δ/(16 m L)` with `L` the number of local terms.
pub fn qcma_epsilon(inst: &GsconInstance) -> Result<f64> {
    let p = inst.params();
    if p.delta <= 0.0 || p.m == 0 {
        return Err(Error::InvalidParameter(
            "the verifier needs Delta > 0 and m ≥ 1".into(),
        ));
    }
    Ok(p.delta / (16.0 * p.m as f64 * inst.term_count() as f64))
}

fn pseudo_net(inst: &GsconInstance) -> Result<(f64, PseudoNet)> {
    if inst.params().l != 2 {
        return Err(Error::InvalidParameter("the verifier expects l = 2".into()));
    }
    let eps = qcma_epsilon(inst)?;
    Ok((eps, PseudoNet::new(4, eps)?))
}

/// Classical run of the verifier: check every claimed matrix, round the
/// accepted ones to unitaries, then test energies against `η₁ + ε` and the
/// final distance against `η₃ + ε` exactly.
pub fn qcma_verifier_sim(inst: &GsconInstance, proof: &[ProofElement]) -> Result<QcmaOutcome> {
    let (eps, net) = pseudo_net(inst)?;
    let p = inst.params();
    if proof.len() != p.m {
        return Err(Error::InvalidInput("proof length must equal m".into()));
    }
    let reject = |stage, energies, final_distance| QcmaOutcome {
        accepted: false,
        stage,
        eps,
        energies,
        final_distance,
    };
    let mut rounded = Vec::with_capacity(proof.len());
    for (i, el) in proof.iter().enumerate() {
        let m = net.element(&el.index)?;
        if !net.check(&m)?.accepted {
            return Ok(reject(QcmaStage::UnitaryCheck { step: i + 1 }, Vec::new(), None));
        }
        rounded.push(LocalOperator::new(el.qubits.to_vec(), net.round(&m)?)?);
    }
    let mut cur = inst.psi().clone();
    let mut energies = Vec::with_capacity(rounded.len());
    for (t, v) in rounded.iter().enumerate() {
        cur = apply_local(&cur, v)?;
        let e = energy(inst.hamiltonian(), &cur)?;
        energies.push(e);
        if e > p.eta1 + eps {
            return Ok(reject(QcmaStage::LowEnergy { step: t + 1 }, energies, None));
        }
    }
    let d = cur.distance(inst.phi())?;
    if d > p.eta3 + eps {
        return Ok(reject(QcmaStage::CloseToTarget, energies, Some(d)));
    }
    Ok(QcmaOutcome {
        accepted: true,
        stage: QcmaStage::Accepted,
        eps,
        energies,
        final_distance: Some(d),
    })
}

/// Encodes a witness of 1- and 2-local unitaries as a proof: single-qubit
/// operators are widened by an identity on a neighbouring qubit, the sequence
/// is padded with identities to length `m`, and each matrix is snapped into
/// the pseudo-net.
pub fn honest_qcma_proof(inst: &GsconInstance, ops: &[LocalOperator]) -> Result<Vec<ProofElement>> {
    let (_, net) = pseudo_net(inst)?;
    let n = inst.n();
    if n < 2 {
        return Err(Error::InvalidInput("2-local proofs need at least two qubits".into()));
    }
    if ops.len() > inst.params().m {
        return Err(Error::InvalidInput("witness longer than m".into()));
    }
    let mut out = Vec::with_capacity(inst.params().m);
    for op in ops {
        let (qubits, m): ([usize; 2], CMatrix) = match op.qubits() {
            [q] => {
                let other = if *q == 0 { 1 } else { 0 };
                ([*q, other], linalg::kron(op.matrix(), &linalg::identity(2)))
            }
            [a, b] => ([*a, *b], op.matrix().clone()),
            _ => {
                return Err(Error::LocalityExceeded {
                    got: op.locality(),
                    limit: 2,
                })
            }
        };
        out.push(ProofElement {
            qubits,
            index: net.snap_index(&m)?,
        });
    }
    let pad = net.snap_index(&linalg::identity(4))?;
    out.resize(inst.params().m, ProofElement { qubits: [0, 1], index: pad });
    Ok(out)
}
