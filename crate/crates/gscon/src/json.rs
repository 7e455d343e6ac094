//! JSON forms of instances, witnesses and reports. Complex numbers are
//! `[re, im]`, matrices are lists of rows, and instance parameters are decimal
//! strings so that they survive a round trip bit for bit.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use gscon_core::nets::{NetIndex, PseudoIndex, PseudoNet, SingleQubitNet};
use gscon_core::qcore::linalg::{self, c64};
use gscon_core::verify::{GsconInstance, GsconParams, ProofElement, Verdict, VerifyReport};
use gscon_core::{CMatrix, LocalHamiltonian, LocalOperator, StateVector, C64};
use serde::{Deserialize, Serialize};

pub type ComplexJson = [f64; 2];
pub type MatrixJson = Vec<Vec<ComplexJson>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub qubits: Vec<usize>,
    pub matrix: MatrixJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceJson {
    pub n: usize,
    pub k: usize,
    pub terms: Vec<TermJson>,
    pub eta1: String,
    pub eta2: String,
    pub eta3: String,
    pub eta4: String,
    pub delta: String,
    pub l: usize,
    pub m: usize,
    pub psi: Vec<ComplexJson>,
    pub phi: Vec<ComplexJson>,
}

/// One witness step: an explicit matrix, a single-qubit net index
/// `[x, φ₁, φ₂, φ₃]`, or pseudo-net lattice coordinates in row-major order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WitnessOpJson {
    Matrix {
        qubits: Vec<usize>,
        matrix: MatrixJson,
    },
    Net {
        qubits: Vec<usize>,
        #[serde(rename = "netIndex")]
        net_index: [u64; 4],
        #[serde(rename = "netEps")]
        net_eps: String,
    },
    Pseudo {
        qubits: Vec<usize>,
        #[serde(rename = "pseudoNet")]
        pseudo_net: Vec<[i64; 2]>,
        #[serde(rename = "netEps")]
        net_eps: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportJson {
    pub verdict: String,
    pub per_step_energies: Vec<f64>,
    pub final_distance: f64,
    pub first_violation: Option<usize>,
}

pub fn decimal(x: f64) -> String {
    format!("{x}")
}

pub fn parse_decimal(s: &str, name: &str) -> Result<f64> {
    let v: f64 = s.trim().parse().with_context(|| format!("{name}: `{s}` is not a decimal number"))?;
    if !v.is_finite() {
        bail!("{name} must be finite");
    }
    Ok(v)
}

pub fn complex_to_json(z: C64) -> ComplexJson {
    [z.re, z.im]
}

pub fn matrix_to_json(m: &CMatrix) -> MatrixJson {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| complex_to_json(m[(r, c)])).collect())
        .collect()
}

pub fn matrix_from_json(rows: &MatrixJson) -> Result<CMatrix> {
    let dim = rows.len();
    if rows.iter().any(|r| r.len() != dim) {
        bail!("matrix must be square");
    }
    let flat: Vec<C64> = rows.iter().flatten().map(|z| c64(z[0], z[1])).collect();
    Ok(linalg::from_rows(dim, &flat)?)
}

pub fn state_to_json(s: &StateVector) -> Vec<ComplexJson> {
    s.amps().iter().map(|&z| complex_to_json(z)).collect()
}

pub fn state_from_json(n: usize, amps: &[ComplexJson]) -> Result<StateVector> {
    if amps.len() != 1usize.checked_shl(n as u32).unwrap_or(0) {
        bail!("state has {} amplitudes, expected 2^{n}", amps.len());
    }
    Ok(StateVector::new(n, amps.iter().map(|z| c64(z[0], z[1])).collect())?)
}

impl InstanceJson {
    pub fn from_instance(inst: &GsconInstance) -> Self {
        let p = inst.params();
        InstanceJson {
            n: inst.n(),
            k: p.k,
            terms: inst
                .hamiltonian()
                .terms()
                .iter()
                .map(|t| TermJson { qubits: t.qubits().to_vec(), matrix: matrix_to_json(t.matrix()) })
                .collect(),
            eta1: decimal(p.eta1),
            eta2: decimal(p.eta2),
            eta3: decimal(p.eta3),
            eta4: decimal(p.eta4),
            delta: decimal(p.delta),
            l: p.l,
            m: p.m,
            psi: state_to_json(inst.psi()),
            phi: state_to_json(inst.phi()),
        }
    }

    /// Rebuilds the instance, re-running every validity check.
    pub fn to_instance(&self) -> Result<GsconInstance> {
        let terms = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                LocalOperator::new(t.qubits.clone(), matrix_from_json(&t.matrix)?).with_context(|| format!("term {i}"))
            })
            .collect::<Result<Vec<_>>>()?;
        let h = LocalHamiltonian::new(self.n, terms)?;
        let params = GsconParams {
            k: self.k,
            eta1: parse_decimal(&self.eta1, "eta1")?,
            eta2: parse_decimal(&self.eta2, "eta2")?,
            eta3: parse_decimal(&self.eta3, "eta3")?,
            eta4: parse_decimal(&self.eta4, "eta4")?,
            delta: parse_decimal(&self.delta, "delta")?,
            l: self.l,
            m: self.m,
        };
        let psi = state_from_json(self.n, &self.psi).context("psi")?;
        let phi = state_from_json(self.n, &self.phi).context("phi")?;
        Ok(GsconInstance::new(h, params, psi, phi)?)
    }
}

impl WitnessOpJson {
    pub fn from_operator(op: &LocalOperator) -> Self {
        WitnessOpJson::Matrix { qubits: op.qubits().to_vec(), matrix: matrix_to_json(op.matrix()) }
    }

    pub fn qubits(&self) -> &[usize] {
        match self {
            WitnessOpJson::Matrix { qubits, .. }
            | WitnessOpJson::Net { qubits, .. }
            | WitnessOpJson::Pseudo { qubits, .. } => qubits,
        }
    }

    /// Unitary for this step: explicit matrices must be unitary within
    /// `unitarity_tol`, net indices decode exactly, and pseudo-net points are
    /// checked and rounded.
    pub fn to_operator(&self, unitarity_tol: f64) -> Result<LocalOperator> {
        match self {
            WitnessOpJson::Matrix { qubits, matrix } => {
                let op = LocalOperator::new(qubits.clone(), matrix_from_json(matrix)?)?;
                if !op.is_unitary(unitarity_tol) {
                    bail!("witness matrix on {qubits:?} deviates from unitary by {}", op.unitarity_deviation());
                }
                Ok(op)
            }
            WitnessOpJson::Net { qubits, net_index, net_eps } => {
                if qubits.len() != 1 {
                    bail!("net indices describe single-qubit unitaries");
                }
                let net = SingleQubitNet::new(parse_decimal(net_eps, "netEps")?)?;
                let [x, phi1, phi2, phi3] = *net_index;
                let idx = NetIndex { x, phi1, phi2, phi3 };
                Ok(LocalOperator::new(qubits.clone(), net.element(idx)?)?)
            }
            WitnessOpJson::Pseudo { qubits, .. } => {
                let (net, idx) = self.pseudo_parts()?;
                let m = net.element(&idx)?;
                Ok(LocalOperator::new(qubits.clone(), net.round(&m)?)?)
            }
        }
    }

    fn pseudo_parts(&self) -> Result<(PseudoNet, PseudoIndex)> {
        let WitnessOpJson::Pseudo { qubits, pseudo_net, net_eps } = self else {
            bail!("not a pseudo-net entry");
        };
        let net = PseudoNet::new(1 << qubits.len(), parse_decimal(net_eps, "netEps")?)?;
        Ok((net, PseudoIndex { coords: pseudo_net.clone() }))
    }

    pub fn from_proof_element(el: &ProofElement, eps: f64) -> Self {
        WitnessOpJson::Pseudo { qubits: el.qubits.to_vec(), pseudo_net: el.index.coords.clone(), net_eps: decimal(eps) }
    }

    /// Proof element for the simulated verifier, whose net precision is
    /// fixed by the instance.
    pub fn to_proof_element(&self, eps: f64) -> Result<ProofElement> {
        let WitnessOpJson::Pseudo { qubits, pseudo_net, net_eps } = self else {
            bail!("proof entries must be pseudo-net coordinates");
        };
        let claimed = parse_decimal(net_eps, "netEps")?;
        if claimed != eps {
            bail!("proof uses netEps {claimed}, the instance requires {eps}");
        }
        let qubits: [usize; 2] = qubits
            .as_slice()
            .try_into()
            .map_err(|_| anyhow!("proof entries act on exactly two qubits"))?;
        Ok(ProofElement { qubits, index: PseudoIndex { coords: pseudo_net.clone() } })
    }
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::Indeterminate => "indeterminate",
    }
}

impl ReportJson {
    pub fn from_report(r: &VerifyReport) -> Self {
        ReportJson {
            verdict: verdict_name(r.verdict).to_string(),
            per_step_energies: r.per_step_energies.clone(),
            final_distance: r.final_distance,
            first_violation: r.first_violation,
        }
    }
}

pub fn to_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Reads a bare instance or a fixture file wrapping one under `instance`.
pub fn load_instance(path: &Path) -> Result<GsconInstance> {
    let mut value: serde_json::Value = read_json(path)?;
    if let Some(inner) = value.get_mut("instance") {
        value = inner.take();
    }
    let j: InstanceJson = serde_json::from_value(value).with_context(|| format!("parsing {}", path.display()))?;
    j.to_instance().with_context(|| format!("validating {}", path.display()))
}

pub fn load_witness(path: &Path) -> Result<Vec<WitnessOpJson>> {
    read_json(path)
}

pub fn witness_operators(ops: &[WitnessOpJson], unitarity_tol: f64) -> Result<Vec<LocalOperator>> {
    ops.iter()
        .enumerate()
        .map(|(i, o)| o.to_operator(unitarity_tol).with_context(|| format!("witness step {}", i + 1)))
        .collect()
}
