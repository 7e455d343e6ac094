//! Subcommand bodies. Each returns the report text and an exit code; the
//! caller decides where the text goes.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use gscon_core::korth::{k_orth_bruteforce, k_orth_density, k_orth_probe, k_orth_states};
use gscon_core::nets::{PseudoNet, SingleQubitNet};
use gscon_core::qcore::linalg;
use gscon_core::qcore::parse_bits;
use gscon_core::qcore::random::{haar_unitary, rng};
use gscon_core::reductions::{stconn_bfs, stconn_to_gscon, stconn_witness};
use gscon_core::traversal::staircase_row;
use gscon_core::verify::{
    brute_force_gscon, honest_qcma_proof, pspace_epsilon, pspace_search, qcma_epsilon, qcma_verifier_sim,
    verify_witness, BruteForceConfig, GsconInstance, PspaceConfig, QcmaStage, Verdict,
};
use gscon_core::{LocalOperator, StateVector};
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::dimacs;
use crate::json::{
    self, load_instance, load_witness, to_pretty, witness_operators, ComplexJson, InstanceJson, ReportJson,
    WitnessOpJson,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NO: i32 = 2;
pub const EXIT_INDETERMINATE: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub text: String,
}

fn yes_no(accepted: bool) -> i32 {
    if accepted {
        EXIT_OK
    } else {
        EXIT_NO
    }
}

fn require_json(cfg: &RunConfig, what: &str) -> Result<()> {
    if cfg.format != Format::Json {
        bail!("{what} only produces JSON");
    }
    Ok(())
}

fn load_checked(path: &Path, cfg: &RunConfig) -> Result<GsconInstance> {
    let inst = load_instance(path)?;
    cfg.check_size(inst.n(), inst.params().m)?;
    Ok(inst)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct StaircaseRowJson {
    delta: f64,
    m: usize,
    max_overlap: f64,
    final_distance: f64,
    m_delta_squared: f64,
}

#[derive(Serialize)]
struct StaircaseJson {
    rows: Vec<StaircaseRowJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sequence: Option<Vec<WitnessOpJson>>,
}

/// One row per `Δ`; with a single `Δ` the JSON report also carries the
/// sequence.
pub fn staircase(deltas: &[f64], cfg: &RunConfig) -> Result<Output> {
    if deltas.is_empty() {
        bail!("no Delta values given");
    }
    let mut rows = Vec::new();
    let mut sequence = None;
    for &d in deltas {
        if !(d > 0.0 && d < 0.5) {
            bail!("Delta = {d} lies outside (0, 1/2)");
        }
        let (stairs, _, row) = staircase_row(d)?;
        if deltas.len() == 1 {
            sequence = Some(stairs.ops.iter().map(WitnessOpJson::from_operator).collect());
        }
        rows.push(row);
    }
    let text = match cfg.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["delta", "m", "max_overlap", "final_distance"])?;
            for r in &rows {
                w.write_record([
                    r.delta.to_string(),
                    r.m.to_string(),
                    r.max_overlap.to_string(),
                    r.final_distance.to_string(),
                ])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Json => to_pretty(&StaircaseJson {
            rows: rows
                .iter()
                .map(|r| StaircaseRowJson {
                    delta: r.delta,
                    m: r.m,
                    max_overlap: r.max_overlap,
                    final_distance: r.final_distance,
                    m_delta_squared: r.m as f64 * r.delta * r.delta,
                })
                .collect(),
            sequence,
        })?,
    };
    Ok(Output { code: EXIT_OK, text })
}

fn bits_for(s: &str, n: usize, name: &str) -> Result<usize> {
    if s.len() != n {
        bail!("{name} has {} bits, the formula has {n} variables", s.len());
    }
    Ok(parse_bits(s).with_context(|| format!("{name} is not a bit string"))?)
}

/// Emits the reconfiguration instance; when the endpoints are connected the
/// path witness goes to `emit_witness` and the exit code is 0, otherwise 2.
pub fn reduce_stconn(cnf: &Path, x: &str, y: &str, emit_witness: Option<&Path>, cfg: &RunConfig) -> Result<Output> {
    require_json(cfg, "reduce-stconn")?;
    let text = fs::read_to_string(cnf).with_context(|| format!("reading {}", cnf.display()))?;
    let phi = dimacs::parse(&text).with_context(|| format!("parsing {}", cnf.display()))?;
    let n = phi.num_vars();
    cfg.check_size(n, 1)?;
    let (x, y) = (bits_for(x, n, "x")?, bits_for(y, n, "y")?);
    let inst = stconn_to_gscon(&phi, x, y)?;
    let path = stconn_bfs(&phi, x, y)?;
    if let (Some(path), Some(out)) = (&path, emit_witness) {
        let w = stconn_witness(n, path, inst.params().m)?;
        let ops: Vec<WitnessOpJson> = w.iter().map(WitnessOpJson::from_operator).collect();
        fs::write(out, to_pretty(&ops)?).with_context(|| format!("writing {}", out.display()))?;
    }
    Ok(Output { code: yes_no(path.is_some()), text: to_pretty(&InstanceJson::from_instance(&inst))? })
}

pub fn verify(instance: &Path, witness: &Path, cfg: &RunConfig) -> Result<Output> {
    require_json(cfg, "verify")?;
    let inst = load_checked(instance, cfg)?;
    let ops = witness_operators(&load_witness(witness)?, cfg.tolerances.unitarity)?;
    let report = verify_witness(&inst, &ops)?;
    let code = match report.verdict {
        Verdict::Yes => EXIT_OK,
        Verdict::No => EXIT_NO,
        Verdict::Indeterminate => EXIT_INDETERMINATE,
    };
    Ok(Output { code, text: to_pretty(&ReportJson::from_report(&report))? })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct QcmaJson {
    accepted: bool,
    stage: String,
    eps: f64,
    energies: Vec<f64>,
    final_distance: Option<f64>,
}

fn stage_name(s: QcmaStage) -> String {
    match s {
        QcmaStage::Accepted => "accepted".into(),
        QcmaStage::UnitaryCheck { step } => format!("unitary-check at step {step}"),
        QcmaStage::LowEnergy { step } => format!("low-energy at step {step}"),
        QcmaStage::CloseToTarget => "close-to-target".into(),
    }
}

/// Pseudo-net proofs are used as given; explicit unitaries are first snapped
/// into the verifier's net. The snapped proof can be saved with `emit_proof`.
pub fn qcma_sim(instance: &Path, witness: &Path, emit_proof: Option<&Path>, cfg: &RunConfig) -> Result<Output> {
    require_json(cfg, "qcma-sim")?;
    let inst = load_checked(instance, cfg)?;
    let eps = qcma_epsilon(&inst)?;
    let entries = load_witness(witness)?;
    let proof = if entries.iter().all(|e| matches!(e, WitnessOpJson::Pseudo { .. })) {
        entries.iter().map(|e| e.to_proof_element(eps)).collect::<Result<Vec<_>>>()?
    } else {
        honest_qcma_proof(&inst, &witness_operators(&entries, cfg.tolerances.unitarity)?)?
    };
    if let Some(out) = emit_proof {
        let p: Vec<WitnessOpJson> = proof.iter().map(|el| WitnessOpJson::from_proof_element(el, eps)).collect();
        fs::write(out, to_pretty(&p)?).with_context(|| format!("writing {}", out.display()))?;
    }
    let o = qcma_verifier_sim(&inst, &proof)?;
    let report = QcmaJson {
        accepted: o.accepted,
        stage: stage_name(o.stage),
        eps: o.eps,
        energies: o.energies,
        final_distance: o.final_distance,
    };
    Ok(Output { code: yes_no(o.accepted), text: to_pretty(&report)? })
}

#[derive(Serialize)]
struct SearchJson {
    accepted: bool,
    eps: Option<f64>,
    nodes: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<Vec<WitnessOpJson>>,
}

pub fn pspace(instance: &Path, cfg: &RunConfig) -> Result<Output> {
    require_json(cfg, "pspace-search")?;
    let inst = load_checked(instance, cfg)?;
    let search = PspaceConfig { max_nodes: cfg.guards.max_nodes, ..PspaceConfig::default() };
    let o = pspace_search(&inst, &search)?;
    let path = match o.path {
        Some(p) => Some(
            p.iter()
                .map(|&(q, g)| Ok(WitnessOpJson::from_operator(&LocalOperator::new(vec![q], search.alphabet[g].clone())?)))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    let report = SearchJson { accepted: o.accepted, eps: o.eps, nodes: o.nodes, path };
    Ok(Output { code: yes_no(o.accepted), text: to_pretty(&report)? })
}

/// Without `net_eps` the precision matches the search that would run on the
/// instance: the net search for `l = 1`, the verifier's for `l = 2`.
pub fn brute_force(instance: &Path, net_eps: Option<f64>, cfg: &RunConfig) -> Result<Output> {
    require_json(cfg, "brute-force")?;
    let inst = load_checked(instance, cfg)?;
    let mut bf = match inst.params().l {
        1 => BruteForceConfig::one_local(net_eps.map_or_else(|| pspace_epsilon(&inst), Ok)?),
        2 => BruteForceConfig::two_local(net_eps.map_or_else(|| qcma_epsilon(&inst), Ok)?),
        l => bail!("brute force supports l = 1 or 2, not {l}"),
    };
    bf.max_nodes = cfg.guards.max_nodes;
    let o = brute_force_gscon(&inst, &bf)?;
    let report = SearchJson {
        accepted: o.accepted,
        eps: Some(bf.net_eps),
        nodes: o.nodes,
        path: o.witness.map(|p| p.iter().map(WitnessOpJson::from_operator).collect()),
    };
    Ok(Output { code: yes_no(o.accepted), text: to_pretty(&report)? })
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct StatePairJson {
    n: usize,
    v: Vec<ComplexJson>,
    w: Vec<ComplexJson>,
}

/// Either bit strings or a JSON file `{n, v, w}` of amplitudes.
pub enum StatePair<'a> {
    Bits(&'a str, &'a str),
    File(&'a Path),
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct KorthJson {
    k: usize,
    k_orthogonal: bool,
    density_characterization: bool,
    probe_overlap: f64,
    sampled_overlap: f64,
}

pub fn korth(states: StatePair<'_>, k: usize, trials: usize, cfg: &RunConfig) -> Result<Output> {
    require_json(cfg, "korth")?;
    let (v, w) = match states {
        StatePair::Bits(a, b) => (StateVector::from_bits(a)?, StateVector::from_bits(b)?),
        StatePair::File(p) => {
            let pair: StatePairJson = json::read_json(p)?;
            (json::state_from_json(pair.n, &pair.v)?, json::state_from_json(pair.n, &pair.w)?)
        }
    };
    cfg.check_size(v.n(), 1)?;
    let tol = cfg.tolerances.comparison;
    let report = KorthJson {
        k,
        k_orthogonal: k_orth_states(&v, &w, k, tol)?,
        density_characterization: k_orth_density(&v, &w, k, tol)?,
        probe_overlap: k_orth_probe(&v, &w, k)?,
        sampled_overlap: k_orth_bruteforce(&v, &w, k, trials, cfg.seed)?,
    };
    if report.k_orthogonal != report.density_characterization {
        bail!("the two characterizations disagree");
    }
    Ok(Output { code: yes_no(report.k_orthogonal), text: to_pretty(&report)? })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct NetTestJson {
    dim: usize,
    eps: f64,
    samples: usize,
    seed: u64,
    max_distance: f64,
    failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_unitarity_deviation: Option<f64>,
}

/// Snaps Haar samples into the net for `dim = 2`, or through check and
/// round of the pseudo-net for larger `dim`, and counts contract failures.
pub fn net_test(eps: f64, samples: usize, dim: usize, cfg: &RunConfig) -> Result<Output> {
    require_json(cfg, "net-test")?;
    if samples > cfg.guards.max_nodes {
        bail!("{samples} samples exceeds the guard of {}", cfg.guards.max_nodes);
    }
    let mut r = rng(cfg.seed);
    let mut max_distance: f64 = 0.0;
    let mut failures = 0;
    let mut max_dev = None;
    if dim == 2 {
        let net = SingleQubitNet::new(eps)?;
        for _ in 0..samples {
            let u = haar_unitary(2, &mut r);
            let idx = net.snap(&u)?;
            let e = net.element(idx)?;
            let d = linalg::spectral_norm(&(&u - &e))?;
            max_distance = max_distance.max(d);
            if d > eps || net.snap(&e)? != idx {
                failures += 1;
            }
        }
    } else {
        let net = PseudoNet::new(dim, eps)?;
        let mut dev: f64 = 0.0;
        for _ in 0..samples {
            let u = haar_unitary(dim, &mut r);
            let m = net.snap(&u)?;
            if !net.check(&m)?.accepted {
                failures += 1;
                continue;
            }
            let rounded = net.round(&m)?;
            let d = linalg::spectral_norm(&(&rounded - &m))?;
            let ud = linalg::unitarity_deviation(&rounded);
            dev = dev.max(ud);
            max_distance = max_distance.max(d);
            if d > eps || ud > cfg.tolerances.unitarity {
                failures += 1;
            }
        }
        max_dev = Some(dev);
    }
    let report = NetTestJson {
        dim,
        eps,
        samples,
        seed: cfg.seed,
        max_distance,
        failures,
        max_unitarity_deviation: max_dev,
    };
    Ok(Output { code: yes_no(failures == 0), text: to_pretty(&report)? })
}
