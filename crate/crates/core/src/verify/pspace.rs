use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::instance::GsconInstance;
use crate::nets::{parametrized_unitary, NetIndex, SingleQubitNet};
use crate::qcore::linalg::{self, CMatrix};
use crate::qcore::{apply_local, energy, LocalOperator, StateVector};
use crate::{Error, Result};

/// Distinct-up-to-global-phase unitaries on a coarse `(x, φ₁, φ₂, φ₃)` grid
/// with `x_steps + 1` values of `x` and `phase_steps` values per phase.
pub fn coarse_alphabet(x_steps: u64, phase_steps: u64) -> Vec<CMatrix> {
    let mut out: Vec<CMatrix> = Vec::new();
    let phase = |j: u64| 2.0 * PI * j as f64 / phase_steps as f64;
    for i in 0..=x_steps {
        for a in 0..phase_steps {
            for b in 0..phase_steps {
                for c in 0..phase_steps {
                    let u = strip_global_phase(parametrized_unitary(
                        i as f64 / x_steps as f64,
                        phase(a),
                        phase(b),
                        phase(c),
                    ));
                    if out.iter().all(|v| linalg::max_abs_diff(v, &u) > 1e-9) {
                        out.push(u);
                    }
                }
            }
        }
    }
    out
}

fn strip_global_phase(u: CMatrix) -> CMatrix {
    let pivot = u.iter().copied().find(|z| z.norm() > 1e-9);
    match pivot {
        Some(z) => {
            let ph = z / z.norm();
            u.map(|e| {
                let v = e / ph;
                let snap = |t: f64| if t.abs() < 1e-13 { 0.0 } else { t };
                linalg::c64(snap(v.re), snap(v.im))
            })
        }
        None => u,
    }
}

/// `ε = Δ/(8L(2(m−1)+1))` with `L` the number of local terms.
pub fn pspace_epsilon(inst: &GsconInstance) -> Result<f64> {
    let p = inst.params();
    if p.delta <= 0.0 || p.m == 0 {
        return Err(Error::InvalidParameter("the search needs Delta > 0 and m ≥ 1".into()));
    }
    let l = inst.term_count() as f64;
    Ok(p.delta / (8.0 * l * (2.0 * (p.m as f64 - 1.0) + 1.0)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PspaceConfig {
    /// Guesses per step, each rounded into the fine net before use.
    pub alphabet: Vec<CMatrix>,
    /// Upper bound on explored guesses.
    pub max_nodes: usize,
}

impl Default for PspaceConfig {
    fn default() -> Self {
        PspaceConfig {
            alphabet: coarse_alphabet(2, 4),
            max_nodes: 5_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PspaceOutcome {
    pub accepted: bool,
    /// Net precision, absent when step 1 decided.
    pub eps: Option<f64>,
    pub nodes: usize,
    /// Accepting choice sequence as `(qubit, alphabet index)`.
    pub path: Option<Vec<(usize, usize)>>,
}

struct Search<'a> {
    inst: &'a GsconInstance,
    net: SingleQubitNet,
    guesses: Vec<CMatrix>,
    energy_cut: f64,
    proximity: f64,
    memo: BTreeMap<Vec<NetIndex>, usize>,
    nodes: usize,
    max_nodes: usize,
}

impl Search<'_> {
    fn state(&self, v: &[NetIndex]) -> Result<StateVector> {
        let mut s = self.inst.psi().clone();
        for (q, idx) in v.iter().enumerate() {
            s = apply_local(&s, &LocalOperator::new(alloc::vec![q], self.net.element(*idx)?)?)?;
        }
        Ok(s)
    }

    /// True iff some continuation of at most `remaining` steps accepts.
    fn explore(&mut self, v: &[NetIndex], remaining: usize, path: &mut Vec<(usize, usize)>) -> Result<bool> {
        for q in 0..v.len() {
            for g in 0..self.guesses.len() {
                self.nodes += 1;
                if self.nodes > self.max_nodes {
                    return Err(Error::GuardExceeded("net search exceeded its node budget".into()));
                }
                let mut next = v.to_vec();
                let product = &self.guesses[g] * self.net.element(v[q])?;
                next[q] = self.net.snap(&product)?;
                let s = self.state(&next)?;
                if energy(self.inst.hamiltonian(), &s)? >= self.energy_cut {
                    continue;
                }
                path.push((q, g));
                if s.distance(self.inst.phi())? <= self.proximity {
                    return Ok(true);
                }
                let left = remaining - 1;
                if left > 0 && self.memo.get(&next).is_none_or(|&r| r < left) {
                    if self.explore(&next, left, path)? {
                        return Ok(true);
                    }
                    self.memo.insert(next, left);
                }
                path.pop();
            }
        }
        Ok(false)
    }
}

/// Depth-first realization of the nondeterministic net search for `l = 1`:
/// every branch guesses `(q, B)`, re-rounds `B·V_q` into the net, exits on
/// energy `≥ η₁ + Δ/3` and accepts on distance `≤ η₃ + Δ/4`.
pub fn pspace_search(inst: &GsconInstance, cfg: &PspaceConfig) -> Result<PspaceOutcome> {
    let p = *inst.params();
    if inst.psi().distance(inst.phi())? <= p.eta3 {
        return Ok(PspaceOutcome {
            accepted: true,
            eps: None,
            nodes: 0,
            path: Some(Vec::new()),
        });
    }
    if p.l != 1 {
        return Err(Error::InvalidParameter("the net search handles l = 1 only".into()));
    }
    let eps = pspace_epsilon(inst)?;
    let net = SingleQubitNet::new(eps.min(1.0))?;
    let guesses = cfg
        .alphabet
        .iter()
        .map(|b| net.round(b))
        .collect::<Result<Vec<_>>>()?;
    let identity = net.snap(&linalg::identity(2))?;
    let mut search = Search {
        inst,
        net,
        guesses,
        energy_cut: p.eta1 + p.delta / 3.0,
        proximity: p.eta3 + p.delta / 4.0,
        memo: BTreeMap::new(),
        nodes: 0,
        max_nodes: cfg.max_nodes,
    };
    let start = alloc::vec![identity; inst.n()];
    let mut path = Vec::new();
    let accepted = search.explore(&start, p.m, &mut path)?;
    Ok(PspaceOutcome {
        accepted,
        eps: Some(eps),
        nodes: search.nodes,
        path: accepted.then_some(path),
    })
}

/// Per-step comparison of an exact 1-local path with its net-rounded shadow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftStep {
    pub step: usize,
    /// `‖U_i − V_i‖` for the full tensor products.
    pub drift: f64,
    /// `(2(i−1)+1)ε`.
    pub bound: f64,
}

fn tensor_all(ops: &[CMatrix]) -> CMatrix {
    ops.iter()
        .fold(CMatrix::identity(1, 1), |acc, m| linalg::kron(&acc, m))
}

/// Replays `path` of single-qubit unitaries, tracking exact cumulative
/// operators `U_i` alongside the rounded `V_i` of the net search.
pub fn pspace_trace(inst: &GsconInstance, path: &[LocalOperator]) -> Result<Vec<DriftStep>> {
    let eps = pspace_epsilon(inst)?;
    let net = SingleQubitNet::new(eps.min(1.0))?;
    let n = inst.n();
    if n > 6 {
        return Err(Error::GuardExceeded("drift trace is limited to 6 qubits".into()));
    }
    let mut exact = alloc::vec![linalg::identity(2); n];
    let mut rounded = alloc::vec![net.snap(&linalg::identity(2))?; n];
    let mut out = Vec::with_capacity(path.len());
    for (i, op) in path.iter().enumerate() {
        let q = match op.qubits() {
            [q] if *q < n => *q,
            _ => return Err(Error::InvalidInput("trace expects 1-local operators".into())),
        };
        exact[q] = op.matrix() * &exact[q];
        let b = net.round(op.matrix())?;
        rounded[q] = net.snap(&(b * net.element(rounded[q])?))?;
        let v: Vec<CMatrix> = rounded.iter().map(|&idx| net.element(idx)).collect::<Result<_>>()?;
        let drift = linalg::spectral_norm(&(tensor_all(&exact) - tensor_all(&v)))?;
        out.push(DriftStep {
            step: i + 1,
            drift,
            bound: (2.0 * i as f64 + 1.0) * eps,
        });
    }
    Ok(out)
}
