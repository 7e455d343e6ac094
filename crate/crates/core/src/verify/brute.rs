use alloc::vec::Vec;

use super::instance::GsconInstance;
use super::pspace::coarse_alphabet;
use crate::qcore::linalg::{self, CMatrix};
use crate::qcore::{apply_local, energy, LocalOperator, StateVector};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BruteForceConfig {
    /// `2^l × 2^l` unitaries tried on every ordered `l`-tuple of qubits.
    pub alphabet: Vec<CMatrix>,
    /// Net precision whose error budget relaxes the thresholds.
    pub net_eps: f64,
    pub max_nodes: usize,
}

impl BruteForceConfig {
    /// Coarse single-qubit alphabet shared with the net search.
    pub fn one_local(net_eps: f64) -> Self {
        BruteForceConfig {
            alphabet: coarse_alphabet(2, 4),
            net_eps,
            max_nodes: 5_000_000,
        }
    }

    /// Products of Pauli-type single-qubit unitaries plus CNOT and SWAP.
    pub fn two_local(net_eps: f64) -> Self {
        BruteForceConfig {
            alphabet: two_qubit_alphabet(),
            net_eps,
            max_nodes: 5_000_000,
        }
    }
}

/// `a ⊗ b` over the 4-element grid `coarse_alphabet(1, 2)`, then CNOT and
/// SWAP. Placements are ordered, so the reversed CNOT is covered too.
pub fn two_qubit_alphabet() -> Vec<CMatrix> {
    let singles = coarse_alphabet(1, 2);
    let mut out = Vec::new();
    for a in &singles {
        for b in &singles {
            out.push(linalg::kron(a, b));
        }
    }
    let perm = |cols: [usize; 4]| {
        let mut m = CMatrix::zeros(4, 4);
        for (c, &r) in cols.iter().enumerate() {
            m[(r, c)] = linalg::ONE;
        }
        m
    };
    out.push(perm([0, 1, 3, 2]));
    out.push(perm([0, 2, 1, 3]));
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct BruteForceOutcome {
    pub accepted: bool,
    pub nodes: usize,
    /// Accepting sequence, if any.
    pub witness: Option<Vec<LocalOperator>>,
}

fn placements(n: usize, l: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = alloc::vec![Vec::new()];
    for _ in 0..l {
        let mut next = Vec::new();
        for p in &out {
            for q in 0..n {
                if !p.contains(&q) {
                    let mut t = p.clone();
                    t.push(q);
                    next.push(t);
                }
            }
        }
        out = next;
    }
    out
}

struct Brute<'a> {
    inst: &'a GsconInstance,
    ops: Vec<LocalOperator>,
    energy_cap: f64,
    distance_cap: f64,
    nodes: usize,
    max_nodes: usize,
}

impl Brute<'_> {
    fn explore(&mut self, s: &StateVector, remaining: usize, trail: &mut Vec<usize>) -> Result<bool> {
        for i in 0..self.ops.len() {
            self.nodes += 1;
            if self.nodes > self.max_nodes {
                return Err(Error::GuardExceeded("brute force exceeded its node budget".into()));
            }
            let next = apply_local(s, &self.ops[i])?;
            if energy(self.inst.hamiltonian(), &next)? > self.energy_cap {
                continue;
            }
            trail.push(i);
            if next.distance(self.inst.phi())? <= self.distance_cap {
                return Ok(true);
            }
            if remaining > 1 && self.explore(&next, remaining - 1, trail)? {
                return Ok(true);
            }
            trail.pop();
        }
        Ok(false)
    }
}

/// Exhaustive search over sequences of at most `m` alphabet unitaries.
/// Accepts when every energy is at most `η₁ + 4εmL` and the final distance at
/// most `η₃ + 2εm`, `ε` being the configured net precision.
pub fn brute_force_gscon(inst: &GsconInstance, cfg: &BruteForceConfig) -> Result<BruteForceOutcome> {
    let p = *inst.params();
    let width = 1usize << p.l;
    if cfg.alphabet.iter().any(|a| a.nrows() != width || a.ncols() != width) {
        return Err(Error::DimensionMismatch {
            expected: width,
            got: cfg.alphabet.first().map_or(0, |a| a.nrows()),
        });
    }
    if p.l > inst.n() {
        return Err(Error::InvalidParameter("l exceeds the number of qubits".into()));
    }
    let (eps, m, l) = (cfg.net_eps, p.m as f64, inst.term_count() as f64);
    let mut ops = Vec::new();
    for qubits in placements(inst.n(), p.l) {
        for a in &cfg.alphabet {
            ops.push(LocalOperator::unitary(qubits.clone(), a.clone())?);
        }
    }
    let mut b = Brute {
        inst,
        ops,
        energy_cap: p.eta1 + 4.0 * eps * m * l,
        distance_cap: p.eta3 + 2.0 * eps * m,
        nodes: 0,
        max_nodes: cfg.max_nodes,
    };
    if inst.psi().distance(inst.phi())? <= b.distance_cap {
        return Ok(BruteForceOutcome {
            accepted: true,
            nodes: 0,
            witness: Some(Vec::new()),
        });
    }
    let mut trail = Vec::new();
    let accepted = p.m > 0 && b.explore(inst.psi(), p.m, &mut trail)?;
    let witness = accepted.then(|| trail.iter().map(|&i| b.ops[i].clone()).collect());
    Ok(BruteForceOutcome {
        accepted,
        nodes: b.nodes,
        witness,
    })
}
