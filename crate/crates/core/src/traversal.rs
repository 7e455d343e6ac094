//! Traversal bound checks and the staircase sequence that nearly saturates it.
//!
//! For an `m`-step evolution `|v_i⟩ = U_i⋯U_1|v⟩` between k-orthogonal
//! subspaces `S ∋ v` and `T`, with `ε = ‖w − v_m‖₂ < 1/2`, some step has
//! `⟨v_i|P|v_i⟩ ≥ ((1−2ε)/(2m))²` where `P = I − Π_S − Π_T`.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::korth::{k_orth_subspaces, Subspace, DEFAULT_TOL};
use crate::qcore::linalg::{self, c64, CMatrix, C64};
use crate::qcore::{apply_local, expectation, LocalOperator, Projector, StateVector};
use crate::{Error, Result};

/// Outcome of running a sequence and measuring its overlap with `P`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraversalReport {
    pub m: usize,
    /// Locality of the widest step.
    pub k: usize,
    /// `‖w − U_m⋯U_1 v‖₂`.
    pub eps: f64,
    /// `⟨v_i|P|v_i⟩` after each step `i = 1..=m`.
    pub overlaps: Vec<f64>,
    pub max_overlap: f64,
    /// `((1−2ε)/(2m))²`, absent for the empty sequence.
    pub bound: Option<f64>,
    pub lemma_applicable: bool,
    pub bound_satisfied: bool,
}

/// Evolves `v` through `seq` and compares the worst overlap with
/// `P = I − Π_S − Π_T` against the traversal bound.
pub fn traversal_report(
    v: &StateVector,
    w: &StateVector,
    seq: &[LocalOperator],
    pi_s: &Projector,
    pi_t: &Projector,
) -> Result<TraversalReport> {
    let n = v.n();
    if w.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: w.n() });
    }
    let ps = pi_s.operator().embed(n)?;
    let pt = pi_t.operator().embed(n)?;
    let cross = linalg::max_entry_norm(&(&ps * &pt))?;
    if cross > 1e-10 {
        return Err(Error::InvalidInput("projectors are not mutually orthogonal".into()));
    }
    let p_overlap = |s: &StateVector| -> Result<f64> {
        Ok(1.0 - expectation(s, pi_s.operator())?.re - expectation(s, pi_t.operator())?.re)
    };
    let mut cur = v.clone();
    let mut overlaps = Vec::with_capacity(seq.len());
    for op in seq {
        cur = apply_local(&cur, op)?;
        overlaps.push(p_overlap(&cur)?);
    }
    let m = seq.len();
    let k = seq.iter().map(|o| o.locality()).max().unwrap_or(0);
    let eps = w.distance(&cur)?;
    let max_overlap = overlaps.iter().copied().fold(0.0, f64::max);
    let bound = (m > 0).then(|| ((1.0 - 2.0 * eps) / (2.0 * m as f64)).powi(2));
    let lemma_applicable = m >= 1 && eps < 0.5 && k >= 1 && k <= n && {
        let s = Subspace::new(n, pi_s.range_basis(n)?)?;
        let t = Subspace::new(n, pi_t.range_basis(n)?)?;
        k_orth_subspaces(&s, &t, k, DEFAULT_TOL)?
    };
    let bound_satisfied = bound.is_some_and(|b| max_overlap >= b - 1e-12);
    Ok(TraversalReport {
        m,
        k,
        eps,
        overlaps,
        max_overlap,
        bound,
        lemma_applicable,
        bound_satisfied,
    })
}

/// Parameters of the staircase for a target overlap `Δ ∈ (0, 1/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StaircaseParams {
    pub delta: f64,
    pub alpha: f64,
    pub beta: f64,
    pub zeta: f64,
    pub cutoff: f64,
}

impl StaircaseParams {
    pub fn new(delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 0.5) {
            return Err(Error::InvalidParameter("Delta must lie in (0, 1/2)".into()));
        }
        let zeta = 2.0 * delta / (1.0 + 2.0 * delta);
        Ok(StaircaseParams {
            delta,
            alpha: (1.0 - delta).sqrt(),
            beta: delta.sqrt(),
            zeta,
            cutoff: 0.5 + zeta,
        })
    }

    /// `f(γ) = √((1−2Δ)γ² + Δ)`.
    pub fn f(&self, gamma1: f64) -> f64 {
        ((1.0 - 2.0 * self.delta) * gamma1 * gamma1 + self.delta).sqrt()
    }
}

/// Unitary on `dim` basis states sending each normalized source to its target
/// basis vector. The orthogonal complement, found by Gram–Schmidt over the
/// canonical basis in index order, goes to the unused targets in index order.
pub fn complete_unitary(dim: usize, pairs: &[(Vec<C64>, usize)]) -> Result<CMatrix> {
    let mut sources: Vec<Vec<C64>> = Vec::with_capacity(dim);
    let mut targets: Vec<usize> = Vec::with_capacity(dim);
    for (src, t) in pairs {
        if src.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: src.len() });
        }
        if *t >= dim {
            return Err(Error::IndexOutOfRange);
        }
        if targets.contains(t) {
            return Err(Error::InvalidInput("duplicate target index".into()));
        }
        let norm = linalg::vec_norm(src);
        if norm < 1e-12 {
            return Err(Error::NotNormalized(norm));
        }
        let s: Vec<C64> = src.iter().map(|z| z / norm).collect();
        for prev in &sources {
            let ov = linalg::inner(prev, &s).norm();
            if ov > 1e-8 {
                return Err(Error::NonOrthogonal(ov));
            }
        }
        sources.push(s);
        targets.push(*t);
    }
    let fixed = sources.len();
    for e in 0..dim {
        if sources.len() == dim {
            break;
        }
        let mut cand = vec![linalg::ZERO; dim];
        cand[e] = linalg::ONE;
        for s in &sources {
            let proj = linalg::inner(s, &cand);
            for (c, si) in cand.iter_mut().zip(s) {
                *c -= si * proj;
            }
        }
        let norm = linalg::vec_norm(&cand);
        if norm > 1e-6 {
            sources.push(cand.into_iter().map(|z| z / norm).collect());
        }
    }
    let free: Vec<usize> = (0..dim).filter(|t| !targets[..fixed].contains(t)).collect();
    targets.extend(free);
    let mut u = CMatrix::zeros(dim, dim);
    for (s, &t) in sources.iter().zip(&targets) {
        for (r, z) in s.iter().enumerate() {
            u[(t, r)] = z.conj();
        }
    }
    Ok(u)
}

fn basis2(i: usize) -> Vec<C64> {
    let mut v = vec![linalg::ZERO; 4];
    v[i] = linalg::ONE;
    v
}

fn two_qubit(amps: [f64; 4]) -> Vec<C64> {
    amps.iter().map(|&a| c64(a, 0.0)).collect()
}

fn op(qubits: [usize; 2], m: CMatrix) -> Result<LocalOperator> {
    LocalOperator::unitary(qubits.to_vec(), m)
}

/// One step-1 iteration from `γ₁|000⟩ + γ₂|111⟩`: returns `(U₁, U₂, f(γ₁))`
/// with `U₁` on qubits `{0,1}` and `U₂` on `{1,2}`.
pub fn step1_pair(gamma1: f64, params: &StaircaseParams) -> Result<(LocalOperator, LocalOperator, f64)> {
    if !(gamma1 * gamma1 > 0.5 && gamma1 <= 1.0 + 1e-12) {
        return Err(Error::InvalidParameter("step 1 needs 1/2 < γ₁² ≤ 1".into()));
    }
    let gamma1 = gamma1.min(1.0);
    let gamma2 = (1.0 - gamma1 * gamma1).max(0.0).sqrt();
    let (a, b) = (params.alpha, params.beta);
    let u1 = linalg::from_real_rows(
        4,
        &[a, 0.0, 0.0, b, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, b, 0.0, 0.0, -a],
    )?;
    let u2 = complete_unitary(
        4,
        &[
            (two_qubit([gamma1 * a, gamma2 * b, 0.0, 0.0]), 0),
            (two_qubit([0.0, 0.0, gamma1 * b, -gamma2 * a]), 3),
        ],
    )?;
    Ok((op([0, 1], u1)?, op([1, 2], u2)?, params.f(gamma1)))
}

/// Step-2 parameter `β` solving `√(1 − (1−β²)/(2(1+β²))) = γ₁`.
pub fn step2_beta(gamma1: f64) -> f64 {
    let g2 = gamma1 * gamma1;
    ((2.0 * g2 - 1.0) / (3.0 - 2.0 * g2)).max(0.0).sqrt()
}

/// Three unitaries mapping `γ₁|000⟩ + γ₂|111⟩` to `(|000⟩ + |111⟩)/√2`,
/// for `1/2 ≤ γ₁² ≤ 1/2 + ζ`.
pub fn step2_finisher(gamma1: f64, params: &StaircaseParams) -> Result<Vec<LocalOperator>> {
    let g2 = gamma1 * gamma1;
    if !(g2 >= 0.5 - 1e-12 && g2 <= params.cutoff + 1e-12) {
        return Err(Error::InvalidParameter("step 2 needs 1/2 ≤ γ₁² ≤ 1/2 + ζ".into()));
    }
    let beta = step2_beta(gamma1);
    let alpha = (1.0 - beta * beta).sqrt();
    let delta = ((1.0 + beta * beta) / 2.0).sqrt();
    let s = 2f64.sqrt() * delta;
    // Forward maps from the equal superposition, each given as its inverse.
    let a1_inv = complete_unitary(4, &[(basis2(0), 0), (two_qubit([0.0, beta, 0.0, alpha]), 3)])?;
    let a2 = complete_unitary(
        4,
        &[
            (two_qubit([1.0 / s, 0.0, 0.0, beta / s]), 0),
            (two_qubit([beta / s, 0.0, 0.0, -1.0 / s]), 3),
        ],
    )?;
    let a3 = complete_unitary(
        4,
        &[
            (two_qubit([delta, 0.0, alpha * beta / (2.0 * delta), 0.0]), 0),
            (two_qubit([0.0, 0.0, 0.0, -1.0]), 3),
        ],
    )?;
    Ok(vec![
        op([0, 1], a3.adjoint())?,
        op([1, 2], a2.adjoint())?,
        op([0, 1], a1_inv)?,
    ])
}

/// A staircase sequence with its step-1 iteration count.
#[derive(Debug, Clone, PartialEq)]
pub struct Staircase {
    pub params: StaircaseParams,
    pub iterations: usize,
    pub ops: Vec<LocalOperator>,
}

/// `|000⟩ → (|000⟩ + |111⟩)/√2` keeping every overlap with `P` at most `Δ`.
pub fn staircase_half(params: &StaircaseParams) -> Result<Staircase> {
    let limit = (0.5 / (2.0 * params.delta * params.zeta)).ceil() as usize + 1;
    let mut gamma = 1.0;
    let mut ops = Vec::new();
    let mut iterations = 0;
    while gamma * gamma > params.cutoff {
        if iterations >= limit {
            return Err(Error::GuardExceeded("staircase failed to reach the cutoff".into()));
        }
        let (u1, u2, next) = step1_pair(gamma, params)?;
        ops.push(u1);
        ops.push(u2);
        gamma = next;
        iterations += 1;
    }
    ops.extend(step2_finisher(gamma, params)?);
    Ok(Staircase {
        params: *params,
        iterations,
        ops,
    })
}

fn conjugate_by_x(o: &LocalOperator) -> Result<LocalOperator> {
    let xx = linalg::kron(
        &linalg::from_real_rows(2, &[0.0, 1.0, 1.0, 0.0])?,
        &linalg::from_real_rows(2, &[0.0, 1.0, 1.0, 0.0])?,
    );
    LocalOperator::new(o.qubits().to_vec(), &xx * o.matrix() * &xx)
}

/// `|000⟩ → |111⟩`: the half staircase followed by its mirror image under
/// `X⊗X⊗X`, inverted.
pub fn staircase_full(params: &StaircaseParams) -> Result<Staircase> {
    let half = staircase_half(params)?;
    let mut ops = half.ops.clone();
    for o in half.ops.iter().rev() {
        ops.push(conjugate_by_x(o)?.adjoint());
    }
    Ok(Staircase {
        params: *params,
        iterations: 2 * half.iterations,
        ops,
    })
}

/// One row of a `Δ` sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub delta: f64,
    pub m: usize,
    pub max_overlap: f64,
    pub final_distance: f64,
}

/// Endpoints `|000⟩`, `|111⟩` and their projectors.
pub fn ghz_endpoints() -> (StateVector, StateVector, Projector, Projector) {
    let v = StateVector::from_bits("000").expect("valid bits");
    let w = StateVector::from_bits("111").expect("valid bits");
    let ps = Projector::onto_states(3, core::slice::from_ref(&v)).expect("rank one");
    let pt = Projector::onto_states(3, core::slice::from_ref(&w)).expect("rank one");
    (v, w, ps, pt)
}

/// Builds the full staircase for `delta` and measures it.
pub fn staircase_row(delta: f64) -> Result<(Staircase, TraversalReport, SweepRow)> {
    let params = StaircaseParams::new(delta)?;
    let stairs = staircase_full(&params)?;
    let (v, w, ps, pt) = ghz_endpoints();
    let report = traversal_report(&v, &w, &stairs.ops, &ps, &pt)?;
    let row = SweepRow {
        delta,
        m: stairs.ops.len(),
        max_overlap: report.max_overlap,
        final_distance: report.eps,
    };
    Ok((stairs, report, row))
}
