//! Audits of encoded states: computational-basis checks, marginals,
//! post-selection, fidelity and the per-position outcome tables.

mod density;
mod outcomes;

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

pub use density::{pairwise_reduced, partial_trace, DensityMatrix};
pub use outcomes::{
    format_decimal, frqi_outcomes, mcqi_outcomes, outcome_table, OutcomeRow, OutcomeTable,
};

use crate::error::{Error, Result};
use crate::qcore::{bit_of, Circuit, StateVector};

/// Tolerance for audits of exactly simulated states.
pub const EXACT_TOL: f64 = 1e-9;
/// Tolerance for audits of shot-sampled histograms.
pub const SAMPLED_TOL: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CbsVerdict {
    pub is_cbs: bool,
    /// Dominant basis index, present only when `is_cbs`.
    pub basis_index: Option<usize>,
    /// Largest probability carried by any basis state other than the dominant one.
    pub max_off_support: f64,
}

/// A register is a computational basis state when one basis index carries
/// probability at least `1 - tol`.
pub fn is_cbs_register(state: &StateVector, tol: f64) -> CbsVerdict {
    let probs = state.probabilities();
    let (top, p_top) = probs
        .iter()
        .copied()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap_or((0, 0.0));
    let max_off_support = probs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != top)
        .map(|(_, &p)| p)
        .fold(0.0, f64::max);
    let is_cbs = p_top >= 1.0 - tol;
    CbsVerdict {
        is_cbs,
        basis_index: is_cbs.then_some(top),
        max_off_support,
    }
}

/// Whether a one-qubit density matrix is within `tol` (max-entry norm) of
/// `|0><0|` or `|1><1|`.
pub fn is_cbs_qubit(rho: &DensityMatrix, tol: f64) -> Result<bool> {
    if rho.dim() != 2 {
        return Err(Error::validation(format!(
            "expected a single-qubit density matrix, got dimension {}",
            rho.dim()
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let ground = DensityMatrix::from_entries(2, vec![one, zero, zero, zero])?;
    let excited = DensityMatrix::from_entries(2, vec![zero, zero, zero, one])?;
    Ok(rho.max_abs_diff(&ground) <= tol || rho.max_abs_diff(&excited) <= tol)
}

/// Probability of reading `1` on `qubit`.
pub fn marginal_p1(state: &StateVector, qubit: usize) -> Result<f64> {
    let n = state.num_qubits();
    if qubit >= n {
        return Err(Error::validation(format!(
            "qubit {qubit} out of range for {n} qubits"
        )));
    }
    Ok(state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(i, _)| bit_of(*i, n, qubit) == 1)
        .map(|(_, a)| a.norm_sqr())
        .sum())
}

/// Conditions `state` on reading `bits` from `qubits`, returning the
/// renormalized state on the full register and the pattern probability.
pub fn post_select(
    state: &StateVector,
    qubits: &[usize],
    bits: &[u8],
) -> Result<(StateVector, f64)> {
    let n = state.num_qubits();
    if qubits.len() != bits.len() {
        return Err(Error::validation(format!(
            "{} qubits selected but {} bits given",
            qubits.len(),
            bits.len()
        )));
    }
    if let Some(&q) = qubits.iter().find(|&&q| q >= n) {
        return Err(Error::validation(format!(
            "qubit {q} out of range for {n} qubits"
        )));
    }
    let matches = |i: usize| {
        qubits
            .iter()
            .zip(bits)
            .all(|(&q, &b)| bit_of(i, n, q) == (b & 1))
    };
    let mut amps: Vec<Complex64> = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            if matches(i) {
                a
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    let p: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    if p <= 1e-24 {
        return Err(Error::ZeroProbability);
    }
    let scale = 1.0 / p.sqrt();
    amps.iter_mut().for_each(|a| *a *= scale);
    Ok((StateVector::from_amplitudes(amps)?, p))
}

/// `|<a|b>|^2`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::validation(format!(
            "cannot compare states of dimension {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    let overlap: Complex64 = a
        .amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| x.conj() * y)
        .sum();
    Ok(overlap.norm_sqr().clamp(0.0, 1.0))
}

/// Elementwise equality up to a global phase, aligned on the largest
/// amplitude of `a`.
pub fn equal_up_to_phase(a: &StateVector, b: &StateVector, tol: f64) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    let (k, ak) = a
        .amplitudes()
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm_sqr().total_cmp(&y.1.norm_sqr()))
        .expect("non-empty state");
    let bk = b.amplitudes()[k];
    if bk.norm() == 0.0 {
        return ak.norm() <= tol && b.amplitudes().iter().all(|x| x.norm() <= tol);
    }
    let phase = bk / ak / (bk / ak).norm();
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .all(|(x, y)| (x * phase - y).norm() <= tol)
}

/// Gate census of a circuit.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ResourceCount {
    pub qubits: usize,
    pub gates: usize,
    pub by_kind: BTreeMap<String, usize>,
    /// Number of quantum controls -> number of gates with that many controls.
    pub controls_histogram: BTreeMap<usize, usize>,
}

impl ResourceCount {
    pub fn count(&self, kind: &str) -> usize {
        self.by_kind.get(kind).copied().unwrap_or(0)
    }
}

pub fn resource_count(circuit: &Circuit) -> ResourceCount {
    let mut rc = ResourceCount {
        qubits: circuit.num_qubits(),
        gates: circuit.len(),
        ..Default::default()
    };
    for g in circuit.gates() {
        *rc.by_kind.entry(g.kind().to_string()).or_default() += 1;
        *rc.controls_histogram.entry(g.controls().len()).or_default() += 1;
    }
    rc
}
