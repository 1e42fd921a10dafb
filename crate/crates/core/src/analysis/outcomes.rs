use serde::Serialize;

use super::{is_cbs_register, marginal_p1, post_select};
use crate::encoders::{EncodingResult, RegisterLayout, Technique};
use crate::error::{Error, Result};
use crate::qcore::{bit_string, StateVector};

/// One position of a basis-encoded image.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutcomeRow {
    /// Position pattern, MSB-first in layout order.
    pub position: String,
    /// Color bits taken from the source image.
    pub expected_color: String,
    /// `P(1)` of every qubit of the unconditioned state, position qubits first.
    pub observed_p1: Vec<f64>,
    /// Color register after post-selecting this position, when it is a basis state.
    pub post_selected: Option<String>,
    /// Probability of reading this position pattern.
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutcomeTable {
    pub technique: Technique,
    /// Labels for `observed_p1`: `P{k}` for position bits, `C{k}` for color bits.
    pub qubit_labels: Vec<String>,
    pub rows: Vec<OutcomeRow>,
}

impl OutcomeTable {
    /// CSV with one row per position; `'.'` decimals and `'\n'` line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("position,expected_color,post_selected,probability");
        for l in &self.qubit_labels {
            out.push_str(",p1_");
            out.push_str(l);
        }
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}",
                r.position,
                r.expected_color,
                r.post_selected.as_deref().unwrap_or(""),
                format_decimal(r.probability)
            ));
            for p in &r.observed_p1 {
                out.push(',');
                out.push_str(&format_decimal(*p));
            }
            out.push('\n');
        }
        out
    }
}

/// Fixed six-decimal rendering with trailing zeros trimmed (`0.25`, `0.433013`, `0`).
pub fn format_decimal(p: f64) -> String {
    let s = format!("{p:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn index_of(n: usize, assignments: impl IntoIterator<Item = (usize, usize)>) -> usize {
    assignments
        .into_iter()
        .fold(0usize, |acc, (q, bit)| acc | (bit << (n - 1 - q)))
}

fn pattern_bits(value: usize, width: usize) -> Vec<u8> {
    (0..width)
        .map(|k| ((value >> (width - 1 - k)) & 1) as u8)
        .collect()
}

/// Per-position table for NEQR and GQIR encodings: the expected color, the
/// post-selected color register, and the per-qubit marginals of the full
/// superposition.
pub fn outcome_table(enc: &EncodingResult) -> Result<OutcomeTable> {
    if !matches!(enc.technique, Technique::Neqr | Technique::Gqir) {
        return Err(Error::validation(format!(
            "outcome tables apply to NEQR and GQIR encodings, not {}",
            enc.technique
        )));
    }
    let colors = enc
        .position_colors
        .as_ref()
        .ok_or_else(|| Error::validation("encoding carries no position colors"))?;
    let layout = &enc.layout;
    let state = &enc.ideal;
    let n = state.num_qubits();
    let (m, q) = (layout.position.len(), layout.color.len());

    let mut qubit_labels = Vec::with_capacity(n);
    qubit_labels.extend((0..m).rev().map(|k| format!("P{k}")));
    qubit_labels.extend((0..q).rev().map(|k| format!("C{k}")));
    let observed_p1 = layout
        .position
        .iter()
        .chain(&layout.color)
        .map(|&qb| marginal_p1(state, qb))
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::with_capacity(1 << m);
    for (pos, &color) in colors.iter().enumerate().take(1 << m) {
        let (post_selected, probability) =
            match post_select(state, &layout.position, &pattern_bits(pos, m)) {
                Ok((cond, p)) => {
                    let verdict = is_cbs_register(&cond, 1e-12);
                    let color = verdict.basis_index.map(|idx| {
                        layout
                            .color
                            .iter()
                            .map(|&qb| {
                                if (idx >> (n - 1 - qb)) & 1 == 1 {
                                    '1'
                                } else {
                                    '0'
                                }
                            })
                            .collect::<String>()
                    });
                    (color, p)
                }
                Err(Error::ZeroProbability) => (None, 0.0),
                Err(e) => return Err(e),
            };
        rows.push(OutcomeRow {
            position: bit_string(pos, m),
            expected_color: bit_string(color as usize, q),
            observed_p1: observed_p1.clone(),
            post_selected,
            probability,
        });
    }
    Ok(OutcomeTable {
        technique: enc.technique,
        qubit_labels,
        rows,
    })
}

/// FRQI outcome per position: the magnitude of the `|1>|i>` amplitude,
/// `sin(theta_i) / 2^n` for an ideal encoding.
pub fn frqi_outcomes(state: &StateVector, layout: &RegisterLayout) -> Result<Vec<f64>> {
    if layout.color.len() != 1 || layout.num_qubits() != state.num_qubits() {
        return Err(Error::validation(
            "layout is not an FRQI register of this state",
        ));
    }
    let n = state.num_qubits();
    let m = layout.position.len();
    Ok((0..1usize << m)
        .map(|pos| {
            let bits = pattern_bits(pos, m);
            let idx = index_of(
                n,
                std::iter::once((layout.color[0], 1)).chain(
                    layout
                        .position
                        .iter()
                        .zip(&bits)
                        .map(|(&q, &b)| (q, b as usize)),
                ),
            );
            state.amplitudes()[idx].norm()
        })
        .collect())
}

/// MCQI outcome per position and RGB channel: the `sin` amplitude of that
/// channel after conditioning on the channel index, which equals
/// `sin(theta_k^i) / 2^n` for an ideal encoding (the FRQI-equivalent value).
pub fn mcqi_outcomes(state: &StateVector, layout: &RegisterLayout) -> Result<Vec<[f64; 3]>> {
    if layout.color.len() != 3 || layout.num_qubits() != state.num_qubits() {
        return Err(Error::validation(
            "layout is not an MCQI register of this state",
        ));
    }
    let n = state.num_qubits();
    let m = layout.position.len();
    let (disc, ch) = (layout.color[0], [layout.color[1], layout.color[2]]);
    let mut out = Vec::with_capacity(1 << m);
    let mut channel_weight = [0.0f64; 3];
    for (k, w) in channel_weight.iter_mut().enumerate() {
        let bits = pattern_bits(k, 2);
        *w = post_select(state, &ch, &bits)
            .map(|(_, p)| p)
            .unwrap_or(0.0);
    }
    for pos in 0..1usize << m {
        let pbits = pattern_bits(pos, m);
        let mut row = [0.0; 3];
        for (k, slot) in row.iter_mut().enumerate() {
            if channel_weight[k] == 0.0 {
                continue;
            }
            let cbits = pattern_bits(k, 2);
            let idx = index_of(
                n,
                std::iter::once((disc, 1))
                    .chain(ch.iter().zip(&cbits).map(|(&q, &b)| (q, b as usize)))
                    .chain(
                        layout
                            .position
                            .iter()
                            .zip(&pbits)
                            .map(|(&q, &b)| (q, b as usize)),
                    ),
            );
            *slot = state.amplitudes()[idx].norm() / channel_weight[k].sqrt();
        }
        out.push(row);
    }
    Ok(out)
}
