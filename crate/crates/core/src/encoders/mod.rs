//! Image-to-register encoders.
//!
//! Every encoder returns an [`EncodingResult`] pairing a gate-level circuit
//! with an ideal state built directly from the defining amplitude formula.
//! The two are constructed independently; running the circuit on `|0...0>`
//! must reproduce the ideal state up to global phase.

mod basis;
mod frqi;
mod image;
mod mcqi;
mod qbip;

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use basis::{
    gqir, gqir_circuit, gqir_dims, gqir_ideal, neqr, neqr_circuit, neqr_ideal, AxisOrder,
};
pub use frqi::{frqi, frqi_circuit, frqi_ideal, frqi_image, image_angles};
pub use image::{QuantumImage, MAX_BIT_DEPTH};
pub use mcqi::{mcqi, mcqi_circuit, mcqi_ideal, mcqi_image, ChannelAngles};
pub use qbip::{qbip_decode, qbip_encode, qbip_pixel, qbip_pixel_bits};

use crate::error::{Error, Result};
use crate::qcore::{Circuit, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Technique {
    Frqi,
    Neqr,
    Gqir,
    Mcqi,
    Qbip,
}

impl Technique {
    pub const ALL: [Technique; 5] = [
        Technique::Frqi,
        Technique::Neqr,
        Technique::Gqir,
        Technique::Mcqi,
        Technique::Qbip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Technique::Frqi => "frqi",
            Technique::Neqr => "neqr",
            Technique::Gqir => "gqir",
            Technique::Mcqi => "mcqi",
            Technique::Qbip => "qbip",
        }
    }
}

impl fmt::Display for Technique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Technique {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Technique::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::validation(format!("unknown technique '{s}'")))
    }
}

/// Which qubits carry color and which carry position. Position qubits are
/// listed MSB-first in the order the position index is read.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegisterLayout {
    pub color: Vec<usize>,
    pub position: Vec<usize>,
}

impl RegisterLayout {
    pub(crate) fn contiguous(color: usize, position: usize) -> Self {
        RegisterLayout {
            color: (0..color).collect(),
            position: (color..color + position).collect(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.color.len() + self.position.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EncodingResult {
    pub technique: Technique,
    pub circuit: Circuit,
    pub ideal: StateVector,
    pub layout: RegisterLayout,
    /// Classical color expected at every position index (basis encodings
    /// only: NEQR, GQIR and QBIP pixels).
    pub position_colors: Option<Vec<u64>>,
}

/// Maps a pixel value onto `[0, pi/2]` linearly: `(p / max) * pi/2`.
pub fn pixel_to_angle(p: u32, max: u32) -> Result<f64> {
    if max == 0 {
        return Err(Error::validation("maximum pixel value must be at least 1"));
    }
    if p > max {
        return Err(Error::validation(format!(
            "pixel value {p} exceeds maximum {max}"
        )));
    }
    Ok(f64::from(p) / f64::from(max) * FRAC_PI_2)
}

/// Number of four-pixel groups that must be wired by hand when an image is
/// split into FRQI tiles of four pixels per channel.
pub fn frqi_manual_access_count(width: u64, height: u64, channels: u64) -> u64 {
    (width * height * channels).div_ceil(4)
}

/// Amplitude `1 / sqrt(2^k)`, exact whenever `k` is even.
pub(crate) fn uniform_amplitude(k: usize) -> f64 {
    let half = (k / 2) as i32;
    let base = 0.5f64.powi(half);
    if k.is_multiple_of(2) {
        base
    } else {
        base * std::f64::consts::FRAC_1_SQRT_2
    }
}

/// `n` such that `len == 4^n`.
pub(crate) fn quad_exponent(len: usize) -> Option<usize> {
    (len.is_power_of_two() && len.trailing_zeros().is_multiple_of(2))
        .then(|| len.trailing_zeros() as usize / 2)
}
