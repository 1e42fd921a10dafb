use num_complex::Complex64;

use super::frqi::check_angles;
use super::{
    image_angles, quad_exponent, uniform_amplitude, EncodingResult, QuantumImage, RegisterLayout,
    Technique,
};
use crate::error::{Error, Result};
use crate::qcore::{Circuit, Control, Gate, StateVector};

/// `[theta_R, theta_G, theta_B]` of one pixel; the alpha angle is fixed at 0.
pub type ChannelAngles = [f64; 3];

/// Qubit 0 selects the cos/sin branch, qubits 1-2 index the channel
/// (R=00, G=01, B=10, alpha=11).
const CHANNEL_QUBITS: [usize; 2] = [1, 2];

fn prepare(pixels: &[ChannelAngles]) -> Result<usize> {
    let n = quad_exponent(pixels.len()).ok_or_else(|| {
        Error::validation(format!(
            "{} pixels do not form a 2^n x 2^n image",
            pixels.len()
        ))
    })?;
    check_angles(pixels.as_flattened())?;
    Ok(n)
}

/// For every position `i` the color register holds
/// `(cos R, cos G, cos B, 1, sin R, sin G, sin B, 0) / 2^(n+1)`.
pub fn mcqi_ideal(pixels: &[ChannelAngles]) -> Result<StateVector> {
    let n = prepare(pixels)?;
    let positions = pixels.len();
    let scale = uniform_amplitude(2 * n + 2);
    let mut amps = vec![Complex64::new(0.0, 0.0); 8 * positions];
    for (i, px) in pixels.iter().enumerate() {
        let slots = [
            px[0].cos(),
            px[1].cos(),
            px[2].cos(),
            1.0,
            px[0].sin(),
            px[1].sin(),
            px[2].sin(),
            0.0,
        ];
        for (color, v) in slots.into_iter().enumerate() {
            amps[color * positions + i] = Complex64::new(scale * v, 0.0);
        }
    }
    StateVector::from_amplitudes(amps)
}

/// Hadamards on the channel index and position registers, then for each
/// pixel and RGB channel a `Ry(2 theta)` on qubit 0 controlled on both.
/// The alpha slot is left at `Ry(0)`, i.e. untouched.
pub fn mcqi_circuit(pixels: &[ChannelAngles]) -> Result<Circuit> {
    let n = prepare(pixels)?;
    let position: Vec<usize> = (3..3 + 2 * n).collect();
    let mut c = Circuit::new(3 + 2 * n)?;
    for &q in CHANNEL_QUBITS.iter().chain(&position) {
        c.push(Gate::H(q))?;
    }
    for (i, px) in pixels.iter().enumerate() {
        for (k, &theta) in px.iter().enumerate() {
            let mut controls = Control::pattern(&CHANNEL_QUBITS, k);
            controls.extend(Control::pattern(&position, i));
            c.push(Gate::Mcry {
                controls,
                target: 0,
                angle: 2.0 * theta,
            })?;
        }
    }
    Ok(c)
}

pub fn mcqi(pixels: &[ChannelAngles]) -> Result<EncodingResult> {
    let n = prepare(pixels)?;
    Ok(EncodingResult {
        technique: Technique::Mcqi,
        circuit: mcqi_circuit(pixels)?,
        ideal: mcqi_ideal(pixels)?,
        layout: RegisterLayout::contiguous(3, 2 * n),
        position_colors: None,
    })
}

/// MCQI encoding of a square power-of-two image; gray images feed the same
/// angle to all three channels.
pub fn mcqi_image(img: &QuantumImage) -> Result<EncodingResult> {
    if img.square_power_of_two().is_none() {
        return Err(Error::validation(format!(
            "MCQI needs a 2^n x 2^n image, got {}x{}",
            img.width(),
            img.height()
        )));
    }
    let angles = image_angles(img)?;
    let pixels: Vec<ChannelAngles> = if img.is_gray() {
        angles.iter().map(|&t| [t; 3]).collect()
    } else {
        angles.chunks(3).map(|c| [c[0], c[1], c[2]]).collect()
    };
    mcqi(&pixels)
}
