use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::{
    pixel_to_angle, quad_exponent, uniform_amplitude, EncodingResult, QuantumImage, RegisterLayout,
    Technique,
};
use crate::error::{Error, Result};
use crate::qcore::{Circuit, Control, Gate, StateVector};

pub(crate) fn check_angles(thetas: &[f64]) -> Result<()> {
    if let Some((i, t)) = thetas
        .iter()
        .enumerate()
        .find(|(_, t)| !(0.0..=FRAC_PI_2).contains(*t))
    {
        return Err(Error::validation(format!(
            "angle {i} = {t} outside [0, pi/2]"
        )));
    }
    Ok(())
}

fn side_exponent(len: usize) -> Result<usize> {
    quad_exponent(len)
        .ok_or_else(|| Error::validation(format!("{len} pixels do not form a 2^n x 2^n image")))
}

/// `|I> = 2^-n sum_i (cos t_i |0> + sin t_i |1>) |i>` with the color qubit
/// leading, so index `c * 4^n + i` holds the `c` branch of pixel `i`.
pub fn frqi_ideal(thetas: &[f64]) -> Result<StateVector> {
    let n = side_exponent(thetas.len())?;
    check_angles(thetas)?;
    let scale = uniform_amplitude(2 * n);
    let cos = thetas.iter().map(|t| Complex64::new(scale * t.cos(), 0.0));
    let sin = thetas.iter().map(|t| Complex64::new(scale * t.sin(), 0.0));
    StateVector::from_amplitudes(cos.chain(sin).collect())
}

/// Hadamards on the position register, then one multi-controlled `Ry(2 t_i)`
/// per pixel on the color qubit, conditioned on the position pattern `i`.
pub fn frqi_circuit(thetas: &[f64]) -> Result<Circuit> {
    let n = side_exponent(thetas.len())?;
    check_angles(thetas)?;
    let position: Vec<usize> = (1..=2 * n).collect();
    let mut c = Circuit::new(1 + 2 * n)?;
    for &q in &position {
        c.push(Gate::H(q))?;
    }
    for (i, &t) in thetas.iter().enumerate() {
        c.push(Gate::Mcry {
            controls: Control::pattern(&position, i),
            target: 0,
            angle: 2.0 * t,
        })?;
    }
    Ok(c)
}

pub fn frqi(thetas: &[f64]) -> Result<EncodingResult> {
    let n = side_exponent(thetas.len())?;
    Ok(EncodingResult {
        technique: Technique::Frqi,
        circuit: frqi_circuit(thetas)?,
        ideal: frqi_ideal(thetas)?,
        layout: RegisterLayout::contiguous(1, 2 * n),
        position_colors: None,
    })
}

/// Per-sample angles of an image, scaled by its maximum representable value.
pub fn image_angles(img: &QuantumImage) -> Result<Vec<f64>> {
    img.pixels()
        .iter()
        .map(|&p| pixel_to_angle(p, img.max_value()))
        .collect()
}

/// FRQI encoding of a square power-of-two gray image.
pub fn frqi_image(img: &QuantumImage) -> Result<EncodingResult> {
    if !img.is_gray() {
        return Err(Error::validation(
            "FRQI encodes a single gray channel; use MCQI or a bit plane for RGB",
        ));
    }
    if img.square_power_of_two().is_none() {
        return Err(Error::validation(format!(
            "FRQI needs a 2^n x 2^n image, got {}x{}",
            img.width(),
            img.height()
        )));
    }
    frqi(&image_angles(img)?)
}
