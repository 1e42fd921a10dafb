use super::{gqir_dims, EncodingResult, QuantumImage, RegisterLayout, Technique};
use crate::error::{Error, Result};
use crate::qcore::{Circuit, Gate, StateVector, MAX_QUBITS};

fn bits_value(bits: &[bool]) -> usize {
    bits.iter()
        .fold(0usize, |acc, &b| (acc << 1) | usize::from(b))
}

/// Copies each classical bit onto its own `|0>` ancilla through a
/// classically controlled CNOT. Clear bits leave their ancilla untouched.
pub fn qbip_encode(bits: &[bool]) -> Result<EncodingResult> {
    encode_with_layout(bits, RegisterLayout::contiguous(bits.len(), 0), None)
}

fn encode_with_layout(
    bits: &[bool],
    layout: RegisterLayout,
    position_colors: Option<Vec<u64>>,
) -> Result<EncodingResult> {
    let m = bits.len();
    if m > MAX_QUBITS {
        return Err(Error::Capacity {
            requested: m,
            cap: MAX_QUBITS,
        });
    }
    let gates = bits
        .iter()
        .enumerate()
        .map(|(target, &bit)| Gate::ClassicalCnot { bit, target })
        .collect();
    Ok(EncodingResult {
        technique: Technique::Qbip,
        circuit: Circuit::from_gates(m, gates)?,
        ideal: StateVector::basis(m, bits_value(bits))?,
        layout,
        position_colors,
    })
}

/// Bits of pixel `(y, x)`: the `Y` then `X` coordinates (widths from
/// [`gqir_dims`]) followed by each channel's sample, all MSB-first.
pub fn qbip_pixel_bits(img: &QuantumImage, y: usize, x: usize) -> Result<Vec<bool>> {
    if y >= img.height() || x >= img.width() {
        return Err(Error::validation(format!(
            "pixel ({y}, {x}) outside {}x{} image",
            img.height(),
            img.width()
        )));
    }
    let (h, w) = gqir_dims(img.height(), img.width());
    let q = img.bit_depth() as usize;
    let mut bits = Vec::with_capacity(h + w + q * img.channels());
    let mut push = |value: u64, width: usize| {
        bits.extend((0..width).rev().map(|k| (value >> k) & 1 == 1));
    };
    push(y as u64, h);
    push(x as u64, w);
    for ch in 0..img.channels() {
        push(u64::from(img.sample(y, x, ch)), q);
    }
    Ok(bits)
}

/// QBIP register for one pixel, with the coordinate qubits recorded as the
/// position part of the layout.
pub fn qbip_pixel(img: &QuantumImage, y: usize, x: usize) -> Result<EncodingResult> {
    let bits = qbip_pixel_bits(img, y, x)?;
    let (h, w) = gqir_dims(img.height(), img.width());
    let color_bits = bits.len() - h - w;
    let layout = RegisterLayout {
        position: (0..h + w).collect(),
        color: (h + w..bits.len()).collect(),
    };
    let (packed, _) = img.packed_colors();
    let color = packed[y * img.width() + x];
    debug_assert_eq!(color_bits, img.bit_depth() as usize * img.channels());
    encode_with_layout(&bits, layout, Some(vec![color]))
}

/// Reads the bits back out of an exact computational basis state.
pub fn qbip_decode(state: &StateVector) -> Option<Vec<bool>> {
    let (index, p) = state
        .probabilities()
        .into_iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(&b.1))?;
    if p != 1.0 {
        return None;
    }
    let n = state.num_qubits();
    Some((0..n).map(|q| (index >> (n - 1 - q)) & 1 == 1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Vec<bool> {
        s.bytes().map(|b| b == b'1').collect()
    }

    #[test]
    fn rgb_pixel_ket() {
        let e = qbip_encode(&bits("01111011")).unwrap();
        assert_eq!(e.ideal, StateVector::basis(8, 0b01111011).unwrap());
        assert_eq!(e.circuit.run_from_zero().unwrap(), e.ideal);
        assert_eq!(e.circuit.len(), 8);
    }

    #[test]
    fn zeros_and_single_one() {
        let e = qbip_encode(&[false; 8]).unwrap();
        assert_eq!(
            e.circuit.run_from_zero().unwrap(),
            StateVector::zero(8).unwrap()
        );
        let e = qbip_encode(&[true]).unwrap();
        assert_eq!(
            e.circuit.run_from_zero().unwrap(),
            StateVector::basis(1, 1).unwrap()
        );
    }

    #[test]
    fn pixel_bits_from_rgb_image() {
        let img = QuantumImage::new(2, 2, 3, 2, vec![0, 1, 2, 3, 2, 3, 1, 0, 3, 2, 3, 0]).unwrap();
        assert_eq!(qbip_pixel_bits(&img, 0, 1).unwrap(), bits("01111011"));
        let e = qbip_pixel(&img, 0, 1).unwrap();
        assert_eq!(e.layout.position, vec![0, 1]);
        assert_eq!(e.layout.color, (2..8).collect::<Vec<_>>());
        assert!(qbip_pixel_bits(&img, 2, 0).is_err());
    }

    #[test]
    fn decode_round_trip() {
        let b = bits("1001101");
        let e = qbip_encode(&b).unwrap();
        assert_eq!(qbip_decode(&e.circuit.run_from_zero().unwrap()), Some(b));
        let plus = StateVector::from_real(&[0.6, 0.8]).unwrap();
        assert_eq!(qbip_decode(&plus), None);
    }

    #[test]
    fn capacity() {
        assert!(matches!(
            qbip_encode(&[true; MAX_QUBITS + 1]),
            Err(Error::Capacity { .. })
        ));
    }
}
