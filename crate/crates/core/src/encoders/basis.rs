//! Basis-state encodings: NEQR and its arbitrary-size generalization GQIR.
//!
//! Register layout is `|C^{q-1} ... C^0>|position>`; the color ket is the
//! MSB-first binary of the gray value.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{uniform_amplitude, EncodingResult, QuantumImage, RegisterLayout, Technique};
use crate::error::{Error, Result};
use crate::qcore::{Circuit, Control, Gate, StateVector, MAX_QUBITS};

/// Order of the coordinate sub-registers inside the position register.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisOrder {
    /// `|Y>|X>`.
    #[default]
    Yx,
    /// `|X>|Y>`.
    Xy,
}

/// Position-register widths `(h, w)` for an `height x width` image:
/// `ceil(log2 n)` per axis, with a single qubit for a length-1 axis.
pub fn gqir_dims(height: usize, width: usize) -> (usize, usize) {
    fn bits(n: usize) -> usize {
        if n <= 1 {
            1
        } else {
            n.next_power_of_two().trailing_zeros() as usize
        }
    }
    (bits(height), bits(width))
}

struct BasisPlan {
    color_bits: usize,
    position_bits: usize,
    /// Color for each position index; length `2^position_bits`.
    colors: Vec<u64>,
}

impl BasisPlan {
    fn num_qubits(&self) -> usize {
        self.color_bits + self.position_bits
    }

    fn check_capacity(&self) -> Result<()> {
        let n = self.num_qubits();
        if n > MAX_QUBITS {
            return Err(Error::Capacity {
                requested: n,
                cap: MAX_QUBITS,
            });
        }
        Ok(())
    }

    fn ideal(&self) -> Result<StateVector> {
        self.check_capacity()?;
        let positions = 1usize << self.position_bits;
        let amp = Complex64::new(uniform_amplitude(self.position_bits), 0.0);
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << self.num_qubits()];
        for (pos, &color) in self.colors.iter().enumerate() {
            amps[color as usize * positions + pos] = amp;
        }
        StateVector::from_amplitudes(amps)
    }

    fn circuit(&self) -> Result<Circuit> {
        self.check_capacity()?;
        let position: Vec<usize> =
            (self.color_bits..self.color_bits + self.position_bits).collect();
        let mut c = Circuit::new(self.num_qubits())?;
        for &q in &position {
            c.push(Gate::H(q))?;
        }
        for (pos, &color) in self.colors.iter().enumerate() {
            for k in 0..self.color_bits {
                // qubit k holds bit (color_bits - 1 - k)
                if (color >> (self.color_bits - 1 - k)) & 1 == 1 {
                    c.push(Gate::Mcx {
                        controls: Control::pattern(&position, pos),
                        target: k,
                    })?;
                }
            }
        }
        Ok(c)
    }

    fn encode(self, technique: Technique) -> Result<EncodingResult> {
        Ok(EncodingResult {
            technique,
            circuit: self.circuit()?,
            ideal: self.ideal()?,
            layout: RegisterLayout::contiguous(self.color_bits, self.position_bits),
            position_colors: Some(self.colors),
        })
    }
}

fn neqr_plan(img: &QuantumImage) -> Result<BasisPlan> {
    let (_, n) = img.square_power_of_two().ok_or_else(|| {
        Error::validation(format!(
            "NEQR needs a 2^n x 2^n image, got {}x{} (use GQIR for other sizes)",
            img.width(),
            img.height()
        ))
    })?;
    let (colors, color_bits) = img.packed_colors();
    Ok(BasisPlan {
        color_bits,
        position_bits: 2 * n,
        colors,
    })
}

fn gqir_plan(img: &QuantumImage, order: AxisOrder) -> Result<BasisPlan> {
    let (h, w) = gqir_dims(img.height(), img.width());
    let (packed, color_bits) = img.packed_colors();
    let plan_qubits = h + w + color_bits;
    if plan_qubits > MAX_QUBITS {
        return Err(Error::Capacity {
            requested: plan_qubits,
            cap: MAX_QUBITS,
        });
    }
    let colors = (0..1usize << (h + w))
        .map(|pos| {
            let (y, x) = match order {
                AxisOrder::Yx => (pos >> w, pos & ((1 << w) - 1)),
                AxisOrder::Xy => (pos & ((1 << h) - 1), pos >> h),
            };
            if y < img.height() && x < img.width() {
                packed[y * img.width() + x]
            } else {
                0
            }
        })
        .collect();
    Ok(BasisPlan {
        color_bits,
        position_bits: h + w,
        colors,
    })
}

/// `|I> = 2^-n sum |f(Y,X)>|YX>` for a `2^n x 2^n` image.
pub fn neqr_ideal(img: &QuantumImage) -> Result<StateVector> {
    neqr_plan(img)?.ideal()
}

/// Hadamards on the position register, then one position-controlled X per
/// set color bit of every pixel.
pub fn neqr_circuit(img: &QuantumImage) -> Result<Circuit> {
    neqr_plan(img)?.circuit()
}

pub fn neqr(img: &QuantumImage) -> Result<EncodingResult> {
    neqr_plan(img)?.encode(Technique::Neqr)
}

/// GQIR ideal state; positions outside the image carry color 0.
pub fn gqir_ideal(img: &QuantumImage, order: AxisOrder) -> Result<StateVector> {
    gqir_plan(img, order)?.ideal()
}

pub fn gqir_circuit(img: &QuantumImage, order: AxisOrder) -> Result<Circuit> {
    gqir_plan(img, order)?.circuit()
}

pub fn gqir(img: &QuantumImage, order: AxisOrder) -> Result<EncodingResult> {
    gqir_plan(img, order)?.encode(Technique::Gqir)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::equal_up_to_phase;

    fn mcx_count(c: &Circuit) -> usize {
        c.gates().iter().filter(|g| g.kind() == "mcx").count()
    }

    fn h_count(c: &Circuit) -> usize {
        c.gates().iter().filter(|g| g.kind() == "h").count()
    }

    fn nonzero(s: &StateVector) -> Vec<(usize, f64)> {
        s.amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > 0.0)
            .map(|(i, a)| (i, a.re))
            .collect()
    }

    #[test]
    fn neqr_example_support() {
        let img = QuantumImage::gray(2, 2, 8, vec![0, 100, 200, 255]).unwrap();
        let s = neqr_ideal(&img).unwrap();
        assert_eq!(s.num_qubits(), 10);
        assert_eq!(
            nonzero(&s),
            vec![(0, 0.5), (401, 0.5), (802, 0.5), (1023, 0.5)]
        );
        let c = neqr_circuit(&img).unwrap();
        assert_eq!((h_count(&c), mcx_count(&c)), (2, 14));
        assert!(c
            .gates()
            .iter()
            .filter(|g| g.kind() == "mcx")
            .all(|g| g.controls().len() == 2));
    }

    #[test]
    fn neqr_zero_and_single_pixel() {
        let img = QuantumImage::gray(2, 2, 8, vec![0; 4]).unwrap();
        assert_eq!(
            nonzero(&neqr_ideal(&img).unwrap()),
            vec![(0, 0.5), (1, 0.5), (2, 0.5), (3, 0.5)]
        );
        assert_eq!(mcx_count(&neqr_circuit(&img).unwrap()), 0);

        let one = QuantumImage::gray(1, 1, 8, vec![77]).unwrap();
        let e = neqr(&one).unwrap();
        assert_eq!(nonzero(&e.ideal), vec![(77, 1.0)]);
        assert_eq!(e.circuit.run_from_zero().unwrap(), e.ideal);
    }

    #[test]
    fn neqr_single_bright_pixel() {
        let img = QuantumImage::gray(2, 2, 8, vec![0, 0, 0, 255]).unwrap();
        let c = neqr_circuit(&img).unwrap();
        assert_eq!((h_count(&c), mcx_count(&c)), (2, 8));
        let on_11 = Control::pattern(&[8, 9], 0b11);
        assert!(c
            .gates()
            .iter()
            .filter(|g| g.kind() == "mcx")
            .all(|g| g.controls() == on_11.as_slice()));
    }

    #[test]
    fn neqr_rejects_ragged() {
        let img = QuantumImage::gray(3, 1, 8, vec![1, 2, 3]).unwrap();
        assert!(matches!(neqr(&img), Err(Error::Validation(_))));
    }

    #[test]
    fn gqir_dimension_rule() {
        assert_eq!(gqir_dims(2, 2), (1, 1));
        assert_eq!(gqir_dims(1, 3), (1, 2));
        assert_eq!(gqir_dims(1, 1), (1, 1));
        assert_eq!(gqir_dims(5, 8), (3, 3));
    }

    #[test]
    fn gqir_2x2_colors() {
        let img = QuantumImage::gray(2, 2, 8, vec![130, 65, 147, 17]).unwrap();
        let e = gqir(&img, AxisOrder::Yx).unwrap();
        assert_eq!(e.circuit.num_qubits(), 10);
        assert_eq!((h_count(&e.circuit), mcx_count(&e.circuit)), (2, 10));
        let expect: Vec<(usize, f64)> = [0b10000010usize, 0b01000001, 0b10010011, 0b00010001]
            .iter()
            .enumerate()
            .map(|(pos, &c)| (c * 4 + pos, 0.5))
            .collect();
        let mut got = nonzero(&e.ideal);
        got.sort_by_key(|p| p.0 & 3);
        assert_eq!(got, expect);
    }

    #[test]
    fn gqir_one_by_three_x_major() {
        let img = QuantumImage::gray(3, 1, 8, vec![2, 1, 3]).unwrap();
        let e = gqir(&img, AxisOrder::Xy).unwrap();
        assert_eq!(e.circuit.num_qubits(), 11);
        assert_eq!((h_count(&e.circuit), mcx_count(&e.circuit)), (3, 4));
        let amp = 1.0 / 8f64.sqrt();
        let nz = nonzero(&e.ideal);
        assert_eq!(nz.len(), 8);
        for (idx, a) in nz {
            assert!((a - amp).abs() < 1e-15);
            let (color, pos) = (idx >> 3, idx & 7);
            let expected = match pos {
                0b000 => 2,
                0b010 => 1,
                0b100 => 3,
                _ => 0,
            };
            assert_eq!(color, expected, "position {pos:03b}");
        }
    }

    #[test]
    fn gqir_empty_single_pixel() {
        let img = QuantumImage::gray(1, 1, 8, vec![0]).unwrap();
        let c = gqir_circuit(&img, AxisOrder::Yx).unwrap();
        assert_eq!((h_count(&c), mcx_count(&c)), (2, 0));
    }

    #[test]
    fn circuits_match_ideal() {
        let img = QuantumImage::gray(3, 2, 3, vec![1, 7, 0, 5, 2, 6]).unwrap();
        for order in [AxisOrder::Yx, AxisOrder::Xy] {
            let e = gqir(&img, order).unwrap();
            assert!(equal_up_to_phase(
                &e.circuit.run_from_zero().unwrap(),
                &e.ideal,
                1e-12
            ));
        }
    }

    #[test]
    fn rgb_packs_into_color_register() {
        let img = QuantumImage::new(2, 2, 3, 2, vec![0, 1, 2, 3, 3, 3, 1, 0, 0, 2, 2, 2]).unwrap();
        let e = neqr(&img).unwrap();
        assert_eq!(e.layout.color.len(), 6);
        assert!(equal_up_to_phase(
            &e.circuit.run_from_zero().unwrap(),
            &e.ideal,
            1e-12
        ));
    }
}
