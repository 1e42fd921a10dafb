use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use super::gate::{Control, Gate, Pauli, Polarity};
use super::qubit_mask;
use crate::error::{Error, Result};

/// Largest register the simulator will allocate (2^26 amplitudes, 1 GiB).
pub const MAX_QUBITS: usize = 26;

const NORM_TOL: f64 = 1e-9;

/// Normalized pure state of `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

/// Polar and azimuthal angles of a single-qubit state on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAngles {
    /// In `[0, pi]`.
    pub theta: f64,
    /// In `[0, 2 pi)`.
    pub phi: f64,
}

impl BlochAngles {
    /// `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`.
    pub fn to_state(self) -> StateVector {
        let a = Complex64::new((self.theta / 2.0).cos(), 0.0);
        let b = Complex64::from_polar((self.theta / 2.0).sin(), self.phi);
        StateVector {
            num_qubits: 1,
            amps: vec![a, b],
        }
    }
}

fn check_cap(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        return Err(Error::Capacity {
            requested: n,
            cap: MAX_QUBITS,
        });
    }
    Ok(())
}

impl StateVector {
    /// `|0...0>` on `n` qubits.
    pub fn zero(n: usize) -> Result<Self> {
        Self::basis(n, 0)
    }

    /// Computational basis state `|index>` on `n` qubits.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_cap(n)?;
        let dim = 1usize << n;
        if index >= dim {
            return Err(Error::validation(format!(
                "basis index {index} out of range for {n} qubits"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector {
            num_qubits: n,
            amps,
        })
    }

    /// Wraps raw amplitudes; the length must be a power of two, every entry
    /// finite and the norm 1 within 1e-9.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::validation(format!(
                "amplitude count {dim} is not a power of two"
            )));
        }
        let n = dim.trailing_zeros() as usize;
        check_cap(n)?;
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::validation("amplitudes must be finite"));
        }
        let state = StateVector {
            num_qubits: n,
            amps,
        };
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::validation(format!(
                "state norm {norm} differs from 1"
            )));
        }
        Ok(state)
    }

    /// Builds a state from real amplitudes (convenience for fixtures).
    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::from_amplitudes(amps.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Born-rule probabilities `|amp_k|^2`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Bloch angles of a one-qubit state, with the global phase chosen so the
    /// `|0>` amplitude is real and nonnegative. A vanishing `|0>` amplitude
    /// maps to the south pole `(pi, 0)`.
    pub fn bloch_angles(&self) -> Result<BlochAngles> {
        if self.num_qubits != 1 {
            return Err(Error::validation(format!(
                "Bloch angles need a single qubit, got {}",
                self.num_qubits
            )));
        }
        let (a, b) = (self.amps[0], self.amps[1]);
        let (ra, rb) = (a.norm(), b.norm());
        if ra < 1e-12 {
            return Ok(BlochAngles {
                theta: PI,
                phi: 0.0,
            });
        }
        let theta = 2.0 * rb.atan2(ra);
        let phi = if rb < 1e-12 {
            0.0
        } else {
            let rel = b * a.conj() / ra;
            rel.arg().rem_euclid(2.0 * PI)
        };
        // rem_euclid can land on 2 pi for tiny negative inputs
        let phi = if phi >= 2.0 * PI { 0.0 } else { phi };
        Ok(BlochAngles { theta, phi })
    }

    /// Applies `gate` in place.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        match gate {
            Gate::H(t) => self.apply_1q(&[], *t, Single::H),
            Gate::X(t) => self.apply_1q(&[], *t, Single::X),
            Gate::Cnot { control, target } => {
                self.apply_1q(std::slice::from_ref(control), *target, Single::X)
            }
            Gate::Mcx { controls, target } => self.apply_1q(controls, *target, Single::X),
            Gate::Mcry {
                controls,
                target,
                angle,
            } => self.apply_1q(controls, *target, Single::Ry(*angle)),
            Gate::ClassicalCnot { bit, target } => {
                if *bit {
                    self.apply_1q(&[], *target, Single::X)
                }
            }
        }
        Ok(())
    }

    /// Returns `U|psi>` for the gate's unitary.
    pub fn applied(mut self, gate: &Gate) -> Result<Self> {
        self.apply(gate)?;
        Ok(self)
    }

    pub fn apply_pauli(&mut self, qubit: usize, pauli: Pauli) -> Result<()> {
        if qubit >= self.num_qubits {
            return Err(Error::validation(format!(
                "qubit {qubit} out of range for {} qubits",
                self.num_qubits
            )));
        }
        let single = match pauli {
            Pauli::X => Single::X,
            Pauli::Y => Single::Y,
            Pauli::Z => Single::Z,
        };
        self.apply_1q(&[], qubit, single);
        Ok(())
    }

    fn apply_1q(&mut self, controls: &[Control], target: usize, op: Single) {
        let n = self.num_qubits;
        let tmask = qubit_mask(n, target);
        let (mut cmask, mut cval) = (0usize, 0usize);
        for c in controls {
            let m = qubit_mask(n, c.qubit);
            cmask |= m;
            if c.polarity == Polarity::One {
                cval |= m;
            }
        }
        let (c, s) = match op {
            Single::Ry(a) => ((a / 2.0).cos(), (a / 2.0).sin()),
            _ => (0.0, 0.0),
        };
        for i in 0..self.amps.len() {
            if i & tmask != 0 || i & cmask != cval {
                continue;
            }
            let j = i | tmask;
            let (a0, a1) = (self.amps[i], self.amps[j]);
            let (b0, b1) = match op {
                Single::H => ((a0 + a1) * FRAC_1_SQRT_2, (a0 - a1) * FRAC_1_SQRT_2),
                Single::X => (a1, a0),
                Single::Y => (Complex64::new(a1.im, -a1.re), Complex64::new(-a0.im, a0.re)),
                Single::Z => (a0, -a1),
                Single::Ry(_) => (a0 * c - a1 * s, a0 * s + a1 * c),
            };
            self.amps[i] = b0;
            self.amps[j] = b1;
        }
    }
}

#[derive(Clone, Copy)]
enum Single {
    H,
    X,
    Y,
    Z,
    Ry(f64),
}
