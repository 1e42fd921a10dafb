use crate::error::{Error, Result};

/// Which control value activates a controlled gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarity {
    /// Fires when the control qubit is `|1>`.
    One,
    /// Fires when the control qubit is `|0>`.
    Zero,
}

impl Polarity {
    pub fn from_bit(bit: u8) -> Self {
        if bit == 0 {
            Polarity::Zero
        } else {
            Polarity::One
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Polarity::One => 1,
            Polarity::Zero => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Control {
    pub qubit: usize,
    pub polarity: Polarity,
}

impl Control {
    pub fn on_one(qubit: usize) -> Self {
        Control {
            qubit,
            polarity: Polarity::One,
        }
    }

    pub fn on_zero(qubit: usize) -> Self {
        Control {
            qubit,
            polarity: Polarity::Zero,
        }
    }

    /// Controls matching the MSB-first bit pattern of `value` on `qubits`.
    pub fn pattern(qubits: &[usize], value: usize) -> Vec<Control> {
        let width = qubits.len();
        qubits
            .iter()
            .enumerate()
            .map(|(k, &q)| Control {
                qubit: q,
                polarity: Polarity::from_bit(((value >> (width - 1 - k)) & 1) as u8),
            })
            .collect()
    }
}

/// Gate IR.
///
/// `Mcry` applies `Ry(angle) = [[cos a/2, -sin a/2], [sin a/2, cos a/2]]`
/// to the target when every control matches its polarity. `ClassicalCnot`
/// is a CNOT whose control is a classical bit fixed at construction time.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    Cnot {
        control: Control,
        target: usize,
    },
    Mcx {
        controls: Vec<Control>,
        target: usize,
    },
    Mcry {
        controls: Vec<Control>,
        target: usize,
        angle: f64,
    },
    ClassicalCnot {
        bit: bool,
        target: usize,
    },
}

/// Single-qubit Pauli used for noise injection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Gate {
    /// Stable lowercase name used in resource counts and serialized circuits.
    pub fn kind(&self) -> &'static str {
        match self {
            Gate::H(_) => "h",
            Gate::X(_) => "x",
            Gate::Cnot { .. } => "cnot",
            Gate::Mcx { .. } => "mcx",
            Gate::Mcry { .. } => "mcry",
            Gate::ClassicalCnot { .. } => "classical_cnot",
        }
    }

    pub fn target(&self) -> usize {
        match *self {
            Gate::H(t) | Gate::X(t) => t,
            Gate::Cnot { target, .. }
            | Gate::Mcx { target, .. }
            | Gate::Mcry { target, .. }
            | Gate::ClassicalCnot { target, .. } => target,
        }
    }

    /// Quantum controls; empty for uncontrolled and classically controlled gates.
    pub fn controls(&self) -> &[Control] {
        match self {
            Gate::Cnot { control, .. } => std::slice::from_ref(control),
            Gate::Mcx { controls, .. } | Gate::Mcry { controls, .. } => controls,
            _ => &[],
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            Gate::Mcry { angle, .. } => Some(angle),
            _ => None,
        }
    }

    /// Every qubit the gate acts on, target first.
    pub fn qubits(&self) -> Vec<usize> {
        let mut out = vec![self.target()];
        out.extend(self.controls().iter().map(|c| c.qubit));
        out
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let target = self.target();
        if target >= num_qubits {
            return Err(Error::validation(format!(
                "{} target qubit {target} out of range for {num_qubits} qubits",
                self.kind()
            )));
        }
        let controls = self.controls();
        for (k, c) in controls.iter().enumerate() {
            if c.qubit >= num_qubits {
                return Err(Error::validation(format!(
                    "{} control qubit {} out of range for {num_qubits} qubits",
                    self.kind(),
                    c.qubit
                )));
            }
            if c.qubit == target {
                return Err(Error::validation(format!(
                    "{} qubit {target} is both target and control",
                    self.kind()
                )));
            }
            if controls[..k].iter().any(|o| o.qubit == c.qubit) {
                return Err(Error::validation(format!(
                    "{} control qubit {} listed twice",
                    self.kind(),
                    c.qubit
                )));
            }
        }
        if let Some(a) = self.angle() {
            if !a.is_finite() {
                return Err(Error::validation("rotation angle must be finite"));
            }
        }
        Ok(())
    }
}
