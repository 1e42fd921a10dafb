use super::gate::Gate;
use super::state::{StateVector, MAX_QUBITS};
use crate::error::{Error, Result};

/// Ordered gate list on a fixed register.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Result<Self> {
        if num_qubits > MAX_QUBITS {
            return Err(Error::Capacity {
                requested: num_qubits,
                cap: MAX_QUBITS,
            });
        }
        Ok(Circuit {
            num_qubits,
            gates: Vec::new(),
        })
    }

    /// Builds a circuit from a gate list, validating every gate.
    pub fn from_gates(num_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Circuit::new(num_qubits)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Left fold of [`StateVector::apply`] over the gates.
    pub fn run(&self, initial: &StateVector) -> Result<StateVector> {
        if initial.num_qubits() != self.num_qubits {
            return Err(Error::validation(format!(
                "circuit has {} qubits but the initial state has {}",
                self.num_qubits,
                initial.num_qubits()
            )));
        }
        let mut state = initial.clone();
        for g in &self.gates {
            state.apply(g)?;
        }
        Ok(state)
    }

    /// Runs the circuit on `|0...0>`.
    pub fn run_from_zero(&self) -> Result<StateVector> {
        self.run(&StateVector::zero(self.num_qubits)?)
    }
}
