//! Dense statevector simulator.
//!
//! Basis labels are big-endian: qubit 0 is the most significant bit of the
//! amplitude index, so a register written `|q0 q1 ... q(n-1)>` maps directly
//! to the binary expansion of its index.

mod circuit;
mod gate;
mod state;

pub use circuit::Circuit;
pub use gate::{Control, Gate, Pauli, Polarity};
pub use state::{BlochAngles, StateVector, MAX_QUBITS};

/// Bit mask selecting `qubit` in an index of an `n`-qubit register.
#[inline]
pub(crate) fn qubit_mask(num_qubits: usize, qubit: usize) -> usize {
    1usize << (num_qubits - 1 - qubit)
}

/// Value (0 or 1) of `qubit` in basis index `index`.
#[inline]
pub fn bit_of(index: usize, num_qubits: usize, qubit: usize) -> u8 {
    ((index >> (num_qubits - 1 - qubit)) & 1) as u8
}

/// Renders `index` as an `width`-character MSB-first bit string.
pub fn bit_string(index: usize, width: usize) -> String {
    if width == 0 {
        return String::new();
    }
    format!("{index:0width$b}")
}
