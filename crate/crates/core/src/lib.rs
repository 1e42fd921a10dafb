//! Quantum image representations on an exact statevector simulator.
//!
//! Five encodings of a classical image into a qubit register are provided,
//! each as a gate-level [`Circuit`] together with an independently built
//! ideal [`StateVector`]:
//!
//! - FRQI: pixel angles on one color qubit entangled with the position register
//! - NEQR: the binary gray value on `q` color qubits
//! - GQIR: NEQR generalized to arbitrary `H x W` via ceiling-log position registers
//! - MCQI: three channel angles plus a constant alpha slot on a 3-qubit color register
//! - QBIP: classical bits copied onto `|0>` ancillas by classically controlled CNOTs
//!
//! The [`analysis`] module audits the resulting states (computational-basis
//! checks, reduced density matrices, post-selection, outcome tables) and
//! [`noise`] samples finite-shot histograms under readout and depolarizing
//! noise.
//!
//! ```
//! use qimg_core::encoders::{frqi, pixel_to_angle};
//!
//! let thetas: Vec<f64> = [0, 85, 170, 255]
//!     .iter()
//!     .map(|&p| pixel_to_angle(p, 255).unwrap())
//!     .collect();
//! let enc = frqi(&thetas).unwrap();
//! let out = enc.circuit.run_from_zero().unwrap();
//! assert!((out.amplitudes()[1].re - 0.4330127).abs() < 1e-6);
//! ```

pub mod analysis;
pub mod encoders;
mod error;
pub mod export;
pub mod fixtures;
pub mod imageio;
pub mod noise;
pub mod qcore;

pub use error::{Error, Result};
pub use qcore::{BlochAngles, Circuit, Control, Gate, Polarity, StateVector, MAX_QUBITS};
