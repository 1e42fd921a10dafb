use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::StateVector;

/// Dense `dim x dim` density matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::validation(format!(
                "{} entries do not form a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        Ok(DensityMatrix { dim, entries })
    }

    /// `|psi><psi|`.
    pub fn pure(state: &StateVector) -> Self {
        let a = state.amplitudes();
        let entries = a
            .iter()
            .flat_map(|x| a.iter().map(move |y| x * y.conj()))
            .collect();
        DensityMatrix {
            dim: a.len(),
            entries,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Real diagonal: the Z-basis outcome probabilities.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i).re).collect()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// `Tr(rho^2)`; for Hermitian `rho` this is the squared Frobenius norm.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum()
    }

    pub fn max_hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(
                if self.dim == other.dim {
                    0.0
                } else {
                    f64::INFINITY
                },
                f64::max,
            )
    }
}

/// Reduced density matrix of the qubits in `keep` (in the order given; the
/// first kept qubit is the most significant bit of the reduced index).
pub fn partial_trace(state: &StateVector, keep: &[usize]) -> Result<DensityMatrix> {
    let n = state.num_qubits();
    if keep.is_empty() {
        return Err(Error::validation(
            "partial trace needs at least one kept qubit",
        ));
    }
    for (k, &q) in keep.iter().enumerate() {
        if q >= n {
            return Err(Error::validation(format!(
                "qubit {q} out of range for {n} qubits"
            )));
        }
        if keep[..k].contains(&q) {
            return Err(Error::validation(format!("qubit {q} kept twice")));
        }
    }
    let traced: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let kdim = 1usize << keep.len();
    let rdim = 1usize << traced.len();

    // amplitudes regrouped as [rest][kept]
    let mut grouped = vec![Complex64::new(0.0, 0.0); kdim * rdim];
    for (index, &amp) in state.amplitudes().iter().enumerate() {
        let gather = |qubits: &[usize]| {
            qubits
                .iter()
                .fold(0usize, |acc, &q| (acc << 1) | ((index >> (n - 1 - q)) & 1))
        };
        grouped[gather(&traced) * kdim + gather(keep)] = amp;
    }

    let mut entries = vec![Complex64::new(0.0, 0.0); kdim * kdim];
    for block in grouped.chunks(kdim) {
        for (i, a) in block.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            for (j, b) in block.iter().enumerate() {
                entries[i * kdim + j] += a * b.conj();
            }
        }
    }
    DensityMatrix::from_entries(kdim, entries)
}

/// Two-qubit reduced state of the ordered pair `(a, b)`.
pub fn pairwise_reduced(state: &StateVector, a: usize, b: usize) -> Result<DensityMatrix> {
    partial_trace(state, &[a, b])
}
