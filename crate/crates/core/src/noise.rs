//! Finite-shot sampling and Monte-Carlo noise trajectories.
//!
//! Shot `t` draws all of its randomness from a ChaCha8 stream keyed by
//! `(seed, t)`, so histograms are reproducible and independent of how the
//! shots are scheduled across threads.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{bit_string, Circuit, Pauli, StateVector};

/// Default shot count (the hardware maximum on the reference devices).
pub const DEFAULT_SHOTS: u64 = 8192;

/// Probabilities at or below this are treated as forbidden outcomes.
pub const FORBIDDEN_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct NoiseModel {
    /// Independent flip probability of every measured bit.
    pub readout_flip: f64,
    /// Probability of a random Pauli on a random touched qubit after each gate.
    pub depolarizing: f64,
}

impl NoiseModel {
    pub const NOISELESS: NoiseModel = NoiseModel {
        readout_flip: 0.0,
        depolarizing: 0.0,
    };

    pub fn new(readout_flip: f64, depolarizing: f64) -> Result<Self> {
        for (name, p) in [
            ("readout flip", readout_flip),
            ("depolarizing", depolarizing),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::validation(format!(
                    "{name} probability {p} outside [0, 1]"
                )));
            }
        }
        Ok(NoiseModel {
            readout_flip,
            depolarizing,
        })
    }
}

/// Measurement counts keyed by MSB-first bit string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Histogram {
    pub num_bits: usize,
    pub shots: u64,
    pub counts: BTreeMap<String, u64>,
}

impl Histogram {
    fn from_indices(num_bits: usize, shots: u64, counts: HashMap<usize, u64>) -> Self {
        let counts = counts
            .into_iter()
            .map(|(i, c)| (bit_string(i, num_bits), c))
            .collect();
        Histogram {
            num_bits,
            shots,
            counts,
        }
    }

    pub fn count(&self, bits: &str) -> u64 {
        self.counts.get(bits).copied().unwrap_or(0)
    }

    pub fn count_index(&self, index: usize) -> u64 {
        self.count(&bit_string(index, self.num_bits))
    }

    /// Relative frequency of every basis index.
    pub fn frequencies(&self) -> Vec<f64> {
        let mut f = vec![0.0; 1usize << self.num_bits];
        for (bits, &c) in &self.counts {
            let idx = usize::from_str_radix(bits, 2).unwrap_or(0);
            f[idx] = c as f64 / self.shots as f64;
        }
        f
    }

    /// Most frequent outcome; ties resolve to the smallest bit string.
    pub fn modal(&self) -> Option<(&str, u64)> {
        self.counts
            .iter()
            .fold(None, |best: Option<(&str, u64)>, (k, &c)| match best {
                Some((_, bc)) if bc >= c => best,
                _ => Some((k.as_str(), c)),
            })
    }

    /// `0.5 * sum |f_k - p_k|` against exact probabilities.
    pub fn total_variation(&self, probs: &[f64]) -> f64 {
        let f = self.frequencies();
        0.5 * f.iter().zip(probs).map(|(a, b)| (a - b).abs()).sum::<f64>()
    }

    /// `bits,count` rows in bit-string order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bits,count\n");
        for (bits, c) in &self.counts {
            out.push_str(&format!("{bits},{c}\n"));
        }
        out
    }

    /// Fraction of shots landing on outcomes whose exact probability is zero.
    pub fn forbidden_mass(&self, probs: &[f64]) -> f64 {
        forbidden_bins(probs)
            .into_iter()
            .map(|i| self.count_index(i))
            .sum::<u64>() as f64
            / self.shots as f64
    }
}

/// Basis indices with vanishing exact probability.
pub fn forbidden_bins(probs: &[f64]) -> Vec<usize> {
    probs
        .iter()
        .enumerate()
        .filter(|(_, &p)| p <= FORBIDDEN_EPS)
        .map(|(i, _)| i)
        .collect()
}

fn shot_rng(seed: u64, shot: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shot);
    rng
}

struct Sampler {
    cdf: Vec<f64>,
    last_supported: usize,
}

impl Sampler {
    fn new(state: &StateVector) -> Self {
        let mut acc = 0.0;
        let mut last_supported = 0;
        let cdf = state
            .probabilities()
            .into_iter()
            .enumerate()
            .map(|(i, p)| {
                if p > 0.0 {
                    last_supported = i;
                }
                acc += p;
                acc
            })
            .collect();
        Sampler {
            cdf,
            last_supported,
        }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> usize {
        let total = *self.cdf.last().unwrap_or(&1.0);
        let u = rng.random::<f64>() * total;
        self.cdf
            .partition_point(|&c| c <= u)
            .min(self.last_supported)
    }
}

fn check_shots(shots: u64) -> Result<()> {
    if shots == 0 {
        return Err(Error::validation("shot count must be at least 1"));
    }
    Ok(())
}

fn tally<F>(shots: u64, shot: F) -> HashMap<usize, u64>
where
    F: Fn(u64) -> usize + Sync,
{
    (0..shots)
        .into_par_iter()
        .fold(HashMap::new, |mut m, t| {
            *m.entry(shot(t)).or_insert(0) += 1;
            m
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        })
}

/// I.i.d. Born-rule draws of all qubits.
pub fn sample_shots(state: &StateVector, shots: u64, seed: u64) -> Result<Histogram> {
    check_shots(shots)?;
    let sampler = Sampler::new(state);
    let counts = tally(shots, |t| sampler.draw(&mut shot_rng(seed, t)));
    Ok(Histogram::from_indices(state.num_qubits(), shots, counts))
}

/// Noisy execution by pure-state trajectories: after every gate, with
/// probability `depolarizing`, a uniformly random X/Y/Z hits a uniformly
/// random qubit touched by that gate; each measured bit then flips with
/// probability `readout_flip`.
pub fn run_noisy(circuit: &Circuit, model: NoiseModel, shots: u64, seed: u64) -> Result<Histogram> {
    check_shots(shots)?;
    let model = NoiseModel::new(model.readout_flip, model.depolarizing)?;
    let n = circuit.num_qubits();
    let ideal = Sampler::new(&circuit.run_from_zero()?);

    let trajectory = |t: u64| -> Result<usize> {
        let mut rng = shot_rng(seed, t);
        let mut faults = Vec::new();
        if model.depolarizing > 0.0 {
            for (gi, gate) in circuit.gates().iter().enumerate() {
                if rng.random::<f64>() < model.depolarizing {
                    let pauli = [Pauli::X, Pauli::Y, Pauli::Z][rng.random_range(0..3)];
                    let touched = gate.qubits();
                    let qubit = touched[rng.random_range(0..touched.len())];
                    faults.push((gi, pauli, qubit));
                }
            }
        }
        let mut outcome = if faults.is_empty() {
            ideal.draw(&mut rng)
        } else {
            let mut state = StateVector::zero(n)?;
            let mut pending = faults.iter().peekable();
            for (gi, gate) in circuit.gates().iter().enumerate() {
                state.apply(gate)?;
                while let Some(&&(fi, pauli, q)) = pending.peek() {
                    if fi != gi {
                        break;
                    }
                    state.apply_pauli(q, pauli)?;
                    pending.next();
                }
            }
            Sampler::new(&state).draw(&mut rng)
        };
        if model.readout_flip > 0.0 {
            for q in 0..n {
                if rng.random::<f64>() < model.readout_flip {
                    outcome ^= 1 << (n - 1 - q);
                }
            }
        }
        Ok(outcome)
    };

    // gates were validated on construction, so trajectories cannot fail
    let counts = tally(shots, |t| trajectory(t).expect("validated circuit"));
    Ok(Histogram::from_indices(n, shots, counts))
}
