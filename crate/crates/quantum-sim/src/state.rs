use num_complex::Complex64;
use qubo_core::IsingModel;

use crate::{AnnealSchedule, Result, SimError};

/// Register cap: 2^24 amplitudes bounds memory at a few hundred MB.
pub const MAX_QUBITS: usize = 24;

/// A pure state over `k` qubits: `2^k` complex amplitudes, basis index bit `j`
/// holding qubit `j` (least significant first).
#[derive(Debug, Clone)]
pub struct Statevector {
    k: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// Uniform superposition `|+⟩^⊗k`, the mixer ground state.
    pub fn plus_state(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(SimError::EmptyRegister);
        }
        if k > MAX_QUBITS {
            return Err(SimError::TooManyQubits { k, max: MAX_QUBITS });
        }
        let dim = 1usize << k;
        let amp = Complex64::new((dim as f64).sqrt().recip(), 0.0);
        Ok(Self {
            k,
            amps: vec![amp; dim],
        })
    }

    /// Computational basis state `|b⟩`.
    pub fn basis_state(k: usize, b: u64) -> Result<Self> {
        if k == 0 {
            return Err(SimError::EmptyRegister);
        }
        if k > MAX_QUBITS {
            return Err(SimError::TooManyQubits { k, max: MAX_QUBITS });
        }
        let dim = 1usize << k;
        let mut amps = vec![Complex64::ZERO; dim];
        amps[(b as usize) & (dim - 1)] = Complex64::ONE;
        Ok(Self { k, amps })
    }

    /// Arbitrary amplitudes; the caller keeps them normalised.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(SimError::EmptyRegister);
        }
        let k = dim.trailing_zeros() as usize;
        if k == 0 {
            return Err(SimError::EmptyRegister);
        }
        Ok(Self { k, amps })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// `Σ_b |amps_b|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Measurement probabilities `|amps_b|²`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Diagonal cost evolution: multiply each amplitude by `exp(−i·gamma·E(b))`
    /// with `E(b)` the Ising energy of basis state `b`, offset included.
    pub fn apply_cost_layer(&mut self, model: &IsingModel, gamma: f64) -> Result<()> {
        if model.k() != self.k {
            return Err(SimError::DimensionMismatch {
                model_k: model.k(),
                state_k: self.k,
            });
        }
        let energies = basis_energies(model);
        self.apply_phases(&energies, gamma);
        Ok(())
    }

    /// Phase pass over precomputed basis energies. `run_circuit` computes the
    /// energy table once and reuses it for every layer.
    pub fn apply_phases(&mut self, energies: &[f64], gamma: f64) {
        debug_assert_eq!(energies.len(), self.amps.len());
        for (amp, &e) in self.amps.iter_mut().zip(energies) {
            *amp *= Complex64::cis(-gamma * e);
        }
    }

    /// Mixer evolution `exp(−i·beta·H_M)` with `H_M = −Σ_j X_j`, the
    /// Hamiltonian whose ground state is `|+⟩^⊗k`. Factorises into the exact
    /// per-qubit 2×2 rotation `[[cos β, i sin β], [i sin β, cos β]]`; the sign
    /// is what makes the falling-beta schedule anneal toward the cost
    /// minimum rather than the maximum.
    pub fn apply_mixer_layer(&mut self, beta: f64) {
        let c = beta.cos();
        let ms = Complex64::new(0.0, beta.sin());
        let dim = self.amps.len();
        for j in 0..self.k {
            let step = 1usize << j;
            let mut base = 0;
            while base < dim {
                for lo in base..base + step {
                    let hi = lo + step;
                    let a0 = self.amps[lo];
                    let a1 = self.amps[hi];
                    self.amps[lo] = c * a0 + ms * a1;
                    self.amps[hi] = ms * a0 + c * a1;
                }
                base += step << 1;
            }
        }
    }

    /// Exact per-qubit expectation `P(bit j = 1) = Σ_{b: bit j set} |amps_b|²`,
    /// normalised by the state's norm.
    ///
    /// Both sums run pairwise over power-of-two blocks, so states with equal
    /// probability mass on both bit values (the plus state in particular)
    /// come out at exactly 0.5 rather than 0.5 ± rounding.
    pub fn qubit_expectations(&self) -> Vec<f64> {
        let probs = self.probabilities();
        let total = pairwise_sum(&probs);
        if total == 0.0 {
            return vec![0.0; self.k];
        }
        (0..self.k)
            .map(|j| {
                let ones: Vec<f64> = probs
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| (b >> j) & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect();
                (pairwise_sum(&ones) / total).clamp(0.0, 1.0)
            })
            .collect()
    }
}

fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}

/// Ising energy of every basis state, one sequential pass per stored term.
pub fn basis_energies(model: &IsingModel) -> Vec<f64> {
    let dim = 1usize << model.k();
    let mut energies = vec![model.offset(); dim];
    for (i, &h) in model.fields().iter().enumerate() {
        if h == 0.0 {
            continue;
        }
        for (b, e) in energies.iter_mut().enumerate() {
            // bit 0 → spin +1
            *e += if (b >> i) & 1 == 0 { h } else { -h };
        }
    }
    for (i, j, v) in model.couplings() {
        for (b, e) in energies.iter_mut().enumerate() {
            let parity = ((b >> i) ^ (b >> j)) & 1;
            *e += if parity == 0 { v } else { -v };
        }
    }
    energies
}

/// Run the trotterised QAOA circuit: start from `|+⟩^⊗k` and apply layers
/// `m = 1..=depth`, each a cost phase at `gamma_m` followed by a mixer at
/// `beta_m`.
pub fn run_circuit(
    model: &IsingModel,
    schedule: &AnnealSchedule,
    depth: usize,
) -> Result<Statevector> {
    if depth == 0 || depth > schedule.p() {
        return Err(SimError::DepthOutOfRange {
            depth,
            p: schedule.p(),
        });
    }
    let mut state = Statevector::plus_state(model.k())?;
    let energies = basis_energies(model);
    for m in 1..=depth {
        let (beta, gamma) = schedule.layer(m);
        state.apply_phases(&energies, gamma);
        state.apply_mixer_layer(beta);
    }
    Ok(state)
}
