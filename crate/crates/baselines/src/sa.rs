use std::collections::HashMap;
use std::sync::Mutex;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use quantum_sim::rng::{derive_seed, seeded_rng};
use qubo_core::{BinaryAssignment, QuboProblem};

/// Simulated-annealing parameters.
///
/// `beta_initial`/`beta_final` default to values derived from the problem's
/// coefficient magnitudes: `ln 2 / ΔE_max` and `ln 1000 / ΔE_min_nonzero`,
/// clipped to `[1e−3, 1e3]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SaConfig {
    pub sweeps: usize,
    pub reads: usize,
    pub beta_initial: Option<f64>,
    pub beta_final: Option<f64>,
    pub seed: u64,
}

impl Default for SaConfig {
    fn default() -> Self {
        Self {
            sweeps: 1000,
            reads: 100,
            beta_initial: None,
            beta_final: None,
            seed: 0,
        }
    }
}

impl SaConfig {
    fn fingerprint(&self) -> u64 {
        let mut h = 0x9e37_79b9_97f4_a7c1u64;
        for w in [
            self.sweeps as u64,
            self.reads as u64,
            self.beta_initial.unwrap_or(f64::NAN).to_bits(),
            self.beta_final.unwrap_or(f64::NAN).to_bits(),
            self.seed,
        ] {
            h ^= w.wrapping_add(0x517c_c1b7_2722_0a95);
            h = h.rotate_left(23).wrapping_mul(0x2545_f491_4f6c_dd1d);
        }
        h
    }
}

#[derive(Debug, Clone)]
pub struct SaResult {
    pub best: BinaryAssignment,
    pub best_objective: f64,
    /// Best objective reached within each read, in read order.
    pub read_objectives: Vec<f64>,
}

/// Flip-incremental view of a problem: per-variable diagonal plus adjacency,
/// so one proposal costs O(degree) instead of O(n²).
struct FlipState {
    diag: Vec<f64>,
    neighbors: Vec<Vec<(u32, f64)>>,
    bits: Vec<u8>,
    energy: f64,
}

impl FlipState {
    fn build(problem: &QuboProblem) -> (Vec<f64>, Vec<Vec<(u32, f64)>>) {
        let n = problem.n();
        let mut diag = vec![0.0; n];
        let mut neighbors = vec![Vec::new(); n];
        for (i, j, v) in problem.terms() {
            if i == j {
                diag[i] = v;
            } else {
                neighbors[i].push((j as u32, v));
                neighbors[j].push((i as u32, v));
            }
        }
        (diag, neighbors)
    }

    fn randomise(&mut self, offset: f64, rng: &mut ChaCha8Rng) {
        for b in &mut self.bits {
            *b = rng.random_range(0..2u8);
        }
        self.energy = offset;
        for i in 0..self.bits.len() {
            if self.bits[i] == 1 {
                self.energy += self.diag[i];
                for &(j, v) in &self.neighbors[i] {
                    if (j as usize) < i && self.bits[j as usize] == 1 {
                        self.energy += v;
                    }
                }
            }
        }
    }

    /// Energy change of flipping variable `i`.
    fn delta(&self, i: usize) -> f64 {
        let mut field = self.diag[i];
        for &(j, v) in &self.neighbors[i] {
            if self.bits[j as usize] == 1 {
                field += v;
            }
        }
        if self.bits[i] == 1 {
            -field
        } else {
            field
        }
    }

    fn flip(&mut self, i: usize, delta: f64) {
        self.bits[i] ^= 1;
        self.energy += delta;
    }

    /// One Metropolis sweep in index order; returns accepted flips.
    fn sweep(&mut self, beta: f64, rng: &mut ChaCha8Rng) -> usize {
        let mut accepted = 0;
        for i in 0..self.bits.len() {
            let d = self.delta(i);
            let accept = if d < 0.0 {
                true
            } else {
                let exponent = beta * d;
                exponent < 700.0 && rng.random::<f64>() < (-exponent).exp()
            };
            if accept {
                self.flip(i, d);
                accepted += 1;
            }
        }
        accepted
    }
}

fn derived_betas(problem: &QuboProblem) -> (f64, f64) {
    let n = problem.n();
    let mut row_mass = vec![0.0; n];
    let mut min_nonzero = f64::INFINITY;
    for (i, j, v) in problem.terms() {
        let a = v.abs();
        if a > 0.0 {
            min_nonzero = min_nonzero.min(a);
        }
        row_mass[i] += a;
        if i != j {
            row_mass[j] += a;
        }
    }
    let max_delta = row_mass.iter().cloned().fold(0.0, f64::max);
    let beta_initial = (2.0f64.ln() / max_delta).clamp(1e-3, 1e3);
    let beta_final = (1000.0f64.ln() / min_nonzero).clamp(1e-3, 1e3);
    (beta_initial, beta_final.max(beta_initial))
}

/// Metropolis single-flip simulated annealing with independent restarts.
///
/// Every read draws a fresh random start from a seed derived from
/// `(config.seed, read index)`, runs `sweeps` full index-order sweeps along a
/// geometric beta ramp, and keeps its best visited assignment. Deterministic
/// per seed; read seeds do not depend on the total read count.
pub fn simulated_annealing(problem: &QuboProblem, config: &SaConfig) -> SaResult {
    assert!(config.sweeps >= 1 && config.reads >= 1, "sa config");
    let (derived_b0, derived_b1) = derived_betas(problem);
    let b0 = config.beta_initial.unwrap_or(derived_b0);
    let b1 = config.beta_final.unwrap_or(derived_b1).max(b0);
    assert!(b0 > 0.0, "beta_initial must be positive");

    let n = problem.n();
    let offset = problem.offset();
    let (diag, neighbors) = FlipState::build(problem);
    let mut state = FlipState {
        diag,
        neighbors,
        bits: vec![0; n],
        energy: offset,
    };

    let ratio = b1 / b0;
    let denom = (config.sweeps - 1).max(1) as f64;

    let mut best_bits = vec![0u8; n];
    let mut best = f64::INFINITY;
    let mut read_objectives = Vec::with_capacity(config.reads);

    for read in 0..config.reads {
        let mut rng = seeded_rng(derive_seed(config.seed, &[0x5a, read as u64]));
        state.randomise(offset, &mut rng);
        let mut read_best = state.energy;
        let mut read_best_bits = state.bits.clone();
        for sweep in 0..config.sweeps {
            let beta = b0 * ratio.powf(sweep as f64 / denom);
            state.sweep(beta, &mut rng);
            if state.energy < read_best {
                read_best = state.energy;
                read_best_bits.copy_from_slice(&state.bits);
            }
        }
        read_objectives.push(read_best);
        if read_best < best {
            best = read_best;
            best_bits = read_best_bits;
        }
    }

    SaResult {
        best: BinaryAssignment::new(best_bits),
        best_objective: best,
        read_objectives,
    }
}

/// Memoised reference objectives keyed by (problem fingerprint, config).
#[derive(Default)]
pub struct ReferenceCache {
    inner: Mutex<HashMap<(u64, u64), f64>>,
}

impl ReferenceCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Best SA objective for the problem, computed once per (problem, config).
    pub fn reference_objective(&self, problem: &QuboProblem, config: &SaConfig) -> f64 {
        let key = (problem.fingerprint(), config.fingerprint());
        if let Some(&v) = self.inner.lock().unwrap().get(&key) {
            return v;
        }
        let v = simulated_annealing(problem, config).best_objective;
        self.inner.lock().unwrap().insert(key, v);
        v
    }
}
