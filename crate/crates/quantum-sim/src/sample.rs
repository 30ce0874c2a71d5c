use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::{Result, SimError, Statevector};

/// Ordered shot record from one circuit execution.
///
/// Draws keep their sampling order because global candidate solutions are
/// formed by pairing the s-th draw of every sub-circuit. Count views are
/// derived on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSet {
    k: usize,
    draws: Vec<u64>,
}

impl SampleSet {
    pub fn new(k: usize, draws: Vec<u64>) -> Self {
        Self { k, draws }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn shots(&self) -> usize {
        self.draws.len()
    }

    /// Basis-state indices in draw order.
    pub fn draws(&self) -> &[u64] {
        &self.draws
    }

    /// Occurrence counts keyed by ket-style bitstring (qubit 0 rightmost).
    pub fn counts(&self) -> BTreeMap<String, usize> {
        let mut map = BTreeMap::new();
        for &b in &self.draws {
            *map.entry(bitstring(b, self.k)).or_insert(0) += 1;
        }
        map
    }

    /// The most frequently drawn basis state; lowest index wins ties.
    pub fn most_frequent(&self) -> Option<u64> {
        let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
        for &b in &self.draws {
            *counts.entry(b).or_insert(0) += 1;
        }
        counts
            .into_iter()
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .map(|(b, _)| b)
    }
}

/// Render a basis index as a length-`k` bitstring with qubit 0 rightmost.
pub fn bitstring(b: u64, k: usize) -> String {
    (0..k)
        .rev()
        .map(|j| if (b >> j) & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn cumulative(probs: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    probs
        .iter()
        .map(|&p| {
            acc += p;
            acc
        })
        .collect()
}

fn draw_index(cum: &[f64], rng: &mut ChaCha8Rng) -> usize {
    let total = *cum.last().expect("non-empty distribution");
    let u = rng.random::<f64>() * total;
    cum.partition_point(|&c| c <= u).min(cum.len() - 1)
}

/// Estimate per-qubit expectations from `shots` full-register draws: entry `j`
/// is the empirical frequency of bit `j` being 1. Deterministic per seed.
pub fn sample_expectations(
    state: &Statevector,
    shots: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<f64>> {
    if shots == 0 {
        return Err(SimError::NoShots);
    }
    let cum = cumulative(&state.probabilities());
    let mut ones = vec![0usize; state.k()];
    for _ in 0..shots {
        let b = draw_index(&cum, rng);
        for (j, o) in ones.iter_mut().enumerate() {
            *o += (b >> j) & 1;
        }
    }
    Ok(ones.iter().map(|&c| c as f64 / shots as f64).collect())
}

/// Draw `shots` basis states in order, flipping each readout bit independently
/// with probability `readout_flip` (the stand-in noise knob; 0 disables it).
pub fn sample_bitstrings(
    state: &Statevector,
    shots: usize,
    rng: &mut ChaCha8Rng,
    readout_flip: f64,
) -> Result<SampleSet> {
    if shots == 0 {
        return Err(SimError::NoShots);
    }
    if !(0.0..1.0).contains(&readout_flip) {
        return Err(SimError::BadFlipProbability(readout_flip));
    }
    let k = state.k();
    let cum = cumulative(&state.probabilities());
    let mut draws = Vec::with_capacity(shots);
    for _ in 0..shots {
        let mut b = draw_index(&cum, rng) as u64;
        if readout_flip > 0.0 {
            for j in 0..k {
                if rng.random::<f64>() < readout_flip {
                    b ^= 1 << j;
                }
            }
        }
        draws.push(b);
    }
    Ok(SampleSet::new(k, draws))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded_rng;
    use crate::{run_circuit, AnnealSchedule};
    use qubo_core::IsingModel;
    use std::collections::BTreeMap as Map;

    #[test]
    fn basis_state_sampling_is_exact() {
        let s = Statevector::basis_state(3, 0b011).unwrap();
        let mut rng = seeded_rng(1);
        let set = sample_bitstrings(&s, 10, &mut rng, 0.0).unwrap();
        assert_eq!(set.shots(), 10);
        let counts = set.counts();
        assert_eq!(counts.len(), 1);
        assert_eq!(counts["011"], 10);

        let mut rng2 = seeded_rng(2);
        let e = sample_expectations(&s, 7, &mut rng2).unwrap();
        assert_eq!(e, vec![1.0, 1.0, 0.0]);
    }

    #[test]
    fn expectations_deterministic_per_seed() {
        let s = Statevector::plus_state(4).unwrap();
        let a = sample_expectations(&s, 200, &mut seeded_rng(9)).unwrap();
        let b = sample_expectations(&s, 200, &mut seeded_rng(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn plus_state_frequencies_near_half() {
        // Binomial(500, 0.5) stays within ±0.12 of 0.5 except with
        // probability < 1e-3 per qubit; the seed is fixed anyway.
        let s = Statevector::plus_state(5).unwrap();
        let e = sample_expectations(&s, 500, &mut seeded_rng(1234)).unwrap();
        for f in e {
            assert!((f - 0.5).abs() < 0.12, "frequency {f}");
        }
    }

    #[test]
    fn sampled_expectations_converge_to_exact() {
        let mut coup = Map::new();
        coup.insert((0, 1), 1.3);
        coup.insert((2, 4), -0.8);
        let model = IsingModel::new(vec![0.5, -0.2, 0.9, -1.4, 0.3], coup, 0.0);
        let schedule = AnnealSchedule::trotterized(5).unwrap();
        let state = run_circuit(&model, &schedule, 5).unwrap();
        let exact = state.qubit_expectations();
        let sampled = sample_expectations(&state, 100_000, &mut seeded_rng(77)).unwrap();
        for (s, e) in sampled.iter().zip(&exact) {
            assert!((s - e).abs() < 0.01, "sampled {s} exact {e}");
        }
    }

    #[test]
    fn draw_order_is_reproducible() {
        let s = Statevector::plus_state(3).unwrap();
        let a = sample_bitstrings(&s, 50, &mut seeded_rng(5), 0.1).unwrap();
        let b = sample_bitstrings(&s, 50, &mut seeded_rng(5), 0.1).unwrap();
        assert_eq!(a.draws(), b.draws());
        let c = sample_bitstrings(&s, 50, &mut seeded_rng(6), 0.1).unwrap();
        assert_ne!(a.draws(), c.draws());
    }

    #[test]
    fn total_counts_equal_shots() {
        let s = Statevector::plus_state(4).unwrap();
        let set = sample_bitstrings(&s, 333, &mut seeded_rng(3), 0.2).unwrap();
        assert_eq!(set.counts().values().sum::<usize>(), 333);
        assert!(set.counts().keys().all(|key| key.len() == 4));
    }

    #[test]
    fn heavy_flip_noise_pushes_marginals_to_half() {
        let s = Statevector::basis_state(3, 0).unwrap();
        let set = sample_bitstrings(&s, 20_000, &mut seeded_rng(8), 0.5).unwrap();
        for j in 0..3 {
            let ones: usize = set.draws().iter().map(|&b| ((b >> j) & 1) as usize).sum();
            let f = ones as f64 / 20_000.0;
            assert!((f - 0.5).abs() < 0.02, "marginal {f}");
        }
    }

    #[test]
    fn flip_probability_validated() {
        let s = Statevector::plus_state(2).unwrap();
        assert!(sample_bitstrings(&s, 1, &mut seeded_rng(0), 1.0).is_err());
        assert!(sample_bitstrings(&s, 1, &mut seeded_rng(0), -0.1).is_err());
        assert!(sample_bitstrings(&s, 0, &mut seeded_rng(0), 0.0).is_err());
    }

    #[test]
    fn most_frequent_breaks_ties_low() {
        let set = SampleSet::new(2, vec![3, 1, 1, 3, 0]);
        assert_eq!(set.most_frequent(), Some(1));
    }

    #[test]
    fn bitstring_renders_ket_style() {
        assert_eq!(bitstring(0b011, 3), "011");
        assert_eq!(bitstring(0b100, 3), "100");
        assert_eq!(bitstring(1, 3), "001");
    }
}
