//! Unitarity and schedule properties over generated circuits.

use std::collections::BTreeMap;

use proptest::collection::vec;
use proptest::prelude::*;

use quantum_sim::{run_circuit, AnnealSchedule, Statevector};
use qubo_core::IsingModel;

fn arb_model(k: usize) -> impl Strategy<Value = IsingModel> {
    let fields = vec(-10.0f64..10.0, k);
    let couplings = vec(((0..k, 0..k), -10.0f64..10.0), 0..6);
    (fields, couplings, -3.0f64..3.0).prop_map(move |(h, coups, offset)| {
        let mut map = BTreeMap::new();
        for ((a, b), v) in coups {
            if a != b {
                *map.entry((a.min(b), a.max(b))).or_insert(0.0) += v;
            }
        }
        IsingModel::new(h, map, offset)
    })
}

proptest! {
    // Any layer sequence is norm-preserving.
    #[test]
    fn layers_preserve_norm(
        model in arb_model(4),
        angles in vec((-3.0f64..3.0, -3.0f64..3.0), 1..12),
    ) {
        let mut state = Statevector::plus_state(4).unwrap();
        for (gamma, beta) in angles {
            state.apply_cost_layer(&model, gamma).unwrap();
            state.apply_mixer_layer(beta);
            prop_assert!((state.norm_sqr() - 1.0).abs() < 1e-10);
        }
    }

    // Diagonal cost layers commute regardless of angles.
    #[test]
    fn cost_layers_commute(model in arb_model(3), g1 in -3.0f64..3.0, g2 in -3.0f64..3.0) {
        let mut a = Statevector::plus_state(3).unwrap();
        a.apply_mixer_layer(0.7);
        let mut b = a.clone();
        a.apply_cost_layer(&model, g1).unwrap();
        a.apply_cost_layer(&model, g2).unwrap();
        b.apply_cost_layer(&model, g2).unwrap();
        b.apply_cost_layer(&model, g1).unwrap();
        for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
            prop_assert!((x - y).norm() < 1e-12);
        }
    }

    // A schedule of zero betas never moves probability mass off uniform.
    #[test]
    fn zero_mixer_keeps_uniform_probabilities(model in arb_model(4), p in 1usize..6) {
        let schedule = AnnealSchedule::custom(
            vec![0.0; p],
            (1..=p).map(|m| m as f64 / p as f64).collect(),
        )
        .unwrap();
        let state = run_circuit(&model, &schedule, p).unwrap();
        for prob in state.probabilities() {
            prop_assert!((prob - 1.0 / 16.0).abs() < 1e-12);
        }
    }
}
