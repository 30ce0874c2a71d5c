//! Property tests over generated instances.

use proptest::collection::vec;
use proptest::prelude::*;

use qubo_core::{BinaryAssignment, QuboProblem};

fn arb_problem() -> impl Strategy<Value = QuboProblem> {
    (1usize..10)
        .prop_flat_map(|n| {
            let terms = vec(
                (
                    (0..n, 0..n).prop_map(move |(i, j)| (i.min(j), i.max(j))),
                    -10.0f64..10.0,
                ),
                0..30,
            );
            (Just(n), terms, -5.0f64..5.0)
        })
        .prop_map(|(n, terms, offset)| {
            QuboProblem::from_terms(n, terms.into_iter().map(|((i, j), v)| (i, j, v)), offset)
                .expect("indices in range")
        })
}

proptest! {
    // The Ising conversion preserves the objective on every assignment,
    // offset included.
    #[test]
    fn ising_energy_matches_objective(problem in arb_problem(), bits_seed in any::<u64>()) {
        let n = problem.n();
        let ising = problem.to_ising();
        let x = BinaryAssignment::from_index(bits_seed, n);
        let direct = problem.evaluate(&x).unwrap();
        let energy = ising.energy_of_basis(x.to_index());
        prop_assert!((direct - energy).abs() < 1e-9, "{direct} vs {energy}");
    }

    // Round-tripping through the JSON interchange form is lossless.
    #[test]
    fn json_round_trip(problem in arb_problem()) {
        let back = qubo_core::io::from_json(&qubo_core::io::to_json(&problem)).unwrap();
        prop_assert_eq!(problem, back);
    }

    // The packed evaluator agrees with the sparse-map evaluation.
    #[test]
    fn packed_evaluation_agrees(problem in arb_problem(), bits_seed in any::<u64>()) {
        let x = BinaryAssignment::from_index(bits_seed, problem.n());
        let packed = problem.packed();
        prop_assert!(
            (packed.evaluate_bits(x.bits()) - problem.evaluate(&x).unwrap()).abs() < 1e-12
        );
    }
}
