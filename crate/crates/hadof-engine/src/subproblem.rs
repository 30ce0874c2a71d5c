use qubo_core::QuboProblem;

use crate::{EngineError, ExpectationVector, Result};

/// A sub-QUBO over one variable subset with every external variable clamped
/// to its expected value.
///
/// Local variable `ℓ` corresponds to global variable `subset[ℓ]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubProblem {
    pub subset: Vec<usize>,
    pub qubo: QuboProblem,
}

impl SubProblem {
    /// Map a local index back to its global variable.
    pub fn global_index(&self, local: usize) -> usize {
        self.subset[local]
    }
}

/// Clamp the complement of `subset` to `expectations` and restrict.
///
/// For `s, t` in the subset the local coefficient is the global one; a mixed
/// pair `{s, u}` with `u` outside folds `q(s,u)·P(x_u)` into the local
/// diagonal of `s`; terms entirely outside fold into the offset as
/// `Q_uu·P(x_u)` and `Q_uv·P(x_u)·P(x_v)`.
pub fn build_subproblem(
    global: &QuboProblem,
    subset: &[usize],
    expectations: &ExpectationVector,
) -> Result<SubProblem> {
    let n = global.n();
    let mut local_of = vec![usize::MAX; n];
    for (local, &g) in subset.iter().enumerate() {
        if g >= n {
            return Err(EngineError::SubsetIndex { index: g, n });
        }
        if local_of[g] != usize::MAX {
            return Err(EngineError::DuplicateIndex(g));
        }
        local_of[g] = local;
    }

    let mut qubo = QuboProblem::new(subset.len());
    qubo.add_offset(global.offset());
    let p = |u: usize| expectations.get(u);

    for (i, j, v) in global.terms() {
        let li = local_of[i];
        let lj = local_of[j];
        match (li != usize::MAX, lj != usize::MAX) {
            (true, true) => qubo.add_term(li, lj, v)?,
            (true, false) => qubo.add_term(li, li, v * p(j))?,
            (false, true) => qubo.add_term(lj, lj, v * p(i))?,
            (false, false) => {
                if i == j {
                    qubo.add_offset(v * p(i));
                } else {
                    qubo.add_offset(v * p(i) * p(j));
                }
            }
        }
    }

    Ok(SubProblem {
        subset: subset.to_vec(),
        qubo,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qubo_core::{brute_force, random_qubo, BinaryAssignment};

    #[test]
    fn zero_clamp_is_plain_restriction() {
        let global = QuboProblem::from_terms(
            4,
            [(0, 0, 2.0), (0, 1, -3.0), (1, 2, 5.0), (3, 3, 7.0)],
            1.5,
        )
        .unwrap();
        let expectations = ExpectationVector::from_values(vec![0.0; 4]);
        let sub = build_subproblem(&global, &[0, 1], &expectations).unwrap();
        assert_eq!(sub.qubo.n(), 2);
        assert_eq!(sub.qubo.coefficient(0, 0), 2.0);
        assert_eq!(sub.qubo.coefficient(0, 1), -3.0);
        assert_eq!(sub.qubo.coefficient(1, 1), 0.0);
        assert_eq!(sub.qubo.offset(), 1.5);
    }

    #[test]
    fn hand_expanded_clamp() {
        // n=3, subset={0}, Q={(0,1):4, (1,1):2}, P = [·, 0.5, 0.5]
        let global = QuboProblem::from_terms(3, [(0, 1, 4.0), (1, 1, 2.0)], 0.0).unwrap();
        let expectations = ExpectationVector::from_values(vec![0.5, 0.5, 0.5]);
        let sub = build_subproblem(&global, &[0], &expectations).unwrap();
        assert_eq!(sub.qubo.coefficient(0, 0), 2.0);
        assert_eq!(sub.qubo.offset(), 1.0);
    }

    #[test]
    fn true_marginals_recover_the_optimum_restriction() {
        let global = random_qubo(6, -10.0, 10.0, 77).unwrap();
        let (opt, _) = brute_force(&global).unwrap();
        let marginals = ExpectationVector::from_assignment(opt.bits());
        for subset in [&[0usize, 1, 2][..], &[3, 4, 5][..]] {
            let sub = build_subproblem(&global, subset, &marginals).unwrap();
            let (sub_opt, _) = brute_force(&sub.qubo).unwrap();
            for (local, &g) in subset.iter().enumerate() {
                assert_eq!(
                    sub_opt.bits()[local],
                    opt.bits()[g],
                    "subset {subset:?} local {local}"
                );
            }
        }
    }

    #[test]
    fn indicator_clamp_reproduces_global_objective() {
        let global = random_qubo(9, -10.0, 10.0, 3).unwrap();
        for assignment_index in [0u64, 5, 137, 511, 0b101010101] {
            let x = BinaryAssignment::from_index(assignment_index, 9);
            let expectations = ExpectationVector::from_assignment(x.bits());
            for subset in [&[0usize, 1, 2][..], &[3, 4, 5][..], &[6, 7, 8][..]] {
                let sub = build_subproblem(&global, subset, &expectations).unwrap();
                let restriction =
                    BinaryAssignment::new(subset.iter().map(|&g| x.bits()[g]).collect());
                let sub_value = sub.qubo.evaluate(&restriction).unwrap();
                let global_value = global.evaluate(&x).unwrap();
                assert!(
                    (sub_value - global_value).abs() < 1e-9,
                    "subset {subset:?}: {sub_value} vs {global_value}"
                );
            }
        }
    }

    #[test]
    fn rejects_bad_subsets() {
        let global = QuboProblem::new(3);
        let e = ExpectationVector::uniform(3);
        assert!(matches!(
            build_subproblem(&global, &[0, 3], &e),
            Err(EngineError::SubsetIndex { index: 3, .. })
        ));
        assert!(matches!(
            build_subproblem(&global, &[1, 1], &e),
            Err(EngineError::DuplicateIndex(1))
        ));
    }
}
