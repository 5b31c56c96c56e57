//! Randomized invariants, 64 cases each, plus the Littlewood-Richardson
//! counts of every small problem against an independent Pieri oracle.

mod common;

use common::*;
use lrhomotopy::combinatorics::HomotopyCase;
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 64,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn run(check: Check) -> Result<(), TestCaseError> {
    check.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn cauchy_binet(seed in any::<u64>()) {
        run(check_cauchy_binet(seed))?;
    }

    #[test]
    fn stay_family_spans_parent_variety(seed in any::<u64>()) {
        run(check_span_equality(HomotopyCase::II, seed))?;
    }

    #[test]
    fn swap_family_spans_parent_variety(seed in any::<u64>()) {
        run(check_span_equality(HomotopyCase::III, seed))?;
    }

    #[test]
    fn stay_family_starts_at_child(seed in any::<u64>()) {
        run(check_t0_specialization(HomotopyCase::II, seed))?;
    }

    #[test]
    fn swap_family_starts_at_child(seed in any::<u64>()) {
        run(check_t0_specialization(HomotopyCase::III, seed))?;
    }

    #[test]
    fn jacobian_matches_finite_differences(seed in any::<u64>(), case in prop::sample::select(vec![HomotopyCase::II, HomotopyCase::III])) {
        run(check_jacobian(case, seed))?;
    }


    #[test]
    fn random_problem_counts(seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (k, n, problem) = random_problem(&mut rng, 8);
        run(check_lr_count(k, n, &problem))?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..config() })]

    #[test]
    fn plucker_equations_match_rank_minors(seed in any::<u64>()) {
        run(check_oracle_equivalence(seed))?;
    }
}

#[test]
fn every_problem_up_to_n8_matches_the_oracle() {
    for (k, n) in small_grassmannians(8) {
        for problem in all_problems(k, n) {
            check_lr_count(k, n, &problem).unwrap();
        }
    }
}
