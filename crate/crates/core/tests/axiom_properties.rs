mod common;

use common::{instances, unit_instances, weight};
use mwnw::axioms::{
    check_population_monotonicity, check_resource_monotonicity, check_subset_restriction,
    run_suite, search_group_manipulation, Check, ManipulationMode, SuiteConfig,
    DEFAULT_MANIPULATION_BUDGET,
};
use mwnw::baselines::{max_utilitarian, round_robin, serial_dictatorship};
use mwnw::fixtures;
use mwnw::oracle::is_pareto_optimal;
use mwnw::{is_minimally_complete, solve_mwnw_tie, utility, Instance, SizeGuard};
use proptest::prelude::*;

fn solved(inst: &Instance) -> Vec<u64> {
    utility(inst, &solve_mwnw_tie(inst).unwrap()).unwrap().0
}

#[test]
fn seeded_suite_has_no_failures() {
    let report = run_suite(&SuiteConfig {
        seed: 42,
        trials: 500,
        agents: (1, 4),
        goods: (1, 6),
        ..SuiteConfig::default()
    })
    .unwrap();
    assert!(report.passed(), "{}", report.to_json());
    assert_eq!(report.skipped, 0);
    assert!(!report.witnesses.is_empty());
}

#[test]
fn suite_catches_nothing_on_gsp_alone_with_larger_coalitions() {
    let report = run_suite(&SuiteConfig {
        seed: 5,
        trials: 40,
        agents: (1, 3),
        goods: (0, 4),
        checks: vec![Check::Gsp],
        max_coalition: 3,
        ..SuiteConfig::default()
    })
    .unwrap();
    assert!(report.passed(), "{}", report.to_json());
}

#[test]
fn duplicate_agent_splits_two_goods() {
    let one = Instance::unweighted(&[vec![1, 1]]).unwrap();
    assert_eq!(solved(&one), vec![2]);
    let two = one.with_agent("a2", &[true, true], weight("1")).unwrap();
    assert_eq!(solved(&two), vec![1, 1]);
    assert!(check_population_monotonicity(&one, &[true, true], weight("1")).unwrap());
}

#[test]
fn subset_restriction_on_coalition_instance() {
    let inst = fixtures::coalition_counterexample();
    assert!(check_subset_restriction(&inst, &[1, 2], SizeGuard::default()).unwrap());
    assert!(check_subset_restriction(&inst, &[0, 1, 2], SizeGuard::default()).unwrap());
}

#[test]
fn truthful_members_may_join_a_coalition() {
    // Agent 3's report may stay truthful; agent 2 lying alone already
    // gives the same outcome.
    let inst = fixtures::coalition_counterexample();
    let alone = inst
        .with_rows(&[(1, vec![false, true, false, false])])
        .unwrap();
    assert_eq!(
        utility(&inst, &solve_mwnw_tie(&alone).unwrap()).unwrap().0,
        vec![1, 1, 2]
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn no_group_manipulation_small(
        inst in (1usize..=3, 0usize..=4).prop_flat_map(|(n, m)| {
            (
                prop::collection::vec(prop::sample::select(vec!["1", "1/2", "2"]), n),
                prop::collection::vec(prop::collection::vec(0u8..=1, m), n),
            )
        }).prop_map(|(w, rows)| {
            Instance::from_matrix(w.iter().map(|s| weight(s)).collect(), &rows).unwrap()
        })
    ) {
        let found = search_group_manipulation(&inst, 3, ManipulationMode::Gsp, DEFAULT_MANIPULATION_BUDGET)
            .unwrap();
        prop_assert!(found.is_none(), "{:?}", found);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn resource_monotone(inst in instances(1..=5, 0..=8), bits in any::<u8>()) {
        let column: Vec<bool> = (0..inst.n()).map(|i| bits >> i & 1 == 1).collect();
        prop_assert!(check_resource_monotonicity(&inst, &column).unwrap());
    }

    #[test]
    fn population_monotone(
        inst in instances(1..=4, 0..=8),
        bits in any::<u8>(),
        w in prop::sample::select(common::WEIGHTS.to_vec()),
    ) {
        let row: Vec<bool> = (0..inst.m()).map(|g| bits >> g & 1 == 1).collect();
        prop_assert!(check_population_monotonicity(&inst, &row, weight(w)).unwrap());
    }

    #[test]
    fn witnesses_are_well_formed(inst in unit_instances(2..=3, 1..=3)) {
        for mode in [ManipulationMode::Gsp, ManipulationMode::StrongGsp] {
            if let Some(w) = search_group_manipulation(&inst, 2, mode, DEFAULT_MANIPULATION_BUDGET).unwrap() {
                prop_assert_eq!(mode, ManipulationMode::StrongGsp);
                for i in 0..inst.n() {
                    if !w.coalition.contains(&i) {
                        prop_assert_eq!(&w.reported_profile[i], &w.true_profile[i]);
                    } else {
                        prop_assert!(w.true_utilities_after_lie.0[i] >= w.true_utilities_honest.0[i]);
                    }
                }
                let gains = w
                    .coalition
                    .iter()
                    .any(|&i| w.true_utilities_after_lie.0[i] > w.true_utilities_honest.0[i]);
                prop_assert!(gains);
            }
        }
    }

    #[test]
    fn baseline_invariants(inst in instances(1..=4, 0..=6)) {
        prop_assert_eq!(round_robin(&inst).unallocated().len(), 0);
        let sd = serial_dictatorship(&inst);
        prop_assert!(is_minimally_complete(&inst, &sd));
        prop_assert!(is_pareto_optimal(&inst, &sd, SizeGuard::default()).unwrap());
        let ut = max_utilitarian(&inst);
        prop_assert!(is_minimally_complete(&inst, &ut));
        let welfare: u64 = utility(&inst, &ut).unwrap().0.iter().sum();
        prop_assert_eq!(welfare, inst.valued_goods().len() as u64);
    }
}
