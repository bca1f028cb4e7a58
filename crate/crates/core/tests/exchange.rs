use aeroplane_core::exchange::{trace_scenario, verify_exchange, verify_predicates, ScenarioConfig};
use aeroplane_core::Families;

#[test]
fn predicate_suite_passes() {
    let fam = Families::up_to(3);
    let rep = verify_exchange(&fam, 2, 3).unwrap();
    let bad: Vec<_> = rep.failures().collect();
    assert!(bad.is_empty(), "{bad:#?}");
    assert!(rep.find("exchange.multi.k2.n3.first_move").is_some());
}

#[test]
fn mating_scenarios_reach_both_targets() {
    let fam = Families::up_to(3);
    for (k, n) in [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)] {
        let cfg = ScenarioConfig::mating(&fam, k, n).unwrap();
        let t = trace_scenario(&cfg).unwrap();
        let rep = verify_predicates(&cfg, &t);
        assert!(rep.all_pass(), "k={k} n={n}: {rep:#?}");
        // The second path moves one step after the main path's first swap.
        let first_main = t.main_path_steps()[0];
        assert!(t.zeta_path_steps().contains(&(first_main + 1)), "k={k} n={n}");
    }
}

#[test]
fn level_traces_swap_once() {
    let fam = Families::up_to(3);
    for k in 0..=3 {
        let cfg = ScenarioConfig::level(&fam, k).unwrap();
        let t = trace_scenario(&cfg).unwrap();
        assert_eq!(t.swaps().count(), 1, "k={k}");
        assert_eq!(t.swaps().next().unwrap().step, t.preperiod - 1, "k={k}");
    }
}
