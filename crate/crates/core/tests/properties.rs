use proptest::prelude::*;

use mindtrace::eval::{compute_gap, evaluate_scenarios, EvalConfig};
use mindtrace::perspective::visible_along_path;
use mindtrace::prover::{prove, AdapterRegistry, ProverConfig};
use mindtrace::synth::{generate_story, suite_config};
use mindtrace::{apply_event, build_trace, parse_scenario, Scenario, TraceConfig};

fn story(seed: u64) -> Scenario {
    generate_story(&suite_config(seed)).unwrap().0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn records_round_trip(seed in 0u64..100_000) {
        let s = story(seed);
        let back = parse_scenario(&s.to_record(), 1).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn apply_event_leaves_its_input_alone(seed in 0u64..100_000) {
        let s = story(seed);
        let mut state = s.initial_state();
        for e in &s.events {
            let before = state.clone();
            let next = apply_event(&state, e).unwrap();
            prop_assert_eq!(&state, &before);
            prop_assert_eq!(&apply_event(&state, e).unwrap(), &next);
            state = next;
        }
    }

    #[test]
    fn predicted_actions_never_touch_the_world(seed in 0u64..100_000) {
        let s = story(seed);
        let mut state = s.initial_state();
        for e in &s.events {
            state = apply_event(&state, e).unwrap();
        }
        for agent in &s.header.agents {
            let trace = build_trace(&s, agent, &TraceConfig::new(2)).unwrap();
            prop_assert_eq!(&trace.final_env, &state);
        }
    }

    #[test]
    fn deeper_tracking_keeps_shallow_tables(seed in 0u64..100_000) {
        let s = story(seed);
        let agent = &s.header.agents[0];
        let shallow = build_trace(&s, agent, &TraceConfig::new(1)).unwrap();
        let deep = build_trace(&s, agent, &TraceConfig::new(3)).unwrap();
        for (path, world) in &shallow.final_belief().entries {
            prop_assert_eq!(deep.final_belief().get(path), Some(world));
        }
    }

    #[test]
    fn beliefs_only_move_on_visible_events(seed in 0u64..100_000) {
        let s = story(seed);
        for agent in &s.header.agents {
            let trace = build_trace(&s, agent, &TraceConfig::new(3)).unwrap();
            let mut prev = &trace.initial_belief;
            for step in &trace.steps {
                for (path, world) in &step.belief.entries {
                    if !visible_along_path(&step.event, path, &step.env) {
                        prop_assert_eq!(prev.get(path), Some(world), "path {} at {}", path, step.time);
                    }
                }
                prev = &step.belief;
            }
        }
    }

    #[test]
    fn equal_accuracies_leave_no_gap(accs in prop::collection::vec(0.0f64..=100.0, 1..6)) {
        let pairs: Vec<(String, f64, f64)> =
            accs.iter().enumerate().map(|(i, a)| (format!("b{i}"), *a, *a)).collect();
        let g = compute_gap(&pairs).unwrap();
        prop_assert!(g.rows.iter().all(|r| r.gap == 0.0));
        prop_assert_eq!(g.macro_gap, 0.0);
    }

    #[test]
    fn generation_is_deterministic(seed in 0u64..100_000) {
        let cfg = suite_config(seed);
        prop_assert_eq!(generate_story(&cfg).unwrap().0, generate_story(&cfg).unwrap().0);
    }

    #[test]
    fn answers_follow_claims_not_positions(seed in 0u64..100_000) {
        let s = story(seed);
        let first = prove(&s, &ProverConfig::default()).unwrap();
        prop_assume!(!first.answer.abstained);
        let mut flipped = s.clone();
        flipped.question.options.reverse();
        let second = prove(&flipped, &ProverConfig::default()).unwrap();
        prop_assert!(!second.answer.abstained);
        let claim = |sc: &Scenario, label: &str| sc.question.option(label).map(|o| o.claim.clone());
        prop_assert_eq!(claim(&s, &first.answer.chosen), claim(&flipped, &second.answer.chosen));
    }
}

#[test]
fn report_counts_close() {
    let scenarios: Vec<Scenario> = (0..120).map(story).collect();
    let report = evaluate_scenarios(
        &scenarios,
        &EvalConfig::default(),
        &AdapterRegistry::default(),
    )
    .unwrap();
    let total = &report.total;
    assert_eq!(total.n, scenarios.len());
    assert_eq!(
        report.benchmarks.values().map(|b| b.n).sum::<usize>(),
        total.n
    );
    assert_eq!(
        report.benchmarks.values().map(|b| b.correct).sum::<usize>(),
        total.correct
    );
    assert_eq!(total.effective_tokens, 0);
    for (name, b) in &report.benchmarks {
        for variable in ["question_type", "belief_order", "visibility"] {
            let n: usize = report
                .slices
                .iter()
                .filter(|s| &s.benchmark == name && s.variable == variable)
                .map(|s| s.tally.n)
                .sum();
            assert_eq!(n, b.n, "{name} {variable}");
        }
    }
}
