use mindtrace_web::{count_tokens_js, generate, solve};

#[test]
fn every_regime_generates_and_solves() {
    for regime in ["false_belief", "nested", "communication", "goal_action"] {
        for order in 0..=2 {
            let record = generate(regime, order, 7).unwrap();
            let out: serde_json::Value = serde_json::from_str(&solve(&record).unwrap()).unwrap();
            assert_eq!(out["chosen"], out["gold"], "{regime} order {order}");
            assert!(out["proof"].as_str().unwrap().contains("chosen="));
        }
    }
}

#[test]
fn bad_input_is_an_error_not_a_panic() {
    assert!(generate("sideways", 1, 0).is_err());
    assert!(solve("{").is_err());
    assert!(solve("").is_err());
}

#[test]
fn token_export_matches_core() {
    assert_eq!(count_tokens_js("Where is the ball?"), 5);
}
