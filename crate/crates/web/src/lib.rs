//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every exported function has a plain Rust twin that returns JSON text, so
//! the behavior is testable without a browser.

use serde_json::json;
use wasm_bindgen::prelude::*;

use mindtrace::eval::count_tokens;
use mindtrace::prover::{prove, ProverConfig};
use mindtrace::synth::{generate_story, GenConfig, Regime};
use mindtrace::{build_trace, parse_scenario, TraceConfig};

/// Generates one scenario record for `regime` at `belief_order`.
pub fn generate(regime: &str, belief_order: usize, seed: u64) -> Result<String, String> {
    let regime: Regime = regime.parse().map_err(|e| format!("{e}"))?;
    let cfg = GenConfig {
        regime,
        belief_order,
        n_agents: belief_order.max(3),
        n_events: GenConfig::default().n_events.max(regime.min_events()),
        seed,
        ..GenConfig::default()
    };
    let (scenario, _) = generate_story(&cfg).map_err(|e| e.to_string())?;
    Ok(scenario.to_record())
}

/// Proves a scenario record and returns the verdicts, the chosen option and
/// the belief trace of the question holder.
pub fn solve(record: &str) -> Result<String, String> {
    let scenario = parse_scenario(record.trim(), 1).map_err(|e| e.to_string())?;
    let proof = prove(&scenario, &ProverConfig::default()).map_err(|e| e.to_string())?;
    let answer = &proof.answer;
    let verdicts: Vec<_> = answer
        .verdicts
        .iter()
        .map(|v| json!({"label": v.label, "status": v.status.to_string(), "support": v.support}))
        .collect();
    let trace = match scenario.question.target_path.first() {
        Some(holder) => {
            let order = scenario.question.target_path.len().max(1);
            build_trace(&scenario, holder, &TraceConfig::new(order))
                .map(|t| t.dump())
                .unwrap_or_else(|e| e.to_string())
        }
        None => String::new(),
    };
    Ok(json!({
        "id": scenario.id,
        "question": scenario.question.text,
        "query": proof.query.as_ref().map(|q| q.to_string()),
        "chosen": answer.chosen,
        "gold": scenario.question.gold,
        "abstained": answer.abstained,
        "verdicts": verdicts,
        "proof": answer.render(),
        "trace": trace,
    })
    .to_string())
}

#[wasm_bindgen(js_name = generate)]
pub fn generate_js(regime: &str, belief_order: usize, seed: u64) -> Result<String, JsError> {
    generate(regime, belief_order, seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = solve)]
pub fn solve_js(record: &str) -> Result<String, JsError> {
    solve(record).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = countTokens)]
pub fn count_tokens_js(text: &str) -> usize {
    count_tokens(text)
}
