use std::collections::BTreeMap;
use std::fmt;

use crate::ids::AgentId;
use crate::perspective::{PartialWorld, QuestionScope, RuleId, RuleSet};
use crate::prover::{prove, unsound_citations, ProverConfig};
use crate::scenario::Scenario;
use crate::trace::{build_trace, TraceConfig};

use super::oracle::{
    oracle_answer, oracle_beliefs, replay_path, replay_path_final, OracleAnswer, PathTable,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mismatch {
    /// Engine and oracle disagree on a belief table.
    Table {
        holder: AgentId,
        path: String,
        step: Option<u32>,
        engine: String,
        oracle: String,
    },
    /// The prover committed to an answer the oracle does not give.
    Answer { chosen: String, oracle: String },
    /// A proof step cites an event the evidence path could not see.
    Unsound { step: u32, conclusion: String },
    /// The engine failed outright.
    Engine(String),
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mismatch::Table {
                holder,
                path,
                step,
                engine,
                oracle,
            } => {
                write!(f, "holder {holder} path {path}")?;
                if let Some(t) = step {
                    write!(f, " step {t}")?;
                }
                write!(f, ": engine {engine} vs oracle {oracle}")
            }
            Mismatch::Answer { chosen, oracle } => {
                write!(f, "prover chose {chosen}, oracle {oracle}")
            }
            Mismatch::Unsound { step, conclusion } => {
                write!(f, "unsound citation at step {step}: {conclusion}")
            }
            Mismatch::Engine(e) => write!(f, "engine error: {e}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub id: String,
    pub tables_compared: usize,
    pub proof_steps_checked: usize,
    pub prover_abstained: bool,
    pub oracle_undecidable: bool,
    pub mismatches: Vec<Mismatch>,
}

impl EquivalenceReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn engine_table(w: &PartialWorld) -> PathTable {
    PathTable {
        objects: w.location_table(),
        attributes: w.attribute_table(),
        goals: w.goal_table(),
    }
}

fn project(t: &PathTable, scope: &QuestionScope) -> PathTable {
    PathTable {
        objects: t
            .objects
            .iter()
            .filter(|(o, _)| scope.objects.contains(*o))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect(),
        attributes: t
            .attributes
            .iter()
            .filter(|((o, _), _)| scope.objects.contains(o))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect(),
        goals: t
            .goals
            .iter()
            .filter(|(a, _)| scope.agents.contains(*a))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect(),
    }
}

fn render(t: &PathTable) -> String {
    serde_json::to_string(t).unwrap_or_default()
}

/// Compares engine and oracle on one scenario.
///
/// * Final tables of every path up to `max_order`, for every holder, with
///   the distractor filter off: exact equality.
/// * Per-step tables of the question holder with the default rules,
///   projected onto the question's entities.
/// * The prover's committed answer against the oracle's, and every proof
///   step against path visibility.
pub fn check_scenario(scenario: &Scenario, max_order: usize) -> EquivalenceReport {
    let mut report = EquivalenceReport {
        id: scenario.id.clone(),
        ..EquivalenceReport::default()
    };
    let max_order = max_order.max(1);
    let unfiltered = RuleSet::all().without(RuleId::R6);
    for holder in &scenario.header.agents {
        let cfg = TraceConfig {
            rules: unfiltered,
            ..TraceConfig::new(max_order)
        };
        let trace = match build_trace(scenario, holder, &cfg) {
            Ok(t) => t,
            Err(e) => {
                report.mismatches.push(Mismatch::Engine(e.to_string()));
                return report;
            }
        };
        for (path, world) in &trace.final_belief().entries {
            let oracle = replay_path_final(scenario, path.agents());
            let engine = engine_table(world);
            report.tables_compared += 1;
            if engine != oracle {
                report.mismatches.push(Mismatch::Table {
                    holder: holder.clone(),
                    path: path.to_string(),
                    step: None,
                    engine: render(&engine),
                    oracle: render(&oracle),
                });
            }
        }
    }

    let proof = match prove(scenario, &ProverConfig::default()) {
        Ok(p) => p,
        Err(e) => {
            report.mismatches.push(Mismatch::Engine(e.to_string()));
            return report;
        }
    };
    let scope = QuestionScope::of(&scenario.question);
    if let Some(trace) = &proof.trace {
        let mut series: BTreeMap<String, Vec<PathTable>> = BTreeMap::new();
        for (t, belief) in trace.belief_history() {
            for (path, world) in &belief.entries {
                let oracle = series
                    .entry(path.to_string())
                    .or_insert_with(|| replay_path(scenario, path.agents()));
                let expected = project(&oracle[t as usize], &scope);
                let engine = project(&engine_table(world), &scope);
                report.tables_compared += 1;
                if engine != expected {
                    report.mismatches.push(Mismatch::Table {
                        holder: trace.target.clone(),
                        path: path.to_string(),
                        step: Some(t),
                        engine: render(&engine),
                        oracle: render(&expected),
                    });
                }
            }
        }
        if let Some(query) = &proof.query {
            report.proof_steps_checked = proof.answer.proof.len();
            for step in unsound_citations(&proof.answer, query, trace) {
                report.mismatches.push(Mismatch::Unsound {
                    step: step.step,
                    conclusion: step.conclusion.clone(),
                });
            }
        }
    }

    report.prover_abstained = proof.answer.abstained;
    let order = scenario.question.target_path.len().max(1);
    let truth = oracle_beliefs(scenario, order);
    match oracle_answer(scenario, &truth) {
        OracleAnswer::Label(label) => {
            if !proof.answer.abstained && proof.answer.chosen != label {
                report.mismatches.push(Mismatch::Answer {
                    chosen: proof.answer.chosen.clone(),
                    oracle: label,
                });
            }
        }
        OracleAnswer::Undecidable(_) => report.oracle_undecidable = true,
    }
    report
}
