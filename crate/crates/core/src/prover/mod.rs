//! Answers a question by checking every option against the target's trace.
//!
//! An option is *consistent* when the trace supports it, *contradicted*
//! when the trace refutes it (with a reason code and the step that
//! establishes the refutation) and *undetermined* otherwise. Selection
//! picks the unique consistent option or abstains to a deterministic
//! default.

mod adapter;
mod check;
mod infer;
mod query;
mod select;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use adapter::{
    resolve_fallback, AdapterChoice, AdapterError, AdapterRegistry, FallbackOutcome,
    FallbackRequest, NullAdapter, SolverAdapter,
};
pub use check::check_option;
pub use infer::{classify_social_intent, infer_goal, GoalInference, IntentReading, SocialError};
pub use query::{classify_query, ClassifyError, FactKey, QueryKind};
pub use select::{default_option, select_answer, Selection};

use crate::ids::AgentId;
use crate::perspective::{visible_along_path, QuestionScope, RuleId, RuleSet};
use crate::scenario::Scenario;
use crate::trace::{build_trace, Trace, TraceConfig, TraceError};

/// Why an option was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReasonCode {
    UnobservedKnowledge,
    BeliefMismatch,
    ActionRuleViolation,
    GoalMismatch,
    CommunicationAccess,
    RealityMismatch,
}

impl ReasonCode {
    pub const ALL: [ReasonCode; 6] = [
        ReasonCode::UnobservedKnowledge,
        ReasonCode::BeliefMismatch,
        ReasonCode::ActionRuleViolation,
        ReasonCode::GoalMismatch,
        ReasonCode::CommunicationAccess,
        ReasonCode::RealityMismatch,
    ];

    pub fn code(self) -> &'static str {
        match self {
            ReasonCode::UnobservedKnowledge => "unobserved-knowledge",
            ReasonCode::BeliefMismatch => "belief-mismatch",
            ReasonCode::ActionRuleViolation => "action-rule-violation",
            ReasonCode::GoalMismatch => "goal-mismatch",
            ReasonCode::CommunicationAccess => "communication-access",
            ReasonCode::RealityMismatch => "reality-mismatch",
        }
    }
}

impl fmt::Display for ReasonCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Consistent,
    Contradicted(ReasonCode),
    Undetermined,
}

impl Status {
    pub fn is_consistent(self) -> bool {
        self == Status::Consistent
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Consistent => f.write_str("consistent"),
            Status::Contradicted(r) => write!(f, "contradicted({r})"),
            Status::Undetermined => f.write_str("undetermined"),
        }
    }
}

/// What licenses a proof step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Justification {
    /// A belief-update or action rule applied by the target.
    Rule(RuleId),
    /// The environment transition itself (reality queries).
    Transition,
    /// The answer-selection policy.
    Selection,
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Rule(r) => write!(f, "{r}"),
            Justification::Transition => f.write_str("T"),
            Justification::Selection => f.write_str("select"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProofStep {
    /// Trace step the conclusion rests on; 0 is the initial scene.
    pub step: u32,
    pub rule: Justification,
    pub conclusion: String,
}

impl fmt::Display for ProofStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[t={}] {}: {}", self.step, self.rule, self.conclusion)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub label: String,
    pub status: Status,
    /// Number of trace time points at which the option's claim holds.
    pub support: u32,
    pub evidence: Vec<ProofStep>,
    pub note: Option<String>,
}

impl Verdict {
    pub(crate) fn new(label: &str, status: Status) -> Self {
        Self {
            label: label.to_string(),
            status,
            support: 0,
            evidence: Vec::new(),
            note: None,
        }
    }

    /// Step of the first evidence entry, i.e. where a contradiction is
    /// established.
    pub fn step(&self) -> Option<u32> {
        self.evidence.first().map(|e| e.step)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Answer {
    pub chosen: String,
    pub verdicts: Vec<Verdict>,
    pub abstained: bool,
    pub adapter_resolved: bool,
    pub proof: Vec<ProofStep>,
    /// Set when the question could not be classified.
    pub note: Option<String>,
}

impl Answer {
    pub fn verdict(&self, label: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.label == label)
    }

    /// Per-option verdict lines followed by the proof.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            out.push_str(&format!(
                "option {}: {} support={}",
                v.label, v.status, v.support
            ));
            if let Some(note) = &v.note {
                out.push_str(&format!(" note={note}"));
            }
            out.push('\n');
        }
        for step in &self.proof {
            out.push_str(&format!("  {step}\n"));
        }
        out.push_str(&format!(
            "chosen={} abstained={} adapter_resolved={}",
            self.chosen, self.abstained, self.adapter_resolved
        ));
        if let Some(note) = &self.note {
            out.push_str(&format!(" note={note}"));
        }
        out.push('\n');
        out
    }
}

#[derive(Debug, Clone)]
pub struct ProverConfig {
    pub rules: RuleSet,
    /// Deepest belief path to maintain. `None` uses what the query needs.
    pub max_order: Option<usize>,
}

impl Default for ProverConfig {
    fn default() -> Self {
        Self {
            rules: RuleSet::all(),
            max_order: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum ProveError {
    #[error("scenario declares no agents")]
    NoAgents,
    #[error(transparent)]
    Trace(#[from] TraceError),
}

#[derive(Debug, Clone)]
pub struct Proof {
    pub query: Option<QueryKind>,
    pub trace: Option<Trace>,
    pub answer: Answer,
}

/// Runs the whole pipeline on one scenario: classify, trace, check every
/// option, select.
pub fn prove(scenario: &Scenario, config: &ProverConfig) -> Result<Proof, ProveError> {
    let question = &scenario.question;
    let query = match classify_query(question) {
        Ok(q) => q,
        Err(err) => {
            let verdicts: Vec<Verdict> = question
                .options
                .iter()
                .map(|o| Verdict::new(&o.label, Status::Undetermined))
                .collect();
            let selection = select_answer(&verdicts);
            return Ok(Proof {
                query: None,
                trace: None,
                answer: Answer {
                    chosen: selection.chosen,
                    verdicts,
                    abstained: true,
                    adapter_resolved: false,
                    proof: Vec::new(),
                    note: Some(err.to_string()),
                },
            });
        }
    };
    let target: AgentId = match query.holder() {
        Some(a) => a.clone(),
        None => scenario
            .header
            .agents
            .first()
            .cloned()
            .ok_or(ProveError::NoAgents)?,
    };
    let required = query.required_order();
    let trace_config = TraceConfig {
        rules: config.rules,
        max_order: config.max_order.unwrap_or(required.max(1)),
        required_order: required,
        scope: config
            .rules
            .is_enabled(RuleId::R6)
            .then(|| QuestionScope::of(question)),
    };
    let trace = build_trace(scenario, &target, &trace_config)?;
    let answer = answer_with_trace(scenario, &query, &trace);
    Ok(Proof {
        query: Some(query),
        trace: Some(trace),
        answer,
    })
}

/// Checks every option against an existing trace and selects the answer.
pub fn answer_with_trace(scenario: &Scenario, query: &QueryKind, trace: &Trace) -> Answer {
    let verdicts: Vec<Verdict> = scenario
        .question
        .options
        .iter()
        .map(|o| check_option(o, trace, query, scenario))
        .collect();
    let selection = select_answer(&verdicts);
    let mut proof: Vec<ProofStep> = verdicts
        .iter()
        .flat_map(|v| v.evidence.iter().cloned())
        .collect();
    proof.push(ProofStep {
        step: trace.len(),
        rule: Justification::Selection,
        conclusion: selection.reason.clone(),
    });
    Answer {
        chosen: selection.chosen,
        verdicts,
        abstained: selection.abstained,
        adapter_resolved: false,
        proof,
        note: None,
    }
}

/// Proof steps licensed by a rule that cite an event the evidence path
/// could not see. Empty for a sound proof.
pub fn unsound_citations<'a>(
    answer: &'a Answer,
    query: &QueryKind,
    trace: &Trace,
) -> Vec<&'a ProofStep> {
    let Some(path) = query.evidence_path() else {
        return Vec::new();
    };
    answer
        .proof
        .iter()
        .filter(|p| matches!(p.rule, Justification::Rule(_)) && p.step >= 1)
        .filter(|p| match trace.steps.get(p.step as usize - 1) {
            Some(step) => !visible_along_path(&step.event, &path, &step.env),
            None => true,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::parse_scenario;
    use crate::trace::tests::SALLY_ANNE;

    fn sally_anne(kind: &str, path: &str) -> Scenario {
        let text = SALLY_ANNE
            .replace(r#""kind":"search""#, &format!(r#""kind":"{kind}""#))
            .replace(
                r#""target_path":["Sally"]"#,
                &format!(r#""target_path":{path}"#),
            )
            .replace(
                r#"{"action":{"agent":"Sally","object":"ball"}}"#,
                r#"{"location":{"object":"ball"}}"#,
            )
            .replace(
                r#""type":"action","action":"search","#,
                r#""type":"at","object":"ball","#,
            );
        parse_scenario(&text, 1).unwrap()
    }

    #[test]
    fn sally_anne_search_picks_basket() {
        let s = parse_scenario(SALLY_ANNE, 1).unwrap();
        let proof = prove(&s, &ProverConfig::default()).unwrap();
        let chosen = s.question.option(&proof.answer.chosen).unwrap();
        assert_eq!(chosen.claim.to_string(), "search(basket)");
        assert!(!proof.answer.abstained);
        let other = proof
            .answer
            .verdicts
            .iter()
            .find(|v| v.label != proof.answer.chosen)
            .unwrap();
        assert_eq!(
            other.status,
            Status::Contradicted(ReasonCode::UnobservedKnowledge)
        );
    }

    #[test]
    fn proofs_cite_only_visible_steps() {
        let s = parse_scenario(SALLY_ANNE, 1).unwrap();
        let proof = prove(&s, &ProverConfig::default()).unwrap();
        let q = proof.query.as_ref().unwrap();
        assert!(unsound_citations(&proof.answer, q, proof.trace.as_ref().unwrap()).is_empty());
    }

    #[test]
    fn unclassifiable_abstains() {
        let s = sally_anne("belief_of_goal", r#"["Sally","Anne","Sally"]"#);
        let proof = prove(&s, &ProverConfig::default()).unwrap();
        assert!(proof.answer.abstained);
        assert!(proof.answer.note.is_some());
        assert!(proof.query.is_none());
    }

    #[test]
    fn order_cap_below_query_is_an_error() {
        let s = sally_anne("belief", r#"["Sally","Anne"]"#);
        let cfg = ProverConfig {
            max_order: Some(1),
            ..ProverConfig::default()
        };
        assert!(matches!(prove(&s, &cfg), Err(ProveError::Trace(_))));
    }

    #[test]
    fn render_is_stable() {
        let s = parse_scenario(SALLY_ANNE, 1).unwrap();
        let a = prove(&s, &ProverConfig::default()).unwrap().answer.render();
        let b = prove(&s, &ProverConfig::default()).unwrap().answer.render();
        assert_eq!(a, b);
        assert!(a.contains("chosen="));
    }
}
