use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::perspective::RuleSet;
use crate::prover::{
    prove, resolve_fallback, AdapterError, AdapterRegistry, FallbackRequest, ProverConfig,
    SolverAdapter,
};
use crate::scenario::{parse_scenario, Scenario};

use super::metrics::count_tokens;
use super::report::EvalReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Abstentions keep the default option.
    Symbolic,
    /// Abstentions are handed to the configured solver adapter.
    Adapter,
}

impl FromStr for Mode {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "symbolic" => Ok(Mode::Symbolic),
            "adapter" => Ok(Mode::Adapter),
            other => Err(EvalError::UnknownMode(other.to_string())),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Symbolic => "symbolic",
            Mode::Adapter => "adapter",
        })
    }
}

#[derive(Debug, Clone)]
pub struct EvalConfig {
    pub mode: Mode,
    pub adapter: String,
    pub max_order: Option<usize>,
    pub workers: usize,
    pub rules: RuleSet,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Symbolic,
            adapter: "null".into(),
            max_order: None,
            workers: 1,
            rules: RuleSet::all(),
        }
    }
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("cannot read {}", path.display())]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("unknown mode `{0}` (expected symbolic or adapter)")]
    UnknownMode(String),
    #[error(transparent)]
    Adapter(#[from] AdapterError),
    #[error("cannot start {0} workers: {1}")]
    Pool(usize, String),
}

/// One evaluated scenario.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvalRecord {
    pub id: String,
    pub benchmark: String,
    pub question_type: String,
    pub belief_order: Option<u32>,
    pub visibility: Option<String>,
    pub chosen: String,
    pub gold: Option<String>,
    pub correct: bool,
    pub abstained: bool,
    pub adapter_resolved: bool,
    pub effective_tokens: usize,
    /// Set when the record could not be parsed or proved.
    pub failure: Option<String>,
}

impl EvalRecord {
    pub fn failed(&self) -> bool {
        self.failure.is_some()
    }
}

/// An input line, parsed or not.
pub enum Item {
    Parsed(Box<Scenario>),
    Failed {
        id: String,
        benchmark: String,
        message: String,
    },
}

fn failed_item(raw: &str, fallback_id: String, message: String) -> Item {
    let value: Option<serde_json::Value> = serde_json::from_str(raw).ok();
    let field = |v: &serde_json::Value, path: &[&str]| {
        path.iter()
            .try_fold(v, |v, k| v.get(*k))
            .and_then(|v| v.as_str())
            .map(str::to_string)
    };
    Item::Failed {
        id: value
            .as_ref()
            .and_then(|v| field(v, &["id"]))
            .unwrap_or(fallback_id),
        benchmark: value
            .as_ref()
            .and_then(|v| field(v, &["meta", "benchmark"]))
            .unwrap_or_else(|| "(unknown)".into()),
        message,
    }
}

/// Reads every record of every file. Unreadable files are fatal; bad
/// records become failed items.
pub fn load_items(inputs: &[PathBuf]) -> Result<Vec<Item>, EvalError> {
    let mut items = Vec::new();
    for path in inputs {
        let text = std::fs::read_to_string(path).map_err(|source| EvalError::Read {
            path: path.clone(),
            source,
        })?;
        items.extend(items_from_text(&text, path));
    }
    Ok(items)
}

pub fn items_from_text(text: &str, origin: &Path) -> Vec<Item> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, line)| match parse_scenario(line, i + 1) {
            Ok(s) => Item::Parsed(Box::new(s)),
            Err(e) => failed_item(
                line,
                format!("{}:{}", origin.display(), i + 1),
                e.to_string(),
            ),
        })
        .collect()
}

fn evaluate_one(
    scenario: &Scenario,
    cfg: &EvalConfig,
    adapter: Option<&Arc<dyn SolverAdapter>>,
) -> (EvalRecord, String) {
    let meta = &scenario.meta;
    let mut record = EvalRecord {
        id: scenario.id.clone(),
        benchmark: meta.benchmark.clone(),
        question_type: meta.question_type.clone().unwrap_or_default(),
        belief_order: meta
            .belief_order
            .or(Some(scenario.question.target_path.len() as u32)),
        visibility: meta.visibility.clone(),
        chosen: String::new(),
        gold: scenario.question.gold.clone(),
        correct: false,
        abstained: false,
        adapter_resolved: false,
        effective_tokens: 0,
        failure: None,
    };
    let config = ProverConfig {
        rules: cfg.rules,
        max_order: cfg.max_order,
    };
    let proof = match prove(scenario, &config) {
        Ok(p) => p,
        Err(e) => {
            record.failure = Some(e.to_string());
            if record.question_type.is_empty() {
                record.question_type = "(failed)".into();
            }
            return (record, format!("## {}\nfailed: {e}\n", scenario.id));
        }
    };
    let mut answer = proof.answer;
    if record.question_type.is_empty() {
        record.question_type = proof
            .query
            .as_ref()
            .map_or("(unclassified)", |q| q.label())
            .to_string();
    }
    if let (true, Some(adapter)) = (answer.abstained, adapter) {
        let request = FallbackRequest {
            scenario,
            trace: proof.trace.as_ref(),
            options: &scenario.question.options,
            default: &answer.chosen,
        };
        let outcome = resolve_fallback(adapter.as_ref(), &request);
        record.effective_tokens = count_tokens(&outcome.prompt) + count_tokens(&outcome.response);
        answer.adapter_resolved = outcome.failure.is_none();
        answer.chosen = outcome.label;
    }
    record.chosen = answer.chosen.clone();
    record.abstained = answer.abstained;
    record.adapter_resolved = answer.adapter_resolved;
    record.correct = record.gold.as_deref() == Some(record.chosen.as_str());
    (record, format!("## {}\n{}", scenario.id, answer.render()))
}

/// Evaluates already loaded items. Output is sorted by id; items with the
/// same id keep their input order.
pub fn evaluate_items(
    items: &[Item],
    cfg: &EvalConfig,
    registry: &AdapterRegistry,
) -> Result<EvalReport, EvalError> {
    let adapter = match cfg.mode {
        Mode::Symbolic => None,
        Mode::Adapter => Some(registry.get(&cfg.adapter)?),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| EvalError::Pool(cfg.workers, e.to_string()))?;
    let mut results: Vec<(usize, EvalRecord, String)> = pool.install(|| {
        items
            .par_iter()
            .enumerate()
            .map(|(i, item)| match item {
                Item::Parsed(s) => {
                    let (r, p) = evaluate_one(s, cfg, adapter.as_ref());
                    (i, r, p)
                }
                Item::Failed {
                    id,
                    benchmark,
                    message,
                } => (
                    i,
                    EvalRecord {
                        id: id.clone(),
                        benchmark: benchmark.clone(),
                        question_type: "(failed)".into(),
                        belief_order: None,
                        visibility: None,
                        chosen: String::new(),
                        gold: None,
                        correct: false,
                        abstained: false,
                        adapter_resolved: false,
                        effective_tokens: 0,
                        failure: Some(message.clone()),
                    },
                    format!("## {id}\nfailed: {message}\n"),
                ),
            })
            .collect()
    });
    results.sort_by(|a, b| a.1.id.cmp(&b.1.id).then(a.0.cmp(&b.0)));
    let (records, proofs): (Vec<EvalRecord>, Vec<String>) =
        results.into_iter().map(|(_, r, p)| (r, p)).unzip();
    Ok(EvalReport::new(records, proofs))
}

/// Loads the input files and evaluates every record.
pub fn run_eval(
    inputs: &[PathBuf],
    cfg: &EvalConfig,
    registry: &AdapterRegistry,
) -> Result<EvalReport, EvalError> {
    let items = load_items(inputs)?;
    evaluate_items(&items, cfg, registry)
}

/// Evaluates in-memory scenarios.
pub fn evaluate_scenarios(
    scenarios: &[Scenario],
    cfg: &EvalConfig,
    registry: &AdapterRegistry,
) -> Result<EvalReport, EvalError> {
    let items: Vec<Item> = scenarios
        .iter()
        .cloned()
        .map(|s| Item::Parsed(Box::new(s)))
        .collect();
    evaluate_items(&items, cfg, registry)
}
