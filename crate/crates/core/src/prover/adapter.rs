use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::scenario::{AnswerOption, Scenario};
use crate::trace::Trace;

/// Everything an external solver sees when the prover abstains.
pub struct FallbackRequest<'a> {
    pub scenario: &'a Scenario,
    pub trace: Option<&'a Trace>,
    pub options: &'a [AnswerOption],
    pub default: &'a str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdapterChoice {
    pub label: String,
    /// Text sent to and received from the solver, kept for token counting.
    pub prompt: String,
    pub response: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdapterError {
    #[error("adapter `{0}` is not registered")]
    Unknown(String),
    #[error("adapter returned label `{0}`, which is not an option")]
    BadLabel(String),
    #[error("adapter failed: {0}")]
    Failed(String),
}

/// A solver consulted only when the prover abstains.
pub trait SolverAdapter: Send + Sync {
    fn name(&self) -> &str;
    fn choose(&self, request: &FallbackRequest<'_>) -> Result<AdapterChoice, AdapterError>;
}

/// Returns the default option unchanged and costs nothing.
#[derive(Debug, Clone, Copy, Default)]
pub struct NullAdapter;

impl SolverAdapter for NullAdapter {
    fn name(&self) -> &str {
        "null"
    }

    fn choose(&self, request: &FallbackRequest<'_>) -> Result<AdapterChoice, AdapterError> {
        Ok(AdapterChoice {
            label: request.default.to_string(),
            prompt: String::new(),
            response: String::new(),
        })
    }
}

/// Read-only after startup.
#[derive(Clone)]
pub struct AdapterRegistry {
    adapters: BTreeMap<String, Arc<dyn SolverAdapter>>,
}

impl Default for AdapterRegistry {
    fn default() -> Self {
        let mut r = Self {
            adapters: BTreeMap::new(),
        };
        r.register(Arc::new(NullAdapter));
        r
    }
}

impl AdapterRegistry {
    pub fn register(&mut self, adapter: Arc<dyn SolverAdapter>) {
        self.adapters.insert(adapter.name().to_string(), adapter);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn SolverAdapter>, AdapterError> {
        self.adapters
            .get(name)
            .cloned()
            .ok_or_else(|| AdapterError::Unknown(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.adapters.keys().map(String::as_str)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FallbackOutcome {
    pub label: String,
    pub prompt: String,
    pub response: String,
    /// Set when the adapter failed and the default was kept.
    pub failure: Option<String>,
}

/// Asks the adapter to break an abstention. Any failure, including a label
/// that is not among the options, keeps the default.
pub fn resolve_fallback(
    adapter: &dyn SolverAdapter,
    request: &FallbackRequest<'_>,
) -> FallbackOutcome {
    let result = adapter.choose(request).and_then(|choice| {
        if request.options.iter().any(|o| o.label == choice.label) {
            Ok(choice)
        } else {
            Err(AdapterError::BadLabel(choice.label))
        }
    });
    match result {
        Ok(choice) => FallbackOutcome {
            label: choice.label,
            prompt: choice.prompt,
            response: choice.response,
            failure: None,
        },
        Err(err) => {
            log::warn!(
                "adapter `{}` failed on {}: {err}; keeping default {}",
                adapter.name(),
                request.scenario.id,
                request.default
            );
            FallbackOutcome {
                label: request.default.to_string(),
                prompt: String::new(),
                response: String::new(),
                failure: Some(err.to_string()),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::parse_scenario;
    use crate::trace::tests::SALLY_ANNE;

    struct Broken;

    impl SolverAdapter for Broken {
        fn name(&self) -> &str {
            "broken"
        }
        fn choose(&self, _: &FallbackRequest<'_>) -> Result<AdapterChoice, AdapterError> {
            Err(AdapterError::Failed("timeout".into()))
        }
    }

    struct Wild;

    impl SolverAdapter for Wild {
        fn name(&self) -> &str {
            "wild"
        }
        fn choose(&self, _: &FallbackRequest<'_>) -> Result<AdapterChoice, AdapterError> {
            Ok(AdapterChoice {
                label: "Z".into(),
                prompt: "p".into(),
                response: "r".into(),
            })
        }
    }

    fn request(s: &Scenario) -> FallbackRequest<'_> {
        FallbackRequest {
            scenario: s,
            trace: None,
            options: &s.question.options,
            default: "B",
        }
    }

    #[test]
    fn null_returns_default() {
        let s = parse_scenario(SALLY_ANNE, 1).unwrap();
        let out = resolve_fallback(&NullAdapter, &request(&s));
        assert_eq!(out.label, "B");
        assert!(out.failure.is_none());
    }

    #[test]
    fn failures_keep_default() {
        let s = parse_scenario(SALLY_ANNE, 1).unwrap();
        for adapter in [&Broken as &dyn SolverAdapter, &Wild] {
            let out = resolve_fallback(adapter, &request(&s));
            assert_eq!(out.label, "B");
            assert!(out.failure.is_some());
        }
    }

    #[test]
    fn registry_knows_null() {
        let r = AdapterRegistry::default();
        assert!(r.get("null").is_ok());
        assert!(matches!(r.get("gpt"), Err(AdapterError::Unknown(_))));
    }
}
