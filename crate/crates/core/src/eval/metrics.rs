use std::fmt;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("accuracy {0} is outside [0, 100]")]
    OutOfRange(f64),
    #[error("gap needs at least one benchmark pair")]
    NoPairs,
    #[error("audit log is empty")]
    EmptyLog,
    #[error("audit record `{id}`: {reason}")]
    MalformedAudit { id: String, reason: String },
    #[error("audit log line {line}: {message}")]
    AuditSyntax { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tier {
    Easy,
    Medium,
    Hard,
}

impl Tier {
    pub fn name(self) -> &'static str {
        match self {
            Tier::Easy => "easy",
            Tier::Medium => "medium",
            Tier::Hard => "hard",
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Easy from 98 up, medium on [90, 98), hard below 90.
pub fn assign_tier(accuracy: f64) -> Result<Tier, MetricError> {
    if !(0.0..=100.0).contains(&accuracy) {
        return Err(MetricError::OutOfRange(accuracy));
    }
    Ok(if accuracy >= 98.0 {
        Tier::Easy
    } else if accuracy >= 90.0 {
        Tier::Medium
    } else {
        Tier::Hard
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapRow {
    pub benchmark: String,
    pub model: f64,
    pub symbolic: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapReport {
    pub rows: Vec<GapRow>,
    /// Mean of the per-benchmark gaps.
    pub macro_gap: f64,
}

impl GapReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("benchmark,model,symbolic,gap\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{:.2},{:.2},{:.2}\n",
                r.benchmark, r.model, r.symbolic, r.gap
            ));
        }
        out.push_str(&format!("macro,,,{:.2}\n", self.macro_gap));
        out
    }
}

/// Per-benchmark `model - symbolic` and their mean.
pub fn compute_gap<S: AsRef<str>>(pairs: &[(S, f64, f64)]) -> Result<GapReport, MetricError> {
    if pairs.is_empty() {
        return Err(MetricError::NoPairs);
    }
    let rows: Vec<GapRow> = pairs
        .iter()
        .map(|(b, model, sym)| GapRow {
            benchmark: b.as_ref().to_string(),
            model: *model,
            symbolic: *sym,
            gap: model - sym,
        })
        .collect();
    let macro_gap = rows.iter().map(|r| r.gap).sum::<f64>() / rows.len() as f64;
    Ok(GapReport { rows, macro_gap })
}

fn token_pattern() -> &'static Regex {
    static PATTERN: OnceLock<Regex> = OnceLock::new();
    PATTERN.get_or_init(|| Regex::new(r"\w+|[^\w\s]").expect("valid token pattern"))
}

/// Word runs plus every other non-space character on its own.
pub fn count_tokens(text: &str) -> usize {
    token_pattern().find_iter(text).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AuditDecision {
    Accept,
    Reject,
    Abstain,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditLogRecord {
    pub id: String,
    pub harness_answer: String,
    pub harness_correct: bool,
    pub decision: AuditDecision,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub override_answer: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub override_correct: Option<bool>,
}

impl AuditLogRecord {
    pub fn validate(&self) -> Result<(), MetricError> {
        let rejected = self.decision == AuditDecision::Reject;
        let has_override = self.override_answer.is_some() || self.override_correct.is_some();
        let complete = self.override_answer.is_some() && self.override_correct.is_some();
        let bad = |reason: &str| MetricError::MalformedAudit {
            id: self.id.clone(),
            reason: reason.into(),
        };
        if rejected && !complete {
            return Err(bad("a reject needs override_answer and override_correct"));
        }
        if !rejected && has_override {
            return Err(bad("only a reject may carry override fields"));
        }
        Ok(())
    }
}

/// Parses a line-delimited audit log. Blank lines are skipped.
pub fn read_audit_log(text: &str) -> Result<Vec<AuditLogRecord>, MetricError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: AuditLogRecord = serde_json::from_str(line).map_err(|e| {
            let id = serde_json::from_str::<serde_json::Value>(line)
                .ok()
                .and_then(|v| v.get("id").and_then(|id| id.as_str()).map(str::to_string));
            match id {
                Some(id) => MetricError::MalformedAudit {
                    id,
                    reason: e.to_string(),
                },
                None => MetricError::AuditSyntax {
                    line: i + 1,
                    message: e.to_string(),
                },
            }
        })?;
        record.validate()?;
        out.push(record);
    }
    Ok(out)
}

/// A fraction that keeps its counts; a zero denominator is undefined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Rate {
    pub num: usize,
    pub den: usize,
}

impl Rate {
    pub fn value(self) -> Option<f64> {
        (self.den > 0).then(|| self.num as f64 / self.den as f64)
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v:.2} ({}/{})", self.num, self.den),
            None => f.write_str("undefined"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CalibrationStats {
    pub records: usize,
    pub rejects: usize,
    pub rejected_proof_correctness: Rate,
    pub override_precision: Rate,
}

pub fn calibration_stats(log: &[AuditLogRecord]) -> Result<CalibrationStats, MetricError> {
    if log.is_empty() {
        return Err(MetricError::EmptyLog);
    }
    for r in log {
        r.validate()?;
    }
    let rejects: Vec<&AuditLogRecord> = log
        .iter()
        .filter(|r| r.decision == AuditDecision::Reject)
        .collect();
    let den = rejects.len();
    Ok(CalibrationStats {
        records: log.len(),
        rejects: den,
        rejected_proof_correctness: Rate {
            num: rejects.iter().filter(|r| r.harness_correct).count(),
            den,
        },
        override_precision: Rate {
            num: rejects
                .iter()
                .filter(|r| r.override_correct == Some(true))
                .count(),
            den,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn tier_edges() {
        assert_eq!(assign_tier(98.0), Ok(Tier::Easy));
        assert_eq!(assign_tier(97.99), Ok(Tier::Medium));
        assert_eq!(assign_tier(90.0), Ok(Tier::Medium));
        assert_eq!(assign_tier(89.99), Ok(Tier::Hard));
        assert!(assign_tier(100.01).is_err());
        assert!(assign_tier(f64::NAN).is_err());
    }

    #[test]
    fn tokens_small_cases() {
        assert_eq!(count_tokens("Hello, world!"), 4);
        assert_eq!(count_tokens(""), 0);
        assert_eq!(count_tokens("a b c"), 3);
    }

    #[test]
    fn identity_gap() {
        let g = compute_gap(&[("x", 50.0, 50.0)]).unwrap();
        assert_eq!(g.rows[0].gap, 0.0);
        assert_eq!(g.macro_gap, 0.0);
        assert_eq!(compute_gap::<&str>(&[]), Err(MetricError::NoPairs));
    }

    #[test]
    fn override_fields_only_on_reject() {
        let ok = r#"{"id":"a","harness_answer":"A","harness_correct":true,"decision":"accept"}"#;
        assert!(read_audit_log(ok).is_ok());
        let bad = r#"{"id":"b","harness_answer":"A","harness_correct":true,"decision":"reject"}"#;
        assert!(
            matches!(read_audit_log(bad), Err(MetricError::MalformedAudit { id, .. }) if id == "b")
        );
        let bad = r#"{"id":"c","harness_answer":"A","harness_correct":true,"decision":"abstain","override_answer":"B","override_correct":false}"#;
        assert!(read_audit_log(bad).is_err());
    }

    proptest! {
        #[test]
        fn tiers_partition_the_range(acc in 0.0f64..=100.0) {
            let t = assign_tier(acc).unwrap();
            prop_assert_eq!(t == Tier::Easy, acc >= 98.0);
            prop_assert_eq!(t == Tier::Hard, acc < 90.0);
        }

        #[test]
        fn macro_gap_is_mean(pairs in prop::collection::vec((0.0f64..100.0, 0.0f64..100.0), 1..8)) {
            let named: Vec<(String, f64, f64)> =
                pairs.iter().enumerate().map(|(i, (m, s))| (format!("b{i}"), *m, *s)).collect();
            let g = compute_gap(&named).unwrap();
            let mean = pairs.iter().map(|(m, s)| m - s).sum::<f64>() / pairs.len() as f64;
            prop_assert!((g.macro_gap - mean).abs() < 1e-9);
        }

        #[test]
        fn tokens_are_additive_over_spaces(a in "[a-z,.!?]{0,12}", b in "[a-z,.!?]{0,12}") {
            prop_assert_eq!(count_tokens(&format!("{a} {b}")), count_tokens(&a) + count_tokens(&b));
        }
    }
}
