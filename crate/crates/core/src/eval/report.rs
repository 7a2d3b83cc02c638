use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use super::metrics::{assign_tier, Tier};
use super::run::EvalRecord;

pub const BUNDLE_FILES: [&str; 5] = [
    "summary.txt",
    "records.csv",
    "benchmarks.csv",
    "slices.csv",
    "proofs.txt",
];

const SLICE_VARIABLES: [&str; 3] = ["question_type", "belief_order", "visibility"];

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Tally {
    pub n: usize,
    pub correct: usize,
    pub failed: usize,
    pub abstained: usize,
    pub adapter_resolved: usize,
    pub effective_tokens: usize,
}

impl Tally {
    fn add(&mut self, r: &EvalRecord) {
        self.n += 1;
        self.correct += usize::from(r.correct);
        self.failed += usize::from(r.failed());
        self.abstained += usize::from(r.abstained);
        self.adapter_resolved += usize::from(r.adapter_resolved);
        self.effective_tokens += r.effective_tokens;
    }

    /// Evaluated but wrong; failed records are counted separately.
    pub fn incorrect(&self) -> usize {
        self.n - self.correct - self.failed
    }

    /// Percent correct; failed records count against it.
    pub fn accuracy(&self) -> f64 {
        percent(self.correct, self.n)
    }

    pub fn abstention_rate(&self) -> f64 {
        percent(self.abstained, self.n)
    }

    pub fn tier(&self) -> Tier {
        assign_tier(self.accuracy()).unwrap_or(Tier::Hard)
    }
}

fn percent(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        100.0 * num as f64 / den as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SliceRow {
    pub benchmark: String,
    pub variable: &'static str,
    pub value: String,
    pub tally: Tally,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub records: Vec<EvalRecord>,
    pub proofs: Vec<String>,
    pub total: Tally,
    pub benchmarks: BTreeMap<String, Tally>,
    pub slices: Vec<SliceRow>,
}

fn slice_value(r: &EvalRecord, variable: &str) -> String {
    if r.failed() {
        return "(failed)".into();
    }
    let v = match variable {
        "question_type" => Some(r.question_type.clone()),
        "belief_order" => r.belief_order.map(|o| o.to_string()),
        _ => r.visibility.clone(),
    };
    v.filter(|s| !s.is_empty())
        .unwrap_or_else(|| "(none)".into())
}

impl EvalReport {
    pub fn new(records: Vec<EvalRecord>, proofs: Vec<String>) -> Self {
        let mut total = Tally::default();
        let mut benchmarks: BTreeMap<String, Tally> = BTreeMap::new();
        let mut slices: BTreeMap<(String, &'static str, String), Tally> = BTreeMap::new();
        for r in &records {
            total.add(r);
            benchmarks.entry(r.benchmark.clone()).or_default().add(r);
            for variable in SLICE_VARIABLES {
                slices
                    .entry((r.benchmark.clone(), variable, slice_value(r, variable)))
                    .or_default()
                    .add(r);
            }
        }
        let slices = slices
            .into_iter()
            .map(|((benchmark, variable, value), tally)| SliceRow {
                benchmark,
                variable,
                value,
                tally,
            })
            .collect();
        Self {
            records,
            proofs,
            total,
            benchmarks,
            slices,
        }
    }

    /// Unweighted mean of the per-benchmark accuracies.
    pub fn macro_accuracy(&self) -> Option<f64> {
        if self.benchmarks.is_empty() {
            return None;
        }
        Some(
            self.benchmarks.values().map(Tally::accuracy).sum::<f64>()
                / self.benchmarks.len() as f64,
        )
    }

    pub fn summary_text(&self) -> String {
        let t = &self.total;
        let mut out = String::new();
        let _ = writeln!(out, "records: {}", t.n);
        let _ = writeln!(out, "correct: {}", t.correct);
        let _ = writeln!(out, "incorrect: {}", t.incorrect());
        let _ = writeln!(out, "failed: {}", t.failed);
        let _ = writeln!(out, "abstained: {}", t.abstained);
        let _ = writeln!(out, "adapter_resolved: {}", t.adapter_resolved);
        let _ = writeln!(out, "effective_tokens: {}", t.effective_tokens);
        match self.macro_accuracy() {
            Some(m) => {
                let _ = writeln!(out, "macro_accuracy: {m:.2}");
            }
            None => out.push_str("macro_accuracy: undefined\n"),
        }
        out.push('\n');
        let width = self
            .benchmarks
            .keys()
            .map(String::len)
            .max()
            .unwrap_or(9)
            .max(9);
        let _ = writeln!(
            out,
            "{:<width$}  {:>6}  {:>8}  {:<6}  {:>10}",
            "benchmark", "n", "accuracy", "tier", "abstention"
        );
        for (name, b) in &self.benchmarks {
            let _ = writeln!(
                out,
                "{:<width$}  {:>6}  {:>8.2}  {:<6}  {:>10.2}",
                name,
                b.n,
                b.accuracy(),
                b.tier(),
                b.abstention_rate()
            );
        }
        out
    }

    pub fn records_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let _ = w.write_record([
            "id",
            "benchmark",
            "question_type",
            "belief_order",
            "visibility",
            "chosen",
            "gold",
            "correct",
            "abstained",
            "adapter_resolved",
            "effective_tokens",
            "failure",
        ]);
        for r in &self.records {
            let _ = w.write_record([
                r.id.clone(),
                r.benchmark.clone(),
                r.question_type.clone(),
                r.belief_order.map(|o| o.to_string()).unwrap_or_default(),
                r.visibility.clone().unwrap_or_default(),
                r.chosen.clone(),
                r.gold.clone().unwrap_or_default(),
                r.correct.to_string(),
                r.abstained.to_string(),
                r.adapter_resolved.to_string(),
                r.effective_tokens.to_string(),
                r.failure.clone().unwrap_or_default(),
            ]);
        }
        finish(w)
    }

    /// Starts with `benchmark,accuracy`, so it can be fed back to the gap
    /// command.
    pub fn benchmarks_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let _ = w.write_record([
            "benchmark",
            "accuracy",
            "n",
            "correct",
            "failed",
            "abstention",
            "tier",
        ]);
        for (name, b) in &self.benchmarks {
            let _ = w.write_record([
                name.clone(),
                format!("{:.2}", b.accuracy()),
                b.n.to_string(),
                b.correct.to_string(),
                b.failed.to_string(),
                format!("{:.2}", b.abstention_rate()),
                b.tier().to_string(),
            ]);
        }
        finish(w)
    }

    pub fn slices_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let _ = w.write_record([
            "benchmark",
            "variable",
            "value",
            "n",
            "accuracy",
            "tier",
            "abstention",
        ]);
        for s in &self.slices {
            let _ = w.write_record([
                s.benchmark.clone(),
                s.variable.to_string(),
                s.value.clone(),
                s.tally.n.to_string(),
                format!("{:.2}", s.tally.accuracy()),
                s.tally.tier().to_string(),
                format!("{:.2}", s.tally.abstention_rate()),
            ]);
        }
        finish(w)
    }

    pub fn proofs_text(&self) -> String {
        self.proofs.join("\n")
    }

    /// Writes the report bundle into `dir`, creating it if needed.
    pub fn write_bundle(&self, dir: &Path) -> io::Result<()> {
        std::fs::create_dir_all(dir)?;
        let contents = [
            self.summary_text(),
            self.records_csv(),
            self.benchmarks_csv(),
            self.slices_csv(),
            self.proofs_text(),
        ];
        for (name, body) in BUNDLE_FILES.iter().zip(contents) {
            std::fs::write(dir.join(name), body)?;
        }
        Ok(())
    }
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    let bytes = w.into_inner().unwrap_or_default();
    String::from_utf8(bytes).unwrap_or_default()
}

#[derive(Debug, Error, PartialEq)]
pub enum AccuracyCsvError {
    #[error("missing column `{0}`")]
    MissingColumn(&'static str),
    #[error("row {row}: {message}")]
    Row { row: usize, message: String },
    #[error("benchmark `{0}` appears twice")]
    Duplicate(String),
}

/// Reads `benchmark,accuracy` pairs from any csv with those two columns.
pub fn read_accuracy_csv(text: &str) -> Result<BTreeMap<String, f64>, AccuracyCsvError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| AccuracyCsvError::Row {
            row: 1,
            message: e.to_string(),
        })?
        .clone();
    let column = |name: &'static str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or(AccuracyCsvError::MissingColumn(name))
    };
    let (bi, ai) = (column("benchmark")?, column("accuracy")?);
    let mut out = BTreeMap::new();
    for (i, row) in reader.records().enumerate() {
        let bad = |message: String| AccuracyCsvError::Row {
            row: i + 2,
            message,
        };
        let row = row.map_err(|e| bad(e.to_string()))?;
        let name = row.get(bi).unwrap_or("").trim().to_string();
        if name.is_empty() || name == "macro" {
            continue;
        }
        let raw = row.get(ai).unwrap_or("").trim();
        let acc: f64 = raw
            .parse()
            .map_err(|_| bad(format!("accuracy `{raw}` is not a number")))?;
        if out.insert(name.clone(), acc).is_some() {
            return Err(AccuracyCsvError::Duplicate(name));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(id: &str, bench: &str, correct: bool, failed: bool) -> EvalRecord {
        EvalRecord {
            id: id.into(),
            benchmark: bench.into(),
            question_type: "belief".into(),
            belief_order: Some(1),
            visibility: None,
            chosen: "A".into(),
            gold: Some(if correct { "A" } else { "B" }.into()),
            correct,
            abstained: false,
            adapter_resolved: false,
            effective_tokens: 0,
            failure: failed.then(|| "bad".to_string()),
        }
    }

    #[test]
    fn macro_is_unweighted() {
        let report = EvalReport::new(
            vec![
                record("1", "x", true, false),
                record("2", "y", true, false),
                record("3", "y", false, false),
                record("4", "y", false, true),
            ],
            vec![],
        );
        let m = report.macro_accuracy().unwrap();
        assert!((m - (100.0 + 100.0 / 3.0) / 2.0).abs() < 1e-9);
        assert!(report
            .slices
            .iter()
            .any(|s| s.value == "(failed)" && s.benchmark == "y"));
    }

    #[test]
    fn accuracy_csv_round_trip() {
        let report = EvalReport::new(vec![record("1", "x", true, false)], vec![]);
        let read = read_accuracy_csv(&report.benchmarks_csv()).unwrap();
        assert_eq!(read.get("x"), Some(&100.0));
        assert_eq!(
            read_accuracy_csv("name,acc\n"),
            Err(AccuracyCsvError::MissingColumn("benchmark"))
        );
    }
}
