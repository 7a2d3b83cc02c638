//! Batch evaluation, accuracy reports and the small metrics around them.

mod metrics;
mod report;
mod run;

pub use metrics::{
    assign_tier, calibration_stats, compute_gap, count_tokens, read_audit_log, AuditDecision,
    AuditLogRecord, CalibrationStats, GapReport, GapRow, MetricError, Rate, Tier,
};
pub use report::{read_accuracy_csv, AccuracyCsvError, EvalReport, SliceRow, Tally, BUNDLE_FILES};
pub use run::{
    evaluate_items, evaluate_scenarios, items_from_text, load_items, run_eval, EvalConfig,
    EvalError, EvalRecord, Item, Mode,
};
