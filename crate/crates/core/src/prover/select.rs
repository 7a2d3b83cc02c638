use super::{Status, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    pub chosen: String,
    pub abstained: bool,
    pub reason: String,
}

/// The option with the most trace support among `candidates`, ties going
/// to the earliest in option order.
pub fn default_option<'a>(
    candidates: impl IntoIterator<Item = &'a Verdict>,
) -> Option<&'a Verdict> {
    let mut best: Option<&Verdict> = None;
    for v in candidates {
        if best.is_none_or(|b| v.support > b.support) {
            best = Some(v);
        }
    }
    best
}

/// Picks the unique consistent option, otherwise abstains to a
/// deterministic default.
pub fn select_answer(verdicts: &[Verdict]) -> Selection {
    let consistent: Vec<&Verdict> = verdicts
        .iter()
        .filter(|v| v.status.is_consistent())
        .collect();
    let undetermined: Vec<&Verdict> = verdicts
        .iter()
        .filter(|v| v.status == Status::Undetermined)
        .collect();
    let pick = |v: Option<&Verdict>| v.map(|v| v.label.clone()).unwrap_or_default();
    match (consistent.len(), undetermined.len()) {
        (1, _) => Selection {
            chosen: consistent[0].label.clone(),
            abstained: false,
            reason: format!("{} is the only consistent option", consistent[0].label),
        },
        (n, _) if n >= 2 => Selection {
            chosen: pick(default_option(consistent.iter().copied())),
            abstained: true,
            reason: format!("{n} options are consistent; default by trace support"),
        },
        (_, u) if u == verdicts.len() => Selection {
            chosen: pick(default_option(verdicts)),
            abstained: true,
            reason: "no option is decided by the trace; default by trace support".into(),
        },
        (_, u) if u > 0 => Selection {
            chosen: undetermined[0].label.clone(),
            abstained: true,
            reason: format!(
                "no consistent option; first undetermined is {}",
                undetermined[0].label
            ),
        },
        _ => Selection {
            chosen: pick(default_option(verdicts)),
            abstained: true,
            reason: "every option is contradicted; default by trace support".into(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prover::ReasonCode;

    fn v(label: &str, status: Status, support: u32) -> Verdict {
        let mut v = Verdict::new(label, status);
        v.support = support;
        v
    }

    const NO: Status = Status::Contradicted(ReasonCode::BeliefMismatch);

    #[test]
    fn unique_consistent_wins() {
        let s = select_answer(&[v("A", Status::Consistent, 0), v("B", NO, 9)]);
        assert_eq!((s.chosen.as_str(), s.abstained), ("A", false));
        let s = select_answer(&[v("A", NO, 9), v("B", Status::Consistent, 0)]);
        assert_eq!((s.chosen.as_str(), s.abstained), ("B", false));
    }

    #[test]
    fn all_undetermined_abstains_to_default() {
        let s = select_answer(&[
            v("A", Status::Undetermined, 0),
            v("B", Status::Undetermined, 0),
        ]);
        assert_eq!((s.chosen.as_str(), s.abstained), ("A", true));
        let s = select_answer(&[
            v("A", Status::Undetermined, 1),
            v("B", Status::Undetermined, 3),
        ]);
        assert_eq!(s.chosen, "B");
    }

    #[test]
    fn tie_defaults_within_consistent_set() {
        let s = select_answer(&[
            v("A", NO, 10),
            v("B", Status::Consistent, 2),
            v("C", Status::Consistent, 2),
        ]);
        assert_eq!((s.chosen.as_str(), s.abstained), ("B", true));
    }

    #[test]
    fn mixed_picks_first_undetermined() {
        let s = select_answer(&[
            v("A", NO, 5),
            v("B", Status::Undetermined, 0),
            v("C", Status::Undetermined, 4),
        ]);
        assert_eq!((s.chosen.as_str(), s.abstained), ("B", true));
    }

    #[test]
    fn all_contradicted_defaults() {
        let s = select_answer(&[v("A", NO, 1), v("B", NO, 2)]);
        assert_eq!((s.chosen.as_str(), s.abstained), ("B", true));
    }
}
