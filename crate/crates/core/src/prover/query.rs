use std::fmt;

use thiserror::Error;

use crate::ids::{AgentId, AttributeId, ObjectId};
use crate::perspective::BeliefPath;
use crate::scenario::{IntentMode, OptionClaim, Question, QuestionKind, Subject};

/// The fact a reality, memory or belief query reads.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FactKey {
    Location(ObjectId),
    Attribute(ObjectId, AttributeId),
}

impl fmt::Display for FactKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactKey::Location(o) => write!(f, "{o}"),
            FactKey::Attribute(o, a) => write!(f, "{o}.{a}"),
        }
    }
}

/// A question mapped onto the part of the trace that answers it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QueryKind {
    Reality(FactKey),
    Memory {
        agent: AgentId,
        key: FactKey,
    },
    Belief {
        path: BeliefPath,
        key: FactKey,
    },
    Goal {
        agent: AgentId,
    },
    Action {
        agent: AgentId,
        object: Option<ObjectId>,
    },
    SocialIntent {
        speaker: AgentId,
        listener: AgentId,
        mode: IntentMode,
    },
    BeliefOfGoal {
        path: BeliefPath,
    },
}

impl QueryKind {
    /// The agent whose trace answers the query. Reality queries have none.
    pub fn holder(&self) -> Option<&AgentId> {
        match self {
            QueryKind::Reality(_) => None,
            QueryKind::Memory { agent, .. }
            | QueryKind::Goal { agent }
            | QueryKind::Action { agent, .. } => Some(agent),
            QueryKind::Belief { path, .. } | QueryKind::BeliefOfGoal { path } => {
                Some(path.holder())
            }
            QueryKind::SocialIntent { speaker, .. } => Some(speaker),
        }
    }

    /// Deepest belief path the trace has to maintain.
    pub fn required_order(&self) -> usize {
        match self {
            QueryKind::Reality(_) => 0,
            QueryKind::Belief { path, .. } => path.len(),
            QueryKind::BeliefOfGoal { path } => path.len() - 1,
            _ => 1,
        }
    }

    /// The belief table the query's conclusions are drawn from. Proof steps
    /// may only cite events visible along this path.
    pub fn evidence_path(&self) -> Option<BeliefPath> {
        match self {
            QueryKind::Reality(_) => None,
            QueryKind::Belief { path, .. } => Some(path.clone()),
            QueryKind::BeliefOfGoal { path } => path.parent(),
            other => other.holder().cloned().map(BeliefPath::single),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            QueryKind::Reality(_) => "reality",
            QueryKind::Memory { .. } => "memory",
            QueryKind::Belief { path, .. } if path.len() > 1 => "nested_belief",
            QueryKind::Belief { .. } => "belief",
            QueryKind::Goal { .. } => "goal",
            QueryKind::Action { .. } => "action",
            QueryKind::SocialIntent { .. } => "social_intent",
            QueryKind::BeliefOfGoal { .. } => "belief_of_goal",
        }
    }
}

impl fmt::Display for QueryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryKind::Reality(k) => write!(f, "reality({k})"),
            QueryKind::Memory { agent, key } => write!(f, "memory({agent},{key})"),
            QueryKind::Belief { path, key } => write!(f, "belief({path},{key})"),
            QueryKind::Goal { agent } => write!(f, "goal({agent})"),
            QueryKind::Action { agent, .. } => write!(f, "action({agent})"),
            QueryKind::SocialIntent {
                speaker,
                listener,
                mode,
            } => write!(f, "social_intent({speaker},{listener},{mode:?})"),
            QueryKind::BeliefOfGoal { path } => write!(f, "belief_of_goal({path})"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("{kind:?} question needs a target path of length {expected}, got {got}")]
    PathLength {
        kind: QuestionKind,
        expected: &'static str,
        got: usize,
    },
    #[error("{kind:?} question cannot be asked about subject {subject}")]
    SubjectMismatch { kind: QuestionKind, subject: String },
    #[error("belief-of-goal nesting deeper than 2 is not supported (got {0})")]
    GoalNestingTooDeep(usize),
    #[error("cannot classify question: {0}")]
    Unclassifiable(String),
}

fn fact_key(subject: &Subject) -> Option<FactKey> {
    match subject {
        Subject::Location { object } => Some(FactKey::Location(object.clone())),
        Subject::Attribute { object, attribute } => {
            Some(FactKey::Attribute(object.clone(), attribute.clone()))
        }
        _ => None,
    }
}

fn subject_name(subject: &Subject) -> String {
    format!("{subject:?}")
}

fn mismatch(kind: QuestionKind, subject: &Subject) -> ClassifyError {
    ClassifyError::SubjectMismatch {
        kind,
        subject: subject_name(subject),
    }
}

fn looks_like_search(text: &str) -> bool {
    let lower = text.to_lowercase();
    ["look for", "search", "will look", "go to find"]
        .iter()
        .any(|p| lower.contains(p))
}

/// Maps a question onto a trace query. Uses the benchmark label when
/// present, otherwise path length, subject and option shapes.
pub fn classify_query(question: &Question) -> Result<QueryKind, ClassifyError> {
    let path = &question.target_path;
    let subject = &question.subject;
    let kind = match question.kind_hint {
        Some(kind) => kind,
        None => infer_kind(question)?,
    };
    let bpath = || {
        BeliefPath::new(path.iter().cloned()).ok_or(ClassifyError::PathLength {
            kind,
            expected: ">= 1",
            got: 0,
        })
    };
    match kind {
        QuestionKind::Reality => fact_key(subject)
            .map(QueryKind::Reality)
            .ok_or_else(|| mismatch(kind, subject)),
        QuestionKind::Memory => {
            if path.len() != 1 {
                return Err(ClassifyError::PathLength {
                    kind,
                    expected: "1",
                    got: path.len(),
                });
            }
            let key = fact_key(subject).ok_or_else(|| mismatch(kind, subject))?;
            Ok(QueryKind::Memory {
                agent: path[0].clone(),
                key,
            })
        }
        QuestionKind::Belief => {
            let key = fact_key(subject).ok_or_else(|| mismatch(kind, subject))?;
            Ok(QueryKind::Belief {
                path: bpath()?,
                key,
            })
        }
        QuestionKind::Search => match subject {
            Subject::Action { agent, object } => Ok(QueryKind::Action {
                agent: agent.clone(),
                object: object.clone(),
            }),
            Subject::Location { object } => {
                let agent = path.first().ok_or(ClassifyError::PathLength {
                    kind,
                    expected: "1",
                    got: 0,
                })?;
                Ok(QueryKind::Action {
                    agent: agent.clone(),
                    object: Some(object.clone()),
                })
            }
            other => Err(mismatch(kind, other)),
        },
        QuestionKind::Goal => match subject {
            Subject::Goal { agent } => Ok(QueryKind::Goal {
                agent: agent.clone(),
            }),
            other => Err(mismatch(kind, other)),
        },
        QuestionKind::SocialIntent => match subject {
            Subject::Intent {
                speaker,
                listener,
                mode,
            } => Ok(QueryKind::SocialIntent {
                speaker: speaker.clone(),
                listener: listener.clone(),
                mode: *mode,
            }),
            other => Err(mismatch(kind, other)),
        },
        QuestionKind::BeliefOfGoal => {
            let p = bpath()?;
            if p.len() > 2 {
                return Err(ClassifyError::GoalNestingTooDeep(p.len()));
            }
            if p.len() < 2 {
                return Err(ClassifyError::PathLength {
                    kind,
                    expected: "2",
                    got: p.len(),
                });
            }
            Ok(QueryKind::BeliefOfGoal { path: p })
        }
    }
}

fn infer_kind(question: &Question) -> Result<QuestionKind, ClassifyError> {
    let all = |pred: fn(&OptionClaim) -> bool| question.options.iter().all(|o| pred(&o.claim));
    let actions = all(|c| matches!(c, OptionClaim::Action { .. }));
    let goals = all(|c| matches!(c, OptionClaim::GoalOf { .. }));
    let intents = all(|c| matches!(c, OptionClaim::Intent { .. }));
    let facts = all(|c| matches!(c, OptionClaim::At { .. } | OptionClaim::Attr { .. }));
    match question.target_path.len() {
        0 if intents => Ok(QuestionKind::SocialIntent),
        0 if facts => Ok(QuestionKind::Reality),
        1 if actions => Ok(QuestionKind::Search),
        1 if goals => Ok(QuestionKind::Goal),
        1 if facts && looks_like_search(&question.text) => Ok(QuestionKind::Search),
        1 if facts => Ok(QuestionKind::Belief),
        _ if intents => Ok(QuestionKind::SocialIntent),
        n if n >= 2 && goals => Ok(QuestionKind::BeliefOfGoal),
        n if n >= 2 && facts => Ok(QuestionKind::Belief),
        n => Err(ClassifyError::Unclassifiable(format!(
            "path length {n} with mixed option shapes"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::AnswerOption;

    fn at(label: &str, c: &str) -> AnswerOption {
        AnswerOption {
            label: label.into(),
            claim: OptionClaim::At {
                object: "ball".into(),
                container: c.into(),
            },
        }
    }

    fn question(path: &[&str], text: &str) -> Question {
        Question {
            kind_hint: None,
            text: text.into(),
            target_path: path.iter().map(|a| AgentId::from(*a)).collect(),
            subject: Subject::Location {
                object: "ball".into(),
            },
            options: vec![at("A", "basket"), at("B", "box")],
            gold: None,
        }
    }

    #[test]
    fn empty_path_is_reality() {
        let q = question(&[], "Where is the ball really?");
        assert!(matches!(classify_query(&q), Ok(QueryKind::Reality(_))));
    }

    #[test]
    fn search_phrasing_is_action() {
        let q = question(&["Sally"], "Where will Sally look for the ball?");
        assert!(matches!(classify_query(&q), Ok(QueryKind::Action { .. })));
    }

    #[test]
    fn order_three_belief() {
        let q = question(
            &["A", "B", "C"],
            "Where does A think B thinks C thinks the ball is?",
        );
        match classify_query(&q).unwrap() {
            QueryKind::Belief { path, .. } => assert_eq!(path.len(), 3),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn deep_belief_of_goal_rejected() {
        let mut q = question(&["A", "B", "C"], "");
        q.kind_hint = Some(QuestionKind::BeliefOfGoal);
        assert_eq!(
            classify_query(&q),
            Err(ClassifyError::GoalNestingTooDeep(3))
        );
    }

    #[test]
    fn hint_wins_over_shape() {
        let mut q = question(&["Sally"], "Where was the ball at the beginning?");
        q.kind_hint = Some(QuestionKind::Memory);
        assert!(matches!(classify_query(&q), Ok(QueryKind::Memory { .. })));
    }
}
