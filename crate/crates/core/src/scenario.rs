//! Scenarios: declared entities, initial state, story events, the question
//! and its diagnostic metadata. Also the line-delimited record format.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::event::{Claim, Event, EventKind, Goal, Scope, WorldState};
use crate::ids::{AgentId, AttributeId, ContainerId, ObjectId, RoomId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContainerDecl {
    pub id: ContainerId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub room: Option<RoomId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectDecl {
    pub id: ObjectId,
    pub container: ContainerId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttrValue {
    pub object: ObjectId,
    pub attribute: AttributeId,
    pub value: String,
}

/// Declared entities and the initial world.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Header {
    pub agents: Vec<AgentId>,
    pub rooms: Vec<RoomId>,
    pub containers: Vec<ContainerDecl>,
    pub objects: Vec<ObjectDecl>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub attributes: Vec<AttributeId>,
    /// Initial room of each agent present at the start.
    #[serde(default)]
    pub agent_rooms: BTreeMap<AgentId, RoomId>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub initial_attributes: Vec<AttrValue>,
}

impl Header {
    pub fn has_agent(&self, id: &AgentId) -> bool {
        self.agents.contains(id)
    }
    pub fn has_room(&self, id: &RoomId) -> bool {
        self.rooms.contains(id)
    }
    pub fn has_container(&self, id: &ContainerId) -> bool {
        self.containers.iter().any(|c| &c.id == id)
    }
    pub fn has_object(&self, id: &ObjectId) -> bool {
        self.objects.iter().any(|o| &o.id == id)
    }
    pub fn has_attribute(&self, id: &AttributeId) -> bool {
        self.attributes.contains(id)
    }

    pub fn initial_state(&self) -> WorldState {
        let mut state = WorldState {
            agent_room: self.agent_rooms.clone(),
            ..WorldState::default()
        };
        for c in &self.containers {
            if let Some(room) = &c.room {
                state.container_room.insert(c.id.clone(), room.clone());
            }
        }
        for o in &self.objects {
            state.object_loc.insert(o.id.clone(), o.container.clone());
        }
        for a in &self.initial_attributes {
            state
                .attributes
                .insert((a.object.clone(), a.attribute.clone()), a.value.clone());
        }
        state
    }
}

/// What a question's options look like when they are predicted actions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "action", rename_all = "snake_case")]
pub enum PredictedAction {
    Search {
        container: ContainerId,
    },
    Exploit {
        object: ObjectId,
        container: ContainerId,
    },
    Proceed {
        task: String,
    },
    Avoid {
        object: ObjectId,
    },
    Communicate {
        claim: Claim,
    },
    None,
}

impl PredictedAction {
    /// Container the action is directed at, if any.
    pub fn container(&self) -> Option<&ContainerId> {
        match self {
            PredictedAction::Search { container } | PredictedAction::Exploit { container, .. } => {
                Some(container)
            }
            _ => None,
        }
    }
}

impl fmt::Display for PredictedAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredictedAction::Search { container } => write!(f, "search({container})"),
            PredictedAction::Exploit { object, container } => {
                write!(f, "exploit({object},{container})")
            }
            PredictedAction::Proceed { task } => write!(f, "proceed({task})"),
            PredictedAction::Avoid { object } => write!(f, "avoid({object})"),
            PredictedAction::Communicate { claim } => write!(f, "communicate({claim})"),
            PredictedAction::None => f.write_str("none"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SocialIntent {
    Helping,
    Hindering,
}

impl fmt::Display for SocialIntent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SocialIntent::Helping => "helping",
            SocialIntent::Hindering => "hindering",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntentMode {
    MostLikely,
    LeastLikely,
}

/// The content of one answer option.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum OptionClaim {
    At {
        object: ObjectId,
        container: ContainerId,
    },
    Attr {
        object: ObjectId,
        attribute: AttributeId,
        value: String,
    },
    GoalOf {
        agent: AgentId,
        goal: Goal,
    },
    Action {
        #[serde(flatten)]
        action: PredictedAction,
    },
    Intent {
        intent: SocialIntent,
    },
}

impl fmt::Display for OptionClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OptionClaim::At { object, container } => write!(f, "at({object},{container})"),
            OptionClaim::Attr {
                object,
                attribute,
                value,
            } => write!(f, "attr({object},{attribute},{value})"),
            OptionClaim::GoalOf { agent, goal } => write!(f, "goal_of({agent},{goal})"),
            OptionClaim::Action { action } => write!(f, "{action}"),
            OptionClaim::Intent { intent } => write!(f, "{intent}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnswerOption {
    pub label: String,
    pub claim: OptionClaim,
}

/// Benchmark-style question label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuestionKind {
    Reality,
    Memory,
    Belief,
    #[serde(alias = "action")]
    Search,
    Goal,
    SocialIntent,
    BeliefOfGoal,
}

/// What the question is about.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    Location {
        object: ObjectId,
    },
    Attribute {
        object: ObjectId,
        attribute: AttributeId,
    },
    Goal {
        agent: AgentId,
    },
    Action {
        agent: AgentId,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        object: Option<ObjectId>,
    },
    Intent {
        speaker: AgentId,
        listener: AgentId,
        mode: IntentMode,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Question {
    #[serde(rename = "kind", default, skip_serializing_if = "Option::is_none")]
    pub kind_hint: Option<QuestionKind>,
    #[serde(default)]
    pub text: String,
    #[serde(default)]
    pub target_path: Vec<AgentId>,
    pub subject: Subject,
    pub options: Vec<AnswerOption>,
    /// Read only by the evaluator.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gold: Option<String>,
}

impl Question {
    pub fn belief_order(&self) -> usize {
        self.target_path.len()
    }

    pub fn option(&self, label: &str) -> Option<&AnswerOption> {
        self.options.iter().find(|o| o.label == label)
    }
}

/// Slicing variables. Never carries the gold label.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    pub benchmark: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub question_type: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub belief_order: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub visibility: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub id: String,
    pub header: Header,
    #[serde(default)]
    pub events: Vec<Event>,
    pub question: Question,
    pub meta: Meta,
}

impl Scenario {
    pub fn initial_state(&self) -> WorldState {
        self.header.initial_state()
    }

    /// Number of story steps.
    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Event at 1-based step `t`.
    pub fn event_at(&self, t: u32) -> Option<&Event> {
        (t as usize).checked_sub(1).and_then(|i| self.events.get(i))
    }

    /// Stable sort by source time, then renumber 1..T.
    pub fn normalize_times(&mut self) {
        self.events.sort_by_key(|e| e.time);
        for (i, e) in self.events.iter_mut().enumerate() {
            e.time = i as u32 + 1;
        }
    }

    /// Checks every schema invariant.
    pub fn validate(&self) -> Result<(), SchemaError> {
        validate(self)
    }

    /// One record line.
    pub fn to_record(&self) -> String {
        serde_json::to_string(self).expect("scenario serialization is infallible")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemaError {
    #[error("empty {0} id")]
    EmptyId(&'static str),
    #[error("duplicate {kind} `{id}`")]
    DuplicateId { kind: &'static str, id: String },
    #[error("undeclared {kind} `{id}`")]
    Undeclared { kind: &'static str, id: String },
    #[error("duplicate option label `{0}`")]
    DuplicateLabel(String),
    #[error("question needs at least two options, got {0}")]
    TooFewOptions(usize),
    #[error("private utterance at step {0} has no listeners")]
    EmptyListeners(u32),
    #[error("object `{object}` starts in container `{container}` which is in no room")]
    UnplacedStart { object: String, container: String },
    #[error("event times are not strictly increasing at step {0}")]
    TimeOrder(u32),
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {source}")]
    Schema {
        line: usize,
        #[source]
        source: SchemaError,
    },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. } | ParseError::Schema { line, .. } => *line,
        }
    }
}

/// Parses one record. `line` is the 1-based position of the record in its
/// file and is only used for error messages.
pub fn parse_scenario(record: &str, line: usize) -> Result<Scenario, ParseError> {
    let mut scenario: Scenario = serde_json::from_str(record).map_err(|e| ParseError::Syntax {
        line,
        column: e.column(),
        message: e.to_string(),
    })?;
    scenario.normalize_times();
    scenario
        .validate()
        .map_err(|source| ParseError::Schema { line, source })?;
    Ok(scenario)
}

/// Parses a whole line-delimited file, one result per non-blank line.
pub fn parse_records(text: &str) -> Vec<(usize, Result<Scenario, ParseError>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, parse_scenario(l, i + 1)))
        .collect()
}

fn check_unique<'a, I>(kind: &'static str, ids: I) -> Result<(), SchemaError>
where
    I: IntoIterator<Item = &'a str>,
{
    let mut seen = BTreeSet::new();
    for id in ids {
        if id.trim().is_empty() {
            return Err(SchemaError::EmptyId(kind));
        }
        if !seen.insert(id) {
            return Err(SchemaError::DuplicateId {
                kind,
                id: id.to_owned(),
            });
        }
    }
    Ok(())
}

fn undeclared(kind: &'static str, id: &str) -> SchemaError {
    SchemaError::Undeclared {
        kind,
        id: id.to_owned(),
    }
}

fn validate(s: &Scenario) -> Result<(), SchemaError> {
    let h = &s.header;
    check_unique(AgentId::KIND, h.agents.iter().map(AgentId::as_str))?;
    check_unique(RoomId::KIND, h.rooms.iter().map(RoomId::as_str))?;
    check_unique(
        ContainerId::KIND,
        h.containers.iter().map(|c| c.id.as_str()),
    )?;
    check_unique(ObjectId::KIND, h.objects.iter().map(|o| o.id.as_str()))?;
    check_unique(
        AttributeId::KIND,
        h.attributes.iter().map(AttributeId::as_str),
    )?;

    let agent = |a: &AgentId| {
        h.has_agent(a)
            .then_some(())
            .ok_or_else(|| undeclared(AgentId::KIND, a.as_str()))
    };
    let room = |r: &RoomId| {
        h.has_room(r)
            .then_some(())
            .ok_or_else(|| undeclared(RoomId::KIND, r.as_str()))
    };
    let container = |c: &ContainerId| {
        h.has_container(c)
            .then_some(())
            .ok_or_else(|| undeclared(ContainerId::KIND, c.as_str()))
    };
    let object = |o: &ObjectId| {
        h.has_object(o)
            .then_some(())
            .ok_or_else(|| undeclared(ObjectId::KIND, o.as_str()))
    };
    let attribute = |a: &AttributeId| {
        h.has_attribute(a)
            .then_some(())
            .ok_or_else(|| undeclared(AttributeId::KIND, a.as_str()))
    };

    for c in &h.containers {
        if let Some(r) = &c.room {
            room(r)?;
        }
    }
    for o in &h.objects {
        container(&o.container)?;
        let placed = h
            .containers
            .iter()
            .any(|c| c.id == o.container && c.room.is_some());
        if !placed {
            return Err(SchemaError::UnplacedStart {
                object: o.id.to_string(),
                container: o.container.to_string(),
            });
        }
    }
    for (a, r) in &h.agent_rooms {
        agent(a)?;
        room(r)?;
    }
    for av in &h.initial_attributes {
        object(&av.object)?;
        attribute(&av.attribute)?;
    }

    let mut last = 0;
    for e in &s.events {
        if e.time <= last {
            return Err(SchemaError::TimeOrder(e.time));
        }
        last = e.time;
        for a in e.agents() {
            agent(a)?;
        }
        for o in e.objects() {
            object(o)?;
        }
        for c in e.containers() {
            container(c)?;
        }
        for r in e.rooms() {
            room(r)?;
        }
        for a in e.attributes() {
            attribute(a)?;
        }
        if let EventKind::Utter {
            scope: Scope::Private(listeners),
            ..
        } = &e.kind
        {
            if listeners.is_empty() {
                return Err(SchemaError::EmptyListeners(e.time));
            }
        }
    }

    let q = &s.question;
    for a in &q.target_path {
        agent(a)?;
    }
    if q.options.len() < 2 {
        return Err(SchemaError::TooFewOptions(q.options.len()));
    }
    let mut labels = BTreeSet::new();
    for o in &q.options {
        if !labels.insert(o.label.as_str()) {
            return Err(SchemaError::DuplicateLabel(o.label.clone()));
        }
    }
    // Option claims may mention entities the story never declares; the
    // prover rejects those instead.
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const MINIMAL: &str = r#"{"id":"m1","header":{"agents":["Sally"],"rooms":["kitchen"],"containers":[{"id":"basket","room":"kitchen"},{"id":"box","room":"kitchen"}],"objects":[{"id":"ball","container":"basket"}],"agent_rooms":{"Sally":"kitchen"}},"events":[{"t":7,"kind":"move","mover":"Sally","object":"ball","to":"box"}],"question":{"kind":"reality","text":"Where is the ball really?","subject":{"location":{"object":"ball"}},"options":[{"label":"A","claim":{"type":"at","object":"ball","container":"basket"}},{"label":"B","claim":{"type":"at","object":"ball","container":"box"}}],"gold":"B"},"meta":{"benchmark":"ToMi","question_type":"reality","belief_order":0}}"#;

    #[test]
    fn minimal_record_has_one_step() {
        let s = parse_scenario(MINIMAL, 1).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.events[0].time, 1);
    }

    #[test]
    fn undeclared_object_is_named() {
        let bad = MINIMAL.replace(r#""object":"ball","to""#, r#""object":"ballX","to""#);
        let err = parse_scenario(&bad, 3).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("undeclared object `ballX`"), "{msg}");
        assert_eq!(err.line(), 3);
    }

    #[test]
    fn zero_events_is_fine() {
        let empty = MINIMAL.replace(
            r#"[{"t":7,"kind":"move","mover":"Sally","object":"ball","to":"box"}]"#,
            "[]",
        );
        let s = parse_scenario(&empty, 1).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn duplicate_label_rejected() {
        let dup = MINIMAL.replace(r#"{"label":"B""#, r#"{"label":"A""#);
        assert!(matches!(
            parse_scenario(&dup, 1),
            Err(ParseError::Schema {
                source: SchemaError::DuplicateLabel(_),
                ..
            })
        ));
    }

    #[test]
    fn syntax_error_reports_column() {
        let err = parse_scenario(r#"{"id": "x", "header": 5}"#, 9).unwrap_err();
        match err {
            ParseError::Syntax { line, column, .. } => {
                assert_eq!(line, 9);
                assert!(column > 0);
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn gold_cannot_hide_in_meta() {
        let sneaky = MINIMAL.replace(r#""belief_order":0}"#, r#""belief_order":0,"gold":"B"}"#);
        assert!(parse_scenario(&sneaky, 1).is_err());
    }

    #[test]
    fn times_are_renumbered_in_source_order() {
        let rec = MINIMAL.replace(
            r#"[{"t":7,"kind":"move","mover":"Sally","object":"ball","to":"box"}]"#,
            r#"[{"t":9,"kind":"move","object":"ball","to":"basket"},{"t":4,"kind":"move","object":"ball","to":"box"}]"#,
        );
        let s = parse_scenario(&rec, 1).unwrap();
        assert_eq!(s.events[0].time, 1);
        assert!(matches!(&s.events[0].kind, EventKind::Move { to, .. } if to.as_str() == "box"));
        assert_eq!(s.events[1].time, 2);
    }

    #[test]
    fn empty_private_listeners_rejected() {
        let rec = MINIMAL.replace(
            r#"[{"t":7,"kind":"move","mover":"Sally","object":"ball","to":"box"}]"#,
            r#"[{"kind":"utter","speaker":"Sally","scope":{"private":[]},"claim":{"type":"at","object":"ball","container":"box"}}]"#,
        );
        assert!(matches!(
            parse_scenario(&rec, 1),
            Err(ParseError::Schema {
                source: SchemaError::EmptyListeners(1),
                ..
            })
        ));
    }

    #[test]
    fn record_round_trips() {
        let s = parse_scenario(MINIMAL, 1).unwrap();
        let again = parse_scenario(&s.to_record(), 1).unwrap();
        assert_eq!(s, again);
    }
}
