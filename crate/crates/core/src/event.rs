//! Story events and the objective world state they act on.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ids::{AgentId, AttributeId, ContainerId, ObjectId, RoomId};

/// A proposition that can be uttered or held as a belief.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Claim {
    At {
        object: ObjectId,
        container: ContainerId,
    },
    GoalOf {
        agent: AgentId,
        goal: Goal,
    },
    Attr {
        object: ObjectId,
        attribute: AttributeId,
        value: String,
    },
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::At { object, container } => write!(f, "at({object},{container})"),
            Claim::GoalOf { agent, goal } => write!(f, "goal_of({agent},{goal})"),
            Claim::Attr {
                object,
                attribute,
                value,
            } => write!(f, "attr({object},{attribute},{value})"),
        }
    }
}

/// Attribute value an agent needs before it can proceed with a task.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Requirement {
    pub object: ObjectId,
    pub attribute: AttributeId,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "goal", rename_all = "snake_case")]
pub enum Goal {
    Fetch {
        object: ObjectId,
    },
    Use {
        object: ObjectId,
    },
    Locate {
        object: ObjectId,
    },
    Task {
        label: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        requires: Option<Requirement>,
    },
}

impl Goal {
    /// The object the goal is about, if it is an object goal.
    pub fn object(&self) -> Option<&ObjectId> {
        match self {
            Goal::Fetch { object } | Goal::Use { object } | Goal::Locate { object } => Some(object),
            Goal::Task { .. } => None,
        }
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Goal::Fetch { object } => write!(f, "fetch({object})"),
            Goal::Use { object } => write!(f, "use({object})"),
            Goal::Locate { object } => write!(f, "locate({object})"),
            Goal::Task { label, .. } => write!(f, "task({label})"),
        }
    }
}

/// Behaviour an agent was seen to perform in the story.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "action", rename_all = "snake_case")]
pub enum ActionKind {
    Search { container: ContainerId },
    Exploit { object: ObjectId },
    Proceed { task: String },
    Avoid { object: ObjectId },
}

impl fmt::Display for ActionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionKind::Search { container } => write!(f, "search({container})"),
            ActionKind::Exploit { object } => write!(f, "exploit({object})"),
            ActionKind::Proceed { task } => write!(f, "proceed({task})"),
            ActionKind::Avoid { object } => write!(f, "avoid({object})"),
        }
    }
}

/// Who an utterance is addressed to.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// Everyone in the speaker's room hears it.
    Public,
    /// Exactly the listed agents hear it, wherever they are.
    Private(BTreeSet<AgentId>),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EventKind {
    Enter {
        agent: AgentId,
        room: RoomId,
    },
    Leave {
        agent: AgentId,
        room: RoomId,
    },
    Move {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        mover: Option<AgentId>,
        object: ObjectId,
        to: ContainerId,
    },
    StateSet {
        object: ObjectId,
        attribute: AttributeId,
        value: String,
        cause_visible: bool,
    },
    Utter {
        speaker: AgentId,
        scope: Scope,
        claim: Claim,
    },
    GoalDecl {
        agent: AgentId,
        goal: Goal,
    },
    Act {
        agent: AgentId,
        action: ActionKind,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Event {
    /// Story step, 1-based after normalization.
    #[serde(rename = "t", default)]
    pub time: u32,
    #[serde(flatten)]
    pub kind: EventKind,
}

impl Event {
    pub fn new(time: u32, kind: EventKind) -> Self {
        Self { time, kind }
    }

    /// Every agent id the event mentions, in a stable order.
    pub fn agents(&self) -> Vec<&AgentId> {
        let mut out = Vec::new();
        match &self.kind {
            EventKind::Enter { agent, .. }
            | EventKind::Leave { agent, .. }
            | EventKind::GoalDecl { agent, .. }
            | EventKind::Act { agent, .. } => out.push(agent),
            EventKind::Move { mover, .. } => out.extend(mover.iter()),
            EventKind::StateSet { .. } => {}
            EventKind::Utter {
                speaker,
                scope,
                claim,
            } => {
                out.push(speaker);
                if let Scope::Private(listeners) = scope {
                    out.extend(listeners.iter());
                }
                if let Claim::GoalOf { agent, .. } = claim {
                    out.push(agent);
                }
            }
        }
        out
    }

    pub fn objects(&self) -> Vec<&ObjectId> {
        let mut out = Vec::new();
        match &self.kind {
            EventKind::Move { object, .. } | EventKind::StateSet { object, .. } => out.push(object),
            EventKind::Utter { claim, .. } => claim_objects(claim, &mut out),
            EventKind::GoalDecl { goal, .. } => out.extend(goal_objects(goal)),
            EventKind::Act { action, .. } => match action {
                ActionKind::Exploit { object } | ActionKind::Avoid { object } => out.push(object),
                ActionKind::Search { .. } | ActionKind::Proceed { .. } => {}
            },
            EventKind::Enter { .. } | EventKind::Leave { .. } => {}
        }
        out
    }

    pub fn containers(&self) -> Vec<&ContainerId> {
        match &self.kind {
            EventKind::Move { to, .. } => vec![to],
            EventKind::Utter {
                claim: Claim::At { container, .. },
                ..
            } => vec![container],
            EventKind::Act {
                action: ActionKind::Search { container },
                ..
            } => vec![container],
            _ => Vec::new(),
        }
    }

    pub fn attributes(&self) -> Vec<&AttributeId> {
        let mut out = Vec::new();
        match &self.kind {
            EventKind::StateSet { attribute, .. } => out.push(attribute),
            EventKind::Utter {
                claim: Claim::Attr { attribute, .. },
                ..
            } => out.push(attribute),
            EventKind::GoalDecl {
                goal:
                    Goal::Task {
                        requires: Some(req),
                        ..
                    },
                ..
            } => out.push(&req.attribute),
            _ => {}
        }
        out
    }

    pub fn rooms(&self) -> Vec<&RoomId> {
        match &self.kind {
            EventKind::Enter { room, .. } | EventKind::Leave { room, .. } => vec![room],
            _ => Vec::new(),
        }
    }

    /// Whether the event changes anything physical (as opposed to
    /// communication, goals and acts).
    pub fn is_physical(&self) -> bool {
        matches!(
            self.kind,
            EventKind::Enter { .. }
                | EventKind::Leave { .. }
                | EventKind::Move { .. }
                | EventKind::StateSet { .. }
        )
    }
}

fn claim_objects<'a>(claim: &'a Claim, out: &mut Vec<&'a ObjectId>) {
    match claim {
        Claim::At { object, .. } | Claim::Attr { object, .. } => out.push(object),
        Claim::GoalOf { goal, .. } => out.extend(goal_objects(goal)),
    }
}

fn goal_objects(goal: &Goal) -> Vec<&ObjectId> {
    match goal {
        Goal::Fetch { object } | Goal::Use { object } | Goal::Locate { object } => vec![object],
        Goal::Task { requires, .. } => requires.iter().map(|r| &r.object).collect(),
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.time)?;
        match &self.kind {
            EventKind::Enter { agent, room } => write!(f, "enter({agent},{room})"),
            EventKind::Leave { agent, room } => write!(f, "leave({agent},{room})"),
            EventKind::Move { mover, object, to } => match mover {
                Some(m) => write!(f, "move({m}:{object}->{to})"),
                None => write!(f, "move({object}->{to})"),
            },
            EventKind::StateSet {
                object,
                attribute,
                value,
                cause_visible,
            } => {
                let vis = if *cause_visible { "visible" } else { "hidden" };
                write!(f, "state_set({object}.{attribute}={value},{vis})")
            }
            EventKind::Utter {
                speaker,
                scope,
                claim,
            } => match scope {
                Scope::Public => write!(f, "utter({speaker},public,{claim})"),
                Scope::Private(to) => {
                    let names: Vec<&str> = to.iter().map(AgentId::as_str).collect();
                    write!(f, "utter({speaker},private[{}],{claim})", names.join(","))
                }
            },
            EventKind::GoalDecl { agent, goal } => write!(f, "goal_decl({agent},{goal})"),
            EventKind::Act { agent, action } => write!(f, "act({agent},{action})"),
        }
    }
}

/// An utterance as it actually landed: who was reached, and when.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Heard {
    pub time: u32,
    pub speaker: AgentId,
    pub scope: Scope,
    pub claim: Claim,
    pub listeners: BTreeSet<AgentId>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StateError {
    #[error("container `{0}` is not placed in any room")]
    UnplacedContainer(ContainerId),
    #[error("object `{0}` has no location")]
    UnplacedObject(ObjectId),
}

/// The objective story state at one point in time.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WorldState {
    /// Agents currently in the scene. An absent key means the agent has left.
    pub agent_room: BTreeMap<AgentId, RoomId>,
    pub object_loc: BTreeMap<ObjectId, ContainerId>,
    pub container_room: BTreeMap<ContainerId, RoomId>,
    pub attributes: BTreeMap<(ObjectId, AttributeId), String>,
    pub heard_log: Vec<Heard>,
}

impl WorldState {
    pub fn room_of_agent(&self, agent: &AgentId) -> Option<&RoomId> {
        self.agent_room.get(agent)
    }

    pub fn room_of_object(&self, object: &ObjectId) -> Option<&RoomId> {
        self.object_loc
            .get(object)
            .and_then(|c| self.container_room.get(c))
    }

    /// Agents present in `room`, in id order.
    pub fn occupants<'a>(&'a self, room: &'a RoomId) -> impl Iterator<Item = &'a AgentId> + 'a {
        self.agent_room
            .iter()
            .filter(move |(_, r)| *r == room)
            .map(|(a, _)| a)
    }

    /// The agents an utterance reaches in this state, speaker excluded.
    pub fn realized_listeners(&self, speaker: &AgentId, scope: &Scope) -> BTreeSet<AgentId> {
        match scope {
            Scope::Public => match self.agent_room.get(speaker) {
                Some(room) => self
                    .occupants(room)
                    .filter(|a| *a != speaker)
                    .cloned()
                    .collect(),
                None => BTreeSet::new(),
            },
            Scope::Private(listeners) => listeners
                .iter()
                .filter(|a| *a != speaker)
                .cloned()
                .collect(),
        }
    }

    /// Applies one event in place.
    pub fn apply(&mut self, event: &Event) -> Result<(), StateError> {
        match &event.kind {
            EventKind::Enter { agent, room } => {
                self.agent_room.insert(agent.clone(), room.clone());
            }
            EventKind::Leave { agent, room } => {
                if self.agent_room.get(agent) == Some(room) {
                    self.agent_room.remove(agent);
                }
            }
            EventKind::Move { object, to, .. } => {
                if !self.container_room.contains_key(to) {
                    return Err(StateError::UnplacedContainer(to.clone()));
                }
                self.object_loc.insert(object.clone(), to.clone());
            }
            EventKind::StateSet {
                object,
                attribute,
                value,
                ..
            } => {
                self.attributes
                    .insert((object.clone(), attribute.clone()), value.clone());
            }
            EventKind::Utter {
                speaker,
                scope,
                claim,
            } => {
                let listeners = self.realized_listeners(speaker, scope);
                self.heard_log.push(Heard {
                    time: event.time,
                    speaker: speaker.clone(),
                    scope: scope.clone(),
                    claim: claim.clone(),
                    listeners,
                });
            }
            EventKind::GoalDecl { .. } | EventKind::Act { .. } => {}
        }
        Ok(())
    }

    /// Canonical single-line rendering used for digests and dumps.
    pub fn canonical(&self) -> String {
        let mut out = String::new();
        for (a, r) in &self.agent_room {
            out.push_str(&format!("agent {a}@{r};"));
        }
        for (o, c) in &self.object_loc {
            out.push_str(&format!("object {o}@{c};"));
        }
        for (c, r) in &self.container_room {
            out.push_str(&format!("container {c}@{r};"));
        }
        for ((o, a), v) in &self.attributes {
            out.push_str(&format!("attr {o}.{a}={v};"));
        }
        for h in &self.heard_log {
            let names: Vec<&str> = h.listeners.iter().map(AgentId::as_str).collect();
            out.push_str(&format!(
                "heard {}:{}:{}:[{}];",
                h.time,
                h.speaker,
                h.claim,
                names.join(",")
            ));
        }
        out
    }

    /// Short hex digest of [`WorldState::canonical`].
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let hash = Sha256::digest(self.canonical().as_bytes());
        hash.iter().take(6).map(|b| format!("{b:02x}")).collect()
    }
}

/// The transition function: returns the state after `event`.
pub fn apply_event(state: &WorldState, event: &Event) -> Result<WorldState, StateError> {
    let mut next = state.clone();
    next.apply(event)?;
    Ok(next)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> WorldState {
        let mut s = WorldState::default();
        s.agent_room.insert("Sally".into(), "kitchen".into());
        s.agent_room.insert("Anne".into(), "kitchen".into());
        s.container_room.insert("basket".into(), "kitchen".into());
        s.container_room.insert("box".into(), "kitchen".into());
        s.object_loc.insert("ball".into(), "basket".into());
        s
    }

    #[test]
    fn move_substitutes_location() {
        let ev = Event::new(
            1,
            EventKind::Move {
                mover: Some("Anne".into()),
                object: "ball".into(),
                to: "box".into(),
            },
        );
        let next = apply_event(&base(), &ev).unwrap();
        assert_eq!(
            next.object_loc[&ObjectId::from("ball")],
            ContainerId::from("box")
        );
    }

    #[test]
    fn leave_clears_room() {
        let ev = Event::new(
            1,
            EventKind::Leave {
                agent: "Sally".into(),
                room: "kitchen".into(),
            },
        );
        let next = apply_event(&base(), &ev).unwrap();
        assert!(next.room_of_agent(&"Sally".into()).is_none());
        assert!(next.room_of_agent(&"Anne".into()).is_some());
    }

    #[test]
    fn utterance_is_non_physical() {
        let ev = Event::new(
            1,
            EventKind::Utter {
                speaker: "Anne".into(),
                scope: Scope::Public,
                claim: Claim::At {
                    object: "ball".into(),
                    container: "box".into(),
                },
            },
        );
        let before = base();
        let next = apply_event(&before, &ev).unwrap();
        assert_eq!(next.object_loc, before.object_loc);
        assert_eq!(next.heard_log.len(), 1);
        let heard: Vec<&str> = next.heard_log[0]
            .listeners
            .iter()
            .map(|a| a.as_str())
            .collect();
        assert_eq!(heard, vec!["Sally"]);
    }

    #[test]
    fn move_into_unplaced_container_fails() {
        let ev = Event::new(
            1,
            EventKind::Move {
                mover: None,
                object: "ball".into(),
                to: "attic_trunk".into(),
            },
        );
        assert_eq!(
            apply_event(&base(), &ev),
            Err(StateError::UnplacedContainer("attic_trunk".into()))
        );
    }

    #[test]
    fn apply_is_pure() {
        let ev = Event::new(
            3,
            EventKind::StateSet {
                object: "ball".into(),
                attribute: "color".into(),
                value: "red".into(),
                cause_visible: true,
            },
        );
        let s = base();
        assert_eq!(apply_event(&s, &ev), apply_event(&s, &ev));
        assert_eq!(s, base());
    }

    #[test]
    fn private_listeners_ignore_rooms() {
        let mut s = base();
        s.agent_room.remove(&AgentId::from("Sally"));
        let scope = Scope::Private(["Sally".into()].into_iter().collect());
        let heard = s.realized_listeners(&"Anne".into(), &scope);
        assert!(heard.contains(&AgentId::from("Sally")));
    }
}
