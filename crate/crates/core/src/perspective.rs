//! Observation and rule-guided belief update.
//!
//! An agent only sees part of the story. [`observe`] filters a step's events
//! down to what one agent can access; [`update_belief`] folds the accessible
//! events into the agent's own belief table and into every nested belief
//! path it maintains. A nested path `u > v > w` reads "what u believes v
//! believes w believes", and is updated only by events that every agent on
//! the path observed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::event::{Claim, Event, EventKind, Goal, WorldState};
use crate::ids::{AgentId, AttributeId, ContainerId, ObjectId};
use crate::scenario::{OptionClaim, Question, Subject};

/// The fixed perspective rule catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleId {
    /// Observed change updates belief.
    R1,
    /// Unobserved change preserves belief.
    R2,
    /// Co-observation supports nested belief.
    R3,
    /// Communication is scoped by access.
    R4,
    /// Action follows belief and goal.
    R5,
    /// Distractors do not update target beliefs.
    R6,
}

impl RuleId {
    pub const ALL: [RuleId; 6] = [
        RuleId::R1,
        RuleId::R2,
        RuleId::R3,
        RuleId::R4,
        RuleId::R5,
        RuleId::R6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::R1 => "observed-change-updates",
            RuleId::R2 => "unobserved-preserves",
            RuleId::R3 => "co-observation-nests",
            RuleId::R4 => "communication-scoped",
            RuleId::R5 => "action-from-belief",
            RuleId::R6 => "distractor-inert",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// Which rules are switched on. R1 and R2 cannot be disabled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleSet {
    enabled: [bool; 6],
}

impl Default for RuleSet {
    fn default() -> Self {
        Self { enabled: [true; 6] }
    }
}

impl RuleSet {
    pub fn all() -> Self {
        Self::default()
    }

    /// Returns a copy with `rule` disabled. Disabling R1 or R2 is ignored.
    pub fn without(mut self, rule: RuleId) -> Self {
        if !matches!(rule, RuleId::R1 | RuleId::R2) {
            self.enabled[rule as usize] = false;
        }
        self
    }

    pub fn is_enabled(&self, rule: RuleId) -> bool {
        self.enabled[rule as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (RuleId, bool)> + '_ {
        RuleId::ALL.into_iter().map(|r| (r, self.is_enabled(r)))
    }
}

/// Ordered agent chain indexing a belief table. The head is the holder.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BeliefPath(Vec<AgentId>);

impl BeliefPath {
    /// Builds a path, collapsing immediate repetitions. `None` when empty.
    pub fn new<I: IntoIterator<Item = AgentId>>(agents: I) -> Option<Self> {
        let mut out: Vec<AgentId> = Vec::new();
        for a in agents {
            if out.last() != Some(&a) {
                out.push(a);
            }
        }
        (!out.is_empty()).then_some(Self(out))
    }

    pub fn single(agent: AgentId) -> Self {
        Self(vec![agent])
    }

    pub fn holder(&self) -> &AgentId {
        &self.0[0]
    }

    pub fn agents(&self) -> &[AgentId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn last(&self) -> &AgentId {
        self.0.last().expect("paths are non-empty")
    }

    /// Path with `agent` appended (collapsing a repeat).
    pub fn extended(&self, agent: &AgentId) -> Self {
        let mut v = self.0.clone();
        if v.last() != Some(agent) {
            v.push(agent.clone());
        }
        Self(v)
    }

    /// Path without its last agent, or `None` for a single-agent path.
    pub fn parent(&self) -> Option<Self> {
        (self.0.len() > 1).then(|| Self(self.0[..self.0.len() - 1].to_vec()))
    }
}

impl fmt::Display for BeliefPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(AgentId::as_str).collect();
        f.write_str(&names.join(">"))
    }
}

/// All paths headed by `holder` over `agents`, up to `max_order` long, in
/// breadth-first order.
pub fn enumerate_paths(holder: &AgentId, agents: &[AgentId], max_order: usize) -> Vec<BeliefPath> {
    let mut out = vec![BeliefPath::single(holder.clone())];
    let mut frontier = out.clone();
    for _ in 1..max_order {
        let mut next = Vec::new();
        for p in &frontier {
            for a in agents {
                if a != p.last() {
                    next.push(p.extended(a));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// A believed value together with the step that established it.
/// Step 0 is the initial scene.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Held<T> {
    pub value: T,
    pub since: u32,
    pub source: RuleId,
}

/// One belief table. Missing keys mean "unknown".
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartialWorld {
    pub objects: BTreeMap<ObjectId, Held<ContainerId>>,
    pub attributes: BTreeMap<(ObjectId, AttributeId), Held<String>>,
    pub goals: BTreeMap<AgentId, Held<Goal>>,
}

impl PartialWorld {
    pub fn location(&self, object: &ObjectId) -> Option<&ContainerId> {
        self.objects.get(object).map(|h| &h.value)
    }

    pub fn attribute(&self, object: &ObjectId, attribute: &AttributeId) -> Option<&String> {
        self.attributes
            .get(&(object.clone(), attribute.clone()))
            .map(|h| &h.value)
    }

    pub fn goal(&self, agent: &AgentId) -> Option<&Goal> {
        self.goals.get(agent).map(|h| &h.value)
    }

    /// Object locations without provenance.
    pub fn location_table(&self) -> BTreeMap<ObjectId, ContainerId> {
        self.objects
            .iter()
            .map(|(k, h)| (k.clone(), h.value.clone()))
            .collect()
    }

    pub fn attribute_table(&self) -> BTreeMap<(ObjectId, AttributeId), String> {
        self.attributes
            .iter()
            .map(|(k, h)| (k.clone(), h.value.clone()))
            .collect()
    }

    pub fn goal_table(&self) -> BTreeMap<AgentId, Goal> {
        self.goals
            .iter()
            .map(|(k, h)| (k.clone(), h.value.clone()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeliefState {
    pub holder: AgentId,
    pub max_order: usize,
    pub entries: BTreeMap<BeliefPath, PartialWorld>,
}

impl BeliefState {
    /// Initial beliefs: every table starts unknown, except that objects in a
    /// room where all of a path's agents stand at the start are seeded.
    pub fn initial(
        holder: &AgentId,
        agents: &[AgentId],
        state: &WorldState,
        rules: &RuleSet,
        max_order: usize,
    ) -> Self {
        let max_order = max_order.max(1);
        let mut entries = BTreeMap::new();
        for path in enumerate_paths(holder, agents, max_order) {
            let mut table = PartialWorld::default();
            let seeded = path.len() == 1 || rules.is_enabled(RuleId::R3);
            let room = common_room(&path, state);
            if let (true, Some(room)) = (seeded, room) {
                for (object, container) in &state.object_loc {
                    if state.container_room.get(container) == Some(room) {
                        table.objects.insert(
                            object.clone(),
                            Held {
                                value: container.clone(),
                                since: 0,
                                source: RuleId::R1,
                            },
                        );
                    }
                }
                for ((object, attribute), value) in &state.attributes {
                    if state.room_of_object(object) == Some(room) {
                        table.attributes.insert(
                            (object.clone(), attribute.clone()),
                            Held {
                                value: value.clone(),
                                since: 0,
                                source: RuleId::R1,
                            },
                        );
                    }
                }
            }
            entries.insert(path, table);
        }
        Self {
            holder: holder.clone(),
            max_order,
            entries,
        }
    }

    pub fn first_order(&self) -> &PartialWorld {
        &self.entries[&BeliefPath::single(self.holder.clone())]
    }

    pub fn get(&self, path: &BeliefPath) -> Option<&PartialWorld> {
        self.entries.get(path)
    }

    /// Tab-separated dump, one line per known value:
    /// `path  kind  key  value  since  rule`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (path, table) in &self.entries {
            if table.objects.is_empty() && table.attributes.is_empty() && table.goals.is_empty() {
                out.push_str(&format!("{path}\t-\t-\t?\t-\t-\n"));
                continue;
            }
            for (o, h) in &table.objects {
                out.push_str(&format!(
                    "{path}\tloc\t{o}\t{}\t{}\t{}\n",
                    h.value, h.since, h.source
                ));
            }
            for ((o, a), h) in &table.attributes {
                out.push_str(&format!(
                    "{path}\tattr\t{o}.{a}\t{}\t{}\t{}\n",
                    h.value, h.since, h.source
                ));
            }
            for (agent, h) in &table.goals {
                out.push_str(&format!(
                    "{path}\tgoal\t{agent}\t{}\t{}\t{}\n",
                    h.value, h.since, h.source
                ));
            }
        }
        out
    }
}

fn common_room<'a>(path: &BeliefPath, state: &'a WorldState) -> Option<&'a crate::ids::RoomId> {
    let first = state.agent_room.get(path.holder())?;
    path.agents()
        .iter()
        .all(|a| state.agent_room.get(a) == Some(first))
        .then_some(first)
}

/// What one agent could access during one step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObservationRecord {
    pub time: u32,
    pub observer: AgentId,
    pub seen: Vec<Event>,
}

impl ObservationRecord {
    pub fn contains(&self, event: &Event) -> bool {
        self.seen.iter().any(|e| e == event)
    }
}

/// Whether `agent` perceives `event` when it happens in `state` (the state
/// just before the event).
pub fn observes(agent: &AgentId, event: &Event, state: &WorldState) -> bool {
    let here = state.agent_room.get(agent);
    match &event.kind {
        EventKind::Enter { agent: who, room } | EventKind::Leave { agent: who, room } => {
            who == agent || here == Some(room)
        }
        EventKind::Move { to, .. } => match state.container_room.get(to) {
            Some(room) => here == Some(room),
            None => false,
        },
        EventKind::StateSet {
            object,
            cause_visible,
            ..
        } => *cause_visible && here.is_some() && here == state.room_of_object(object),
        EventKind::Utter { speaker, scope, .. } => {
            speaker == agent || state.realized_listeners(speaker, scope).contains(agent)
        }
        EventKind::GoalDecl { agent: who, .. } | EventKind::Act { agent: who, .. } => {
            who == agent || (here.is_some() && here == state.agent_room.get(who))
        }
    }
}

/// Filters one step's events down to what `observer` can access. Presence
/// is evaluated just before each event.
pub fn observe(state: &WorldState, step_events: &[Event], observer: &AgentId) -> ObservationRecord {
    let mut cursor = state.clone();
    let mut seen = Vec::new();
    for e in step_events {
        if observes(observer, e, &cursor) {
            seen.push(e.clone());
        }
        // a bad move is reported by the trace builder; visibility ignores it
        let _ = cursor.apply(e);
    }
    ObservationRecord {
        time: step_events.first().map_or(0, |e| e.time),
        observer: observer.clone(),
        seen,
    }
}

/// True iff every agent on the path observes the event. For physical
/// events this means they are all present in the event's room; for public
/// utterances all are in the speaker's room; for private ones all are the
/// speaker or an addressee.
pub fn visible_along_path(event: &Event, path: &BeliefPath, state: &WorldState) -> bool {
    path.agents().iter().all(|a| observes(a, event, state))
}

/// Entities a question is about. Used by the distractor rule.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QuestionScope {
    pub agents: BTreeSet<AgentId>,
    pub objects: BTreeSet<ObjectId>,
    pub containers: BTreeSet<ContainerId>,
}

impl QuestionScope {
    pub fn of(question: &Question) -> Self {
        let mut scope = QuestionScope::default();
        scope.agents.extend(question.target_path.iter().cloned());
        match &question.subject {
            Subject::Location { object } | Subject::Attribute { object, .. } => {
                scope.objects.insert(object.clone());
            }
            Subject::Goal { agent } => {
                scope.agents.insert(agent.clone());
            }
            Subject::Action { agent, object } => {
                scope.agents.insert(agent.clone());
                scope.objects.extend(object.iter().cloned());
            }
            Subject::Intent {
                speaker, listener, ..
            } => {
                scope.agents.insert(speaker.clone());
                scope.agents.insert(listener.clone());
            }
        }
        for option in &question.options {
            match &option.claim {
                OptionClaim::At { object, container } => {
                    scope.objects.insert(object.clone());
                    scope.containers.insert(container.clone());
                }
                OptionClaim::Attr { object, .. } => {
                    scope.objects.insert(object.clone());
                }
                OptionClaim::GoalOf { agent, goal } => {
                    scope.agents.insert(agent.clone());
                    scope.objects.extend(goal.object().cloned());
                }
                OptionClaim::Action { action } => {
                    scope.containers.extend(action.container().cloned());
                }
                OptionClaim::Intent { .. } => {}
            }
        }
        scope
    }

    pub fn touches(&self, event: &Event) -> bool {
        event.agents().into_iter().any(|a| self.agents.contains(a))
            || event
                .objects()
                .into_iter()
                .any(|o| self.objects.contains(o))
            || event
                .containers()
                .into_iter()
                .any(|c| self.containers.contains(c))
    }
}

/// Parameters of one belief update.
#[derive(Debug, Clone)]
pub struct UpdateContext<'a> {
    pub rules: RuleSet,
    pub max_order: usize,
    /// Deepest path the caller will query.
    pub required_order: usize,
    pub scope: Option<&'a QuestionScope>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BeliefError {
    #[error("max order {max_order} cannot answer a belief query of order {required}")]
    OrderTooLow { max_order: usize, required: usize },
    #[error("observation belongs to `{observed}` but the belief state is held by `{holder}`")]
    HolderMismatch { holder: AgentId, observed: AgentId },
}

/// One application of the rule-guided update operator.
pub fn update_belief(
    prev: &BeliefState,
    obs: &ObservationRecord,
    step_events: &[Event],
    state: &WorldState,
    ctx: &UpdateContext<'_>,
) -> Result<BeliefState, BeliefError> {
    if ctx.max_order < ctx.required_order {
        return Err(BeliefError::OrderTooLow {
            max_order: ctx.max_order,
            required: ctx.required_order,
        });
    }
    if prev.holder != obs.observer {
        return Err(BeliefError::HolderMismatch {
            holder: prev.holder.clone(),
            observed: obs.observer.clone(),
        });
    }
    let mut next = prev.clone();
    let mut cursor = state.clone();
    for event in step_events {
        let skip = ctx.rules.is_enabled(RuleId::R6)
            && ctx.scope.is_some_and(|scope| !scope.touches(event));
        let is_utterance = matches!(event.kind, EventKind::Utter { .. });
        if !skip && !(is_utterance && !ctx.rules.is_enabled(RuleId::R4)) {
            for (path, table) in next.entries.iter_mut() {
                if path.len() > ctx.max_order.max(1) {
                    continue;
                }
                let visible = if path.len() == 1 {
                    obs.contains(event)
                } else {
                    ctx.rules.is_enabled(RuleId::R3) && visible_along_path(event, path, &cursor)
                };
                if visible {
                    absorb(table, path, event);
                }
            }
        }
        let _ = cursor.apply(event);
    }
    Ok(next)
}

/// Writes an event's content into one table. Callers have already checked
/// visibility.
fn absorb(table: &mut PartialWorld, path: &BeliefPath, event: &Event) {
    let since = event.time;
    match &event.kind {
        EventKind::Move { object, to, .. } => {
            table.objects.insert(
                object.clone(),
                Held {
                    value: to.clone(),
                    since,
                    source: RuleId::R1,
                },
            );
        }
        EventKind::StateSet {
            object,
            attribute,
            value,
            ..
        } => {
            table.attributes.insert(
                (object.clone(), attribute.clone()),
                Held {
                    value: value.clone(),
                    since,
                    source: RuleId::R1,
                },
            );
        }
        EventKind::Utter { speaker, claim, .. } => {
            // a speaker's own belief is not evidence of anything to them
            if path.len() == 1 && path.holder() == speaker {
                return;
            }
            match claim {
                Claim::At { object, container } => {
                    table.objects.insert(
                        object.clone(),
                        Held {
                            value: container.clone(),
                            since,
                            source: RuleId::R4,
                        },
                    );
                }
                Claim::Attr {
                    object,
                    attribute,
                    value,
                } => {
                    table.attributes.insert(
                        (object.clone(), attribute.clone()),
                        Held {
                            value: value.clone(),
                            since,
                            source: RuleId::R4,
                        },
                    );
                }
                Claim::GoalOf { agent, goal } => {
                    table.goals.insert(
                        agent.clone(),
                        Held {
                            value: goal.clone(),
                            since,
                            source: RuleId::R4,
                        },
                    );
                }
            }
        }
        EventKind::GoalDecl { agent, goal } => {
            table.goals.insert(
                agent.clone(),
                Held {
                    value: goal.clone(),
                    since,
                    source: RuleId::R1,
                },
            );
        }
        EventKind::Enter { .. } | EventKind::Leave { .. } | EventKind::Act { .. } => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::Scope;

    fn agents() -> Vec<AgentId> {
        vec!["Anne".into(), "Bob".into(), "Sally".into()]
    }

    fn kitchen() -> WorldState {
        let mut s = WorldState::default();
        for a in agents() {
            s.agent_room.insert(a, "kitchen".into());
        }
        s.container_room.insert("basket".into(), "kitchen".into());
        s.container_room.insert("box".into(), "kitchen".into());
        s.container_room.insert("shelf".into(), "study".into());
        s.object_loc.insert("ball".into(), "basket".into());
        s
    }

    fn mv(t: u32, to: &str) -> Event {
        Event::new(
            t,
            EventKind::Move {
                mover: None,
                object: "ball".into(),
                to: to.into(),
            },
        )
    }

    fn path(names: &[&str]) -> BeliefPath {
        BeliefPath::new(names.iter().map(|n| AgentId::from(*n))).unwrap()
    }

    #[test]
    fn same_room_move_is_seen() {
        let obs = observe(&kitchen(), &[mv(1, "box")], &"Sally".into());
        assert_eq!(obs.seen.len(), 1);
    }

    #[test]
    fn other_room_sees_nothing() {
        let mut s = kitchen();
        s.agent_room.insert("Sally".into(), "study".into());
        let obs = observe(&s, &[mv(1, "box")], &"Sally".into());
        assert!(obs.seen.is_empty());
    }

    #[test]
    fn private_utterance_to_others_unseen() {
        let ev = Event::new(
            1,
            EventKind::Utter {
                speaker: "Anne".into(),
                scope: Scope::Private(["Bob".into()].into_iter().collect()),
                claim: Claim::At {
                    object: "ball".into(),
                    container: "box".into(),
                },
            },
        );
        let obs = observe(&kitchen(), std::slice::from_ref(&ev), &"Sally".into());
        assert!(obs.seen.is_empty());
        assert!(observe(&kitchen(), &[ev], &"Bob".into()).seen.len() == 1);
    }

    #[test]
    fn path_visibility_cuts_at_departure() {
        let mut s = kitchen();
        assert!(visible_along_path(
            &mv(1, "box"),
            &path(&["Anne", "Bob"]),
            &s
        ));
        s.agent_room.remove(&AgentId::from("Bob"));
        assert!(!visible_along_path(
            &mv(2, "basket"),
            &path(&["Anne", "Bob"]),
            &s
        ));
        assert!(visible_along_path(&mv(2, "basket"), &path(&["Anne"]), &s));
    }

    #[test]
    fn single_path_matches_observe() {
        let s = kitchen();
        for ev in [mv(1, "box"), mv(1, "shelf")] {
            let via_obs = !observe(&s, std::slice::from_ref(&ev), &"Anne".into())
                .seen
                .is_empty();
            assert_eq!(via_obs, visible_along_path(&ev, &path(&["Anne"]), &s));
        }
    }

    #[test]
    fn path_collapses_repeats() {
        assert_eq!(path(&["Anne", "Anne", "Bob"]).len(), 2);
        assert!(BeliefPath::new(Vec::<AgentId>::new()).is_none());
    }

    #[test]
    fn enumerates_expected_counts() {
        // 1 + 2 + 4 with three agents and no immediate repeats
        assert_eq!(enumerate_paths(&"Anne".into(), &agents(), 3).len(), 7);
        assert_eq!(enumerate_paths(&"Anne".into(), &agents(), 1).len(), 1);
    }

    #[test]
    fn empty_observation_is_identity() {
        let s = kitchen();
        let b = BeliefState::initial(&"Anne".into(), &agents(), &s, &RuleSet::all(), 3);
        let obs = ObservationRecord {
            time: 1,
            observer: "Anne".into(),
            seen: vec![],
        };
        let ctx = UpdateContext {
            rules: RuleSet::all(),
            max_order: 3,
            required_order: 1,
            scope: None,
        };
        assert_eq!(update_belief(&b, &obs, &[], &s, &ctx).unwrap(), b);
    }

    #[test]
    fn order_too_low_is_config_error() {
        let s = kitchen();
        let b = BeliefState::initial(&"Anne".into(), &agents(), &s, &RuleSet::all(), 1);
        let obs = observe(&s, &[], &"Anne".into());
        let ctx = UpdateContext {
            rules: RuleSet::all(),
            max_order: 1,
            required_order: 2,
            scope: None,
        };
        assert!(matches!(
            update_belief(&b, &obs, &[], &s, &ctx),
            Err(BeliefError::OrderTooLow { .. })
        ));
    }

    #[test]
    fn speaker_keeps_own_belief() {
        let s = kitchen();
        let b = BeliefState::initial(&"Anne".into(), &agents(), &s, &RuleSet::all(), 2);
        let lie = Event::new(
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
        let obs = observe(&s, std::slice::from_ref(&lie), &"Anne".into());
        let ctx = UpdateContext {
            rules: RuleSet::all(),
            max_order: 2,
            required_order: 2,
            scope: None,
        };
        let next = update_belief(&b, &obs, &[lie], &s, &ctx).unwrap();
        let ball = ObjectId::from("ball");
        assert_eq!(
            next.first_order().location(&ball).unwrap().as_str(),
            "basket"
        );
        // Anne believes Bob now believes the claim.
        let nested = next.get(&path(&["Anne", "Bob"])).unwrap();
        assert_eq!(nested.location(&ball).unwrap().as_str(), "box");
    }

    #[test]
    fn rule_set_keeps_core_rules() {
        let r = RuleSet::all()
            .without(RuleId::R1)
            .without(RuleId::R2)
            .without(RuleId::R6);
        assert!(r.is_enabled(RuleId::R1));
        assert!(r.is_enabled(RuleId::R2));
        assert!(!r.is_enabled(RuleId::R6));
    }

    #[test]
    fn initial_seeding_requires_co_presence() {
        let mut s = kitchen();
        s.agent_room.insert("Bob".into(), "study".into());
        let b = BeliefState::initial(&"Anne".into(), &agents(), &s, &RuleSet::all(), 2);
        let ball = ObjectId::from("ball");
        assert!(b.first_order().location(&ball).is_some());
        assert!(b
            .get(&path(&["Anne", "Bob"]))
            .unwrap()
            .location(&ball)
            .is_none());
        assert!(b
            .get(&path(&["Anne", "Sally"]))
            .unwrap()
            .location(&ball)
            .is_some());
    }
}
