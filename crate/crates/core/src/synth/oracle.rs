//! Brute-force ground truth.
//!
//! Every belief path is replayed from scratch over the whole story with
//! its own copy of the world, keeping only events that every agent on the
//! path witnesses. Nothing here calls into the perspective engine or the
//! prover.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::event::{ActionKind, Claim, Event, EventKind, Goal, Scope};
use crate::ids::{AgentId, AttributeId, ContainerId, ObjectId, RoomId};
use crate::scenario::{
    IntentMode, OptionClaim, PredictedAction, QuestionKind, Scenario, SocialIntent, Subject,
};

/// What one path believes: unknown entries are absent.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathTable {
    pub objects: BTreeMap<ObjectId, ContainerId>,
    #[serde(with = "pairs")]
    pub attributes: BTreeMap<(ObjectId, AttributeId), String>,
    pub goals: BTreeMap<AgentId, Goal>,
}

mod pairs {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::ids::{AttributeId, ObjectId};

    type Map = BTreeMap<(ObjectId, AttributeId), String>;

    pub fn serialize<S: Serializer>(map: &Map, s: S) -> Result<S::Ok, S::Error> {
        let flat: BTreeMap<String, &String> = map
            .iter()
            .map(|((o, a), v)| (format!("{o}.{a}"), v))
            .collect();
        flat.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Map, D::Error> {
        let flat: BTreeMap<String, String> = BTreeMap::deserialize(d)?;
        flat.into_iter()
            .map(|(k, v)| match k.split_once('.') {
                Some((o, a)) => Ok(((o.into(), a.into()), v)),
                None => Err(serde::de::Error::custom(format!("bad attribute key `{k}`"))),
            })
            .collect()
    }
}

/// A self-contained world simulation.
#[derive(Debug, Clone, Default)]
struct World {
    agents: BTreeMap<AgentId, RoomId>,
    objects: BTreeMap<ObjectId, ContainerId>,
    containers: BTreeMap<ContainerId, RoomId>,
    attributes: BTreeMap<(ObjectId, AttributeId), String>,
}

impl World {
    fn from_scenario(s: &Scenario) -> Self {
        let h = &s.header;
        let mut w = World::default();
        for c in &h.containers {
            if let Some(r) = &c.room {
                w.containers.insert(c.id.clone(), r.clone());
            }
        }
        for o in &h.objects {
            w.objects.insert(o.id.clone(), o.container.clone());
        }
        for (a, r) in &h.agent_rooms {
            w.agents.insert(a.clone(), r.clone());
        }
        for av in &h.initial_attributes {
            w.attributes
                .insert((av.object.clone(), av.attribute.clone()), av.value.clone());
        }
        w
    }

    fn object_room(&self, o: &ObjectId) -> Option<&RoomId> {
        self.containers.get(self.objects.get(o)?)
    }

    fn step(&mut self, e: &Event) {
        match &e.kind {
            EventKind::Enter { agent, room } => {
                self.agents.insert(agent.clone(), room.clone());
            }
            EventKind::Leave { agent, room } => {
                if self.agents.get(agent) == Some(room) {
                    self.agents.remove(agent);
                }
            }
            EventKind::Move { object, to, .. } => {
                if self.containers.contains_key(to) {
                    self.objects.insert(object.clone(), to.clone());
                }
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
            _ => {}
        }
    }

    fn hears(&self, who: &AgentId, speaker: &AgentId, scope: &Scope) -> bool {
        if who == speaker {
            return false;
        }
        match scope {
            Scope::Public => match self.agents.get(speaker) {
                Some(r) => self.agents.get(who) == Some(r),
                None => false,
            },
            Scope::Private(to) => to.contains(who),
        }
    }

    /// Whether `who` witnesses `e` happening now.
    fn witnesses(&self, who: &AgentId, e: &Event) -> bool {
        let mine = self.agents.get(who);
        let present = |room: Option<&RoomId>| mine.is_some() && mine == room;
        match &e.kind {
            EventKind::Enter { agent, room } | EventKind::Leave { agent, room } => {
                agent == who || present(Some(room))
            }
            EventKind::Move { to, .. } => present(self.containers.get(to)),
            EventKind::StateSet {
                object,
                cause_visible,
                ..
            } => *cause_visible && present(self.object_room(object)),
            EventKind::Utter { speaker, scope, .. } => {
                speaker == who || self.hears(who, speaker, scope)
            }
            EventKind::GoalDecl { agent, .. } | EventKind::Act { agent, .. } => {
                agent == who || present(self.agents.get(agent))
            }
        }
    }
}

/// All holder-first agent sequences of length 1..=`max_order` without
/// immediate repetition.
pub fn all_paths(agents: &[AgentId], max_order: usize) -> Vec<Vec<AgentId>> {
    let mut out: Vec<Vec<AgentId>> = agents.iter().map(|a| vec![a.clone()]).collect();
    let mut frontier = out.clone();
    for _ in 1..max_order {
        let mut next = Vec::new();
        for p in &frontier {
            for a in agents {
                if p.last() != Some(a) {
                    let mut q = p.clone();
                    q.push(a.clone());
                    next.push(q);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Per-step truth for one scenario. Index `t` of every table list is the
/// state after step `t`; index 0 is the initial scene.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub id: String,
    pub max_order: usize,
    pub reality: Vec<PathTable>,
    pub paths: BTreeMap<String, Vec<PathTable>>,
    pub gold: Option<String>,
}

pub fn path_key(path: &[AgentId]) -> String {
    path.iter()
        .map(AgentId::as_str)
        .collect::<Vec<_>>()
        .join(">")
}

impl GroundTruth {
    pub fn steps(&self) -> usize {
        self.reality.len() - 1
    }

    pub fn table(&self, path: &[AgentId], t: usize) -> Option<&PathTable> {
        self.paths.get(&path_key(path)).and_then(|v| v.get(t))
    }

    pub fn final_table(&self, path: &[AgentId]) -> Option<&PathTable> {
        self.paths.get(&path_key(path)).and_then(|v| v.last())
    }

    pub fn final_reality(&self) -> &PathTable {
        self.reality
            .last()
            .expect("reality always has the initial scene")
    }
}

fn reality_table(w: &World) -> PathTable {
    PathTable {
        objects: w.objects.clone(),
        attributes: w.attributes.clone(),
        goals: BTreeMap::new(),
    }
}

fn seed_table(w: &World, path: &[AgentId]) -> PathTable {
    let mut t = PathTable::default();
    let Some(room) = w.agents.get(&path[0]) else {
        return t;
    };
    if path.iter().any(|a| w.agents.get(a) != Some(room)) {
        return t;
    }
    for (o, c) in &w.objects {
        if w.containers.get(c) == Some(room) {
            t.objects.insert(o.clone(), c.clone());
        }
    }
    for ((o, a), v) in &w.attributes {
        if w.object_room(o) == Some(room) {
            t.attributes.insert((o.clone(), a.clone()), v.clone());
        }
    }
    t
}

fn fold(table: &mut PathTable, path: &[AgentId], e: &Event) {
    match &e.kind {
        EventKind::Move { object, to, .. } => {
            table.objects.insert(object.clone(), to.clone());
        }
        EventKind::StateSet {
            object,
            attribute,
            value,
            ..
        } => {
            table
                .attributes
                .insert((object.clone(), attribute.clone()), value.clone());
        }
        EventKind::GoalDecl { agent, goal } => {
            table.goals.insert(agent.clone(), goal.clone());
        }
        EventKind::Utter { speaker, claim, .. } => {
            if path.len() == 1 && path[0] == *speaker {
                return;
            }
            match claim {
                Claim::At { object, container } => {
                    table.objects.insert(object.clone(), container.clone());
                }
                Claim::Attr {
                    object,
                    attribute,
                    value,
                } => {
                    table
                        .attributes
                        .insert((object.clone(), attribute.clone()), value.clone());
                }
                Claim::GoalOf { agent, goal } => {
                    table.goals.insert(agent.clone(), goal.clone());
                }
            }
        }
        EventKind::Enter { .. } | EventKind::Leave { .. } | EventKind::Act { .. } => {}
    }
}

/// Replays one path over the full story and returns its table after every
/// step.
pub fn replay_path(scenario: &Scenario, path: &[AgentId]) -> Vec<PathTable> {
    let mut w = World::from_scenario(scenario);
    let mut table = seed_table(&w, path);
    let mut out = Vec::with_capacity(scenario.events.len() + 1);
    out.push(table.clone());
    for e in &scenario.events {
        if path.iter().all(|a| w.witnesses(a, e)) {
            fold(&mut table, path, e);
        }
        w.step(e);
        out.push(table.clone());
    }
    out
}

/// Only the final table of one path.
pub fn replay_path_final(scenario: &Scenario, path: &[AgentId]) -> PathTable {
    let mut w = World::from_scenario(scenario);
    let mut table = seed_table(&w, path);
    for e in &scenario.events {
        if path.iter().all(|a| w.witnesses(a, e)) {
            fold(&mut table, path, e);
        }
        w.step(e);
    }
    table
}

fn replay_reality(scenario: &Scenario) -> Vec<PathTable> {
    let mut w = World::from_scenario(scenario);
    let mut out = vec![reality_table(&w)];
    for e in &scenario.events {
        w.step(e);
        out.push(reality_table(&w));
    }
    out
}

/// Ground truth for every path over every declared agent up to
/// `max_order`.
pub fn oracle_beliefs(scenario: &Scenario, max_order: usize) -> GroundTruth {
    let paths = all_paths(&scenario.header.agents, max_order.max(1))
        .into_iter()
        .map(|p| (path_key(&p), replay_path(scenario, &p)))
        .collect();
    let mut truth = GroundTruth {
        id: scenario.id.clone(),
        max_order: max_order.max(1),
        reality: replay_reality(scenario),
        paths,
        gold: None,
    };
    truth.gold = oracle_answer(scenario, &truth).label().map(str::to_string);
    truth
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleAnswer {
    Label(String),
    Undecidable(String),
}

impl OracleAnswer {
    pub fn label(&self) -> Option<&str> {
        match self {
            OracleAnswer::Label(l) => Some(l),
            OracleAnswer::Undecidable(_) => None,
        }
    }
}

fn undecidable(why: impl Into<String>) -> OracleAnswer {
    OracleAnswer::Undecidable(why.into())
}

/// The unique option satisfying `pred`, or undecidable.
fn unique(scenario: &Scenario, pred: impl Fn(&OptionClaim) -> bool) -> OracleAnswer {
    let hits: Vec<&str> = scenario
        .question
        .options
        .iter()
        .filter(|o| pred(&o.claim))
        .map(|o| o.label.as_str())
        .collect();
    match hits.as_slice() {
        [one] => OracleAnswer::Label(one.to_string()),
        [] => undecidable("no option matches the truth tables"),
        _ => undecidable("several options match the truth tables"),
    }
}

fn fact_matches(claim: &OptionClaim, subject: &Subject, table: &PathTable) -> bool {
    match (claim, subject) {
        (OptionClaim::At { object, container }, Subject::Location { object: o }) => {
            object == o && table.objects.get(o) == Some(container)
        }
        (
            OptionClaim::Attr {
                object,
                attribute,
                value,
            },
            Subject::Attribute {
                object: o,
                attribute: a,
            },
        ) => {
            object == o
                && attribute == a
                && table.attributes.get(&(o.clone(), a.clone())) == Some(value)
        }
        _ => false,
    }
}

fn knows(subject: &Subject, table: &PathTable) -> bool {
    match subject {
        Subject::Location { object } => table.objects.contains_key(object),
        Subject::Attribute { object, attribute } => table
            .attributes
            .contains_key(&(object.clone(), attribute.clone())),
        _ => false,
    }
}

/// Answers the question straight from the truth tables.
pub fn oracle_answer(scenario: &Scenario, truth: &GroundTruth) -> OracleAnswer {
    let q = &scenario.question;
    let path = &q.target_path;
    let kind = match q.kind_hint {
        Some(k) => k,
        None => return undecidable("oracle needs an explicit question kind"),
    };
    match kind {
        QuestionKind::Reality => {
            let table = truth.final_reality();
            unique(scenario, |c| fact_matches(c, &q.subject, table))
        }
        QuestionKind::Belief => {
            let Some(table) = truth.final_table(path) else {
                return undecidable("path beyond the oracle's order");
            };
            if !knows(&q.subject, table) {
                return undecidable("path has no belief about the subject");
            }
            unique(scenario, |c| fact_matches(c, &q.subject, table))
        }
        QuestionKind::Memory => {
            let Some(series) = truth.paths.get(&path_key(path)) else {
                return undecidable("path beyond the oracle's order");
            };
            match series.iter().find(|t| knows(&q.subject, t)) {
                Some(first) => unique(scenario, |c| fact_matches(c, &q.subject, first)),
                None => undecidable("agent never registered the subject"),
            }
        }
        QuestionKind::Search => search_answer(scenario, truth),
        QuestionKind::Goal => goal_answer(scenario, truth),
        QuestionKind::BeliefOfGoal => {
            if path.len() != 2 {
                return undecidable("belief of goal needs a two-agent path");
            }
            let Some(table) = truth.final_table(&path[..1]) else {
                return undecidable("missing table");
            };
            match table.goals.get(&path[1]) {
                Some(g) => unique(
                    scenario,
                    |c| matches!(c, OptionClaim::GoalOf { agent, goal } if *agent == path[1] && goal == g),
                ),
                None => undecidable("no goal attributed"),
            }
        }
        QuestionKind::SocialIntent => intent_answer(scenario, truth),
    }
}

fn declared_goal(scenario: &Scenario, agent: &AgentId) -> Option<Goal> {
    scenario.events.iter().rev().find_map(|e| match &e.kind {
        EventKind::GoalDecl { agent: a, goal } if a == agent => Some(goal.clone()),
        _ => None,
    })
}

fn search_answer(scenario: &Scenario, truth: &GroundTruth) -> OracleAnswer {
    let q = &scenario.question;
    let (agent, object) = match &q.subject {
        Subject::Action { agent, object } => (agent.clone(), object.clone()),
        Subject::Location { object } => match q.target_path.first() {
            Some(a) => (a.clone(), Some(object.clone())),
            None => return undecidable("search question without an agent"),
        },
        _ => return undecidable("search question about a non-location subject"),
    };
    let object = match declared_goal(scenario, &agent) {
        Some(Goal::Fetch { object } | Goal::Use { object } | Goal::Locate { object }) => object,
        Some(Goal::Task { .. }) => return undecidable("task goals are not searched for"),
        None => match object {
            Some(o) => o,
            None => return undecidable("no goal to act on"),
        },
    };
    let Some(table) = truth.final_table(std::slice::from_ref(&agent)) else {
        return undecidable("missing table");
    };
    let Some(believed) = table.objects.get(&object) else {
        return undecidable("agent has no idea where the object is");
    };
    unique(scenario, |c| match c {
        OptionClaim::At { container, .. } => container == believed,
        OptionClaim::Action {
            action:
                PredictedAction::Search { container } | PredictedAction::Exploit { container, .. },
        } => container == believed,
        _ => false,
    })
}

fn goal_answer(scenario: &Scenario, truth: &GroundTruth) -> OracleAnswer {
    let Subject::Goal { agent } = &scenario.question.subject else {
        return undecidable("goal question without a goal subject");
    };
    let candidates: Vec<Goal> = scenario
        .question
        .options
        .iter()
        .filter_map(|o| match &o.claim {
            OptionClaim::GoalOf { agent: a, goal } if a == agent => Some(goal.clone()),
            _ => None,
        })
        .collect();
    let survivors: BTreeSet<Goal> = if let Some(g) = declared_goal(scenario, agent) {
        candidates.into_iter().filter(|c| *c == g).collect()
    } else {
        let acts: Vec<(usize, &ActionKind)> = scenario
            .events
            .iter()
            .enumerate()
            .filter_map(|(i, e)| match &e.kind {
                EventKind::Act { agent: a, action } if a == agent => Some((i + 1, action)),
                _ => None,
            })
            .collect();
        let exploited = acts.iter().rev().find_map(|(_, a)| match a {
            ActionKind::Exploit { object } => Some(object),
            _ => None,
        });
        if let Some(o) = exploited {
            candidates
                .into_iter()
                .filter(|c| c.object() == Some(o))
                .collect()
        } else {
            let mut out: BTreeSet<Goal> = candidates.iter().cloned().collect();
            for (k, (t, action)) in acts.iter().enumerate() {
                let ActionKind::Search { container } = action else {
                    continue;
                };
                let moved_on = acts[k + 1..].iter().any(
                    |(_, a)| matches!(a, ActionKind::Search { container: c } if c != container),
                );
                if !moved_on {
                    continue;
                }
                let Some(table) = truth.table(std::slice::from_ref(agent), *t) else {
                    continue;
                };
                out.retain(|g| match g.object() {
                    Some(o) => table.objects.get(o) != Some(container),
                    None => true,
                });
            }
            out
        }
    };
    if survivors.len() != 1 {
        return undecidable(format!("{} goals survive", survivors.len()));
    }
    let g = survivors.into_iter().next().expect("one survivor");
    unique(
        scenario,
        |c| matches!(c, OptionClaim::GoalOf { agent: a, goal } if a == agent && *goal == g),
    )
}

fn intent_answer(scenario: &Scenario, truth: &GroundTruth) -> OracleAnswer {
    let Subject::Intent {
        speaker,
        listener,
        mode,
    } = &scenario.question.subject
    else {
        return undecidable("intent question without an intent subject");
    };
    let mut w = World::from_scenario(scenario);
    let mut last = None;
    for (i, e) in scenario.events.iter().enumerate() {
        if let EventKind::Utter {
            speaker: s,
            scope,
            claim: Claim::At { object, container },
        } = &e.kind
        {
            if s == speaker && w.hears(listener, s, scope) {
                last = Some((i + 1, object.clone(), container.clone()));
            }
        }
        w.step(e);
    }
    let Some((t, object, claimed)) = last else {
        return undecidable("listener heard no location claim");
    };
    let Some(truth_loc) = truth.reality[t - 1].objects.get(&object) else {
        return undecidable("object has no location");
    };
    let Some(own) = truth.table(std::slice::from_ref(speaker), t) else {
        return undecidable("missing table");
    };
    if own.objects.get(&object) != Some(truth_loc) {
        return undecidable("speaker did not know the true location");
    }
    let class = if claimed == *truth_loc {
        SocialIntent::Helping
    } else {
        SocialIntent::Hindering
    };
    unique(scenario, |c| match c {
        OptionClaim::Intent { intent } => match mode {
            IntentMode::MostLikely => *intent == class,
            IntentMode::LeastLikely => *intent != class,
        },
        _ => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::parse_scenario;
    use crate::trace::tests::SALLY_ANNE;

    #[test]
    fn sally_anne_truth() {
        let s = parse_scenario(SALLY_ANNE, 1).unwrap();
        let truth = oracle_beliefs(&s, 2);
        let sally = truth.final_table(&["Sally".into()]).unwrap();
        assert_eq!(
            sally.objects[&ObjectId::from("ball")],
            ContainerId::from("basket")
        );
        assert_eq!(
            truth.final_reality().objects[&ObjectId::from("ball")],
            ContainerId::from("box")
        );
        assert_eq!(truth.gold.as_deref(), Some("A"));
    }

    #[test]
    fn path_enumeration_counts() {
        let agents: Vec<AgentId> = ["a", "b", "c"].iter().map(|x| AgentId::from(*x)).collect();
        // per holder 1 + 2 + 4
        assert_eq!(all_paths(&agents, 3).len(), 3 * 7);
        assert!(all_paths(&agents, 3)
            .iter()
            .all(|p| p.windows(2).all(|w| w[0] != w[1])));
    }

    #[test]
    fn public_claim_after_exit_skips_absent_agent() {
        let text = SALLY_ANNE.replace(
            r#"{"kind":"move","mover":"Anne","object":"ball","to":"box"}"#,
            r#"{"kind":"utter","speaker":"Anne","scope":"public","claim":{"type":"at","object":"ball","container":"box"}}"#,
        );
        let s = parse_scenario(&text, 1).unwrap();
        let truth = oracle_beliefs(&s, 1);
        let sally = truth.final_table(&["Sally".into()]).unwrap();
        assert_eq!(
            sally.objects[&ObjectId::from("ball")],
            ContainerId::from("basket")
        );
    }

    #[test]
    fn full_visibility_tracks_reality() {
        let text = SALLY_ANNE.replace(r#"{"kind":"leave","agent":"Sally","room":"room"},"#, "");
        let s = parse_scenario(&text, 1).unwrap();
        let truth = oracle_beliefs(&s, 1);
        for t in 0..=truth.steps() {
            assert_eq!(
                truth.table(&["Sally".into()], t).unwrap().objects,
                truth.reality[t].objects
            );
        }
    }

    #[test]
    fn truth_round_trips_as_json() {
        let s = parse_scenario(SALLY_ANNE, 1).unwrap();
        let truth = oracle_beliefs(&s, 2);
        let back: GroundTruth =
            serde_json::from_str(&serde_json::to_string(&truth).unwrap()).unwrap();
        assert_eq!(back, truth);
    }
}
