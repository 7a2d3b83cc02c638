use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::event::{ActionKind, Claim, Event, EventKind, Goal, Scope, WorldState};
use crate::ids::{AgentId, AttributeId, ContainerId, ObjectId, RoomId};
use crate::scenario::{
    AnswerOption, AttrValue, ContainerDecl, Header, IntentMode, Meta, ObjectDecl, OptionClaim,
    PredictedAction, Question, QuestionKind, Scenario, SocialIntent, Subject,
};

use super::oracle::{oracle_answer, oracle_beliefs, GroundTruth, OracleAnswer};
use super::{GenConfig, GenError, Regime};

const AGENTS: [&str; 5] = ["Sally", "Anne", "Oliver", "Emma", "Jack"];
const ROOMS: [&str; 4] = ["kitchen", "garden", "hall", "study"];
const CONTAINERS: [&str; 6] = ["basket", "box", "drawer", "cupboard", "bucket", "suitcase"];
const OBJECTS: [&str; 4] = ["ball", "apple", "key", "book"];
const STATES: [&str; 3] = ["clean", "dirty", "broken"];
const MAX_ATTEMPTS: u32 = 256;

struct Cast {
    agents: Vec<AgentId>,
    rooms: Vec<RoomId>,
    containers: Vec<(ContainerId, RoomId)>,
    objects: Vec<ObjectId>,
    attribute: AttributeId,
}

impl Cast {
    fn new(cfg: &GenConfig) -> Self {
        let rooms: Vec<RoomId> = ROOMS[..cfg.n_rooms]
            .iter()
            .map(|r| RoomId::from(*r))
            .collect();
        let containers = CONTAINERS[..cfg.n_containers]
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let room = if i < 2 { 0 } else { i % cfg.n_rooms };
                (ContainerId::from(*c), rooms[room].clone())
            })
            .collect();
        Self {
            agents: AGENTS[..cfg.n_agents]
                .iter()
                .map(|a| AgentId::from(*a))
                .collect(),
            rooms,
            containers,
            objects: OBJECTS[..cfg.n_objects]
                .iter()
                .map(|o| ObjectId::from(*o))
                .collect(),
            attribute: AttributeId::from("state"),
        }
    }

    fn home(&self) -> &RoomId {
        &self.rooms[0]
    }

    fn containers_in<'a>(&'a self, room: &'a RoomId) -> impl Iterator<Item = &'a ContainerId> + 'a {
        self.containers
            .iter()
            .filter(move |(_, r)| r == room)
            .map(|(c, _)| c)
    }

    fn q_object(&self) -> &ObjectId {
        &self.objects[0]
    }
}

/// One scripted story event, resolved against the live world when placed.
#[derive(Debug, Clone)]
enum Beat {
    Leave(AgentId),
    Enter(AgentId),
    /// Moves the question object to another container in its room.
    MoveQ(AgentId),
    Utter {
        speaker: AgentId,
        listener: AgentId,
        private: bool,
        honest: bool,
    },
    Decl(AgentId, Goal),
    SearchWhere(AgentId, ObjectId),
    /// Searches a home-room container that does not hold the question object.
    SearchElsewhere(AgentId),
    Exploit(AgentId, ObjectId),
}

#[derive(Debug, Clone)]
enum Ask {
    Reality,
    Belief(Vec<AgentId>),
    Memory(AgentId),
    Search(AgentId),
    Goal(AgentId, Goal, Goal),
    Intent(AgentId, AgentId, IntentMode),
    BeliefOfGoal(Vec<AgentId>, Goal, Goal),
}

impl Ask {
    fn agents(&self) -> Vec<AgentId> {
        match self {
            Ask::Reality => Vec::new(),
            Ask::Belief(p) | Ask::BeliefOfGoal(p, ..) => p.clone(),
            Ask::Memory(a) | Ask::Search(a) | Ask::Goal(a, ..) => vec![a.clone()],
            Ask::Intent(s, l, _) => vec![s.clone(), l.clone()],
        }
    }
}

struct Plan {
    beats: Vec<Beat>,
    ask: Ask,
    /// Agents noise may never relocate.
    pinned: BTreeSet<AgentId>,
}

fn object_goal(rng: &mut ChaCha8Rng, object: &ObjectId) -> Goal {
    let object = object.clone();
    match rng.gen_range(0..3) {
        0 => Goal::Fetch { object },
        1 => Goal::Use { object },
        _ => Goal::Locate { object },
    }
}

fn rest() -> Goal {
    Goal::Task {
        label: "rest".into(),
        requires: None,
    }
}

fn plan(cfg: &GenConfig, cast: &Cast, rng: &mut ChaCha8Rng) -> Plan {
    let a = &cast.agents;
    let k = cfg.belief_order;
    let obj = cast.q_object().clone();
    let second_goal = |rng: &mut ChaCha8Rng| match cast.objects.get(1) {
        Some(o) => object_goal(rng, o),
        None => rest(),
    };
    match cfg.regime {
        Regime::FalseBelief => {
            let ask = match k {
                0 => Ask::Reality,
                1 => match rng.gen_range(0..3) {
                    0 => Ask::Belief(vec![a[0].clone()]),
                    1 => Ask::Memory(a[0].clone()),
                    _ => Ask::Search(a[0].clone()),
                },
                k => Ask::Belief(a[..k].to_vec()),
            };
            let mut pinned: BTreeSet<AgentId> = ask.agents().into_iter().collect();
            pinned.extend([a[0].clone(), a[1].clone()]);
            Plan {
                beats: vec![Beat::Leave(a[0].clone()), Beat::MoveQ(a[1].clone())],
                ask,
                pinned,
            }
        }
        Regime::Nested => {
            let path = a[..k].to_vec();
            let leaver = path.last().cloned().unwrap_or_else(|| a[1].clone());
            let mover = if leaver == a[0] {
                a[1].clone()
            } else {
                a[0].clone()
            };
            let mut pinned: BTreeSet<AgentId> = path.iter().cloned().collect();
            pinned.insert(mover.clone());
            pinned.insert(leaver.clone());
            Plan {
                beats: vec![
                    Beat::MoveQ(mover.clone()),
                    Beat::Leave(leaver),
                    Beat::MoveQ(mover),
                ],
                ask: if k == 0 {
                    Ask::Reality
                } else {
                    Ask::Belief(path)
                },
                pinned,
            }
        }
        Regime::Communication => {
            let (listener, speaker) = (a[0].clone(), a[1].clone());
            let honest = rng.gen::<f64>() >= cfg.deception_rate;
            let ask = match k {
                0 => Ask::Intent(
                    speaker.clone(),
                    listener.clone(),
                    if rng.gen_bool(0.5) {
                        IntentMode::MostLikely
                    } else {
                        IntentMode::LeastLikely
                    },
                ),
                k => Ask::Belief(
                    (0..k)
                        .map(|i| {
                            if i % 2 == 0 {
                                listener.clone()
                            } else {
                                speaker.clone()
                            }
                        })
                        .collect(),
                ),
            };
            Plan {
                beats: vec![
                    Beat::Leave(listener.clone()),
                    Beat::MoveQ(speaker.clone()),
                    Beat::Enter(listener.clone()),
                    Beat::Utter {
                        speaker: speaker.clone(),
                        listener: listener.clone(),
                        private: rng.gen_bool(0.5),
                        honest,
                    },
                ],
                ask,
                pinned: [listener, speaker].into_iter().collect(),
            }
        }
        Regime::GoalAction => {
            let (g, o) = (a[0].clone(), a[1].clone());
            let pinned: BTreeSet<AgentId> = [g.clone(), o.clone()].into_iter().collect();
            if k >= 2 {
                let first = object_goal(rng, &obj);
                let second = second_goal(rng);
                return Plan {
                    beats: vec![
                        Beat::Decl(g.clone(), first.clone()),
                        Beat::Leave(o.clone()),
                        Beat::Decl(g.clone(), second.clone()),
                    ],
                    ask: Ask::BeliefOfGoal(vec![o, g], first, second),
                    pinned,
                };
            }
            if rng.gen_bool(0.5) {
                let main = object_goal(rng, &obj);
                let other = second_goal(rng);
                let mut beats = vec![
                    match cast.objects.get(1) {
                        Some(o2) => Beat::SearchWhere(g.clone(), o2.clone()),
                        None => Beat::SearchElsewhere(g.clone()),
                    },
                    Beat::SearchWhere(g.clone(), obj.clone()),
                ];
                if cast.objects.len() == 1 || rng.gen_bool(0.5) {
                    beats.push(Beat::Exploit(g.clone(), obj.clone()));
                }
                let (first, second) = if rng.gen_bool(0.5) {
                    (main, other)
                } else {
                    (other, main)
                };
                Plan {
                    beats,
                    ask: Ask::Goal(g, first, second),
                    pinned,
                }
            } else {
                Plan {
                    beats: vec![
                        Beat::Decl(g.clone(), object_goal(rng, &obj)),
                        Beat::Leave(g.clone()),
                        Beat::MoveQ(o),
                        Beat::Enter(g.clone()),
                    ],
                    ask: Ask::Search(g),
                    pinned,
                }
            }
        }
    }
}

fn other_container<'a>(
    rng: &mut ChaCha8Rng,
    pool: impl Iterator<Item = &'a ContainerId>,
    not: &ContainerId,
) -> Option<ContainerId> {
    let options: Vec<&ContainerId> = pool.filter(|c| *c != not).collect();
    options.choose(rng).map(|c| (*c).clone())
}

fn present_in<'a>(world: &'a WorldState, room: &'a RoomId) -> Vec<&'a AgentId> {
    world.occupants(room).collect()
}

fn play_beat(
    beat: &Beat,
    world: &WorldState,
    cast: &Cast,
    rng: &mut ChaCha8Rng,
) -> Option<EventKind> {
    let obj = cast.q_object();
    Some(match beat {
        Beat::Leave(a) => EventKind::Leave {
            agent: a.clone(),
            room: world.agent_room.get(a)?.clone(),
        },
        Beat::Enter(a) => {
            if world.agent_room.contains_key(a) {
                return None;
            }
            EventKind::Enter {
                agent: a.clone(),
                room: cast.home().clone(),
            }
        }
        Beat::MoveQ(mover) => {
            let from = world.object_loc.get(obj)?;
            let room = world.container_room.get(from)?;
            let to = other_container(rng, cast.containers_in(room), from)?;
            EventKind::Move {
                mover: (world.agent_room.get(mover) == Some(room)).then(|| mover.clone()),
                object: obj.clone(),
                to,
            }
        }
        Beat::Utter {
            speaker,
            listener,
            private,
            honest,
        } => {
            let truth = world.object_loc.get(obj)?;
            let container = if *honest {
                truth.clone()
            } else {
                let room = world.container_room.get(truth)?;
                other_container(rng, cast.containers_in(room), truth)?
            };
            EventKind::Utter {
                speaker: speaker.clone(),
                scope: if *private {
                    Scope::Private([listener.clone()].into_iter().collect())
                } else {
                    Scope::Public
                },
                claim: Claim::At {
                    object: obj.clone(),
                    container,
                },
            }
        }
        Beat::Decl(a, goal) => EventKind::GoalDecl {
            agent: a.clone(),
            goal: goal.clone(),
        },
        Beat::SearchWhere(a, o) => EventKind::Act {
            agent: a.clone(),
            action: ActionKind::Search {
                container: world.object_loc.get(o)?.clone(),
            },
        },
        Beat::SearchElsewhere(a) => EventKind::Act {
            agent: a.clone(),
            action: ActionKind::Search {
                container: other_container(
                    rng,
                    cast.containers_in(cast.home()),
                    world.object_loc.get(obj)?,
                )?,
            },
        },
        Beat::Exploit(a, o) => EventKind::Act {
            agent: a.clone(),
            action: ActionKind::Exploit { object: o.clone() },
        },
    })
}

/// A random background event. Relevant noise involves a question agent or
/// the question object; distractors avoid both.
fn noise(
    cfg: &GenConfig,
    world: &WorldState,
    cast: &Cast,
    scope_agents: &BTreeSet<AgentId>,
    pinned: &BTreeSet<AgentId>,
    rng: &mut ChaCha8Rng,
) -> EventKind {
    let outsiders: Vec<&AgentId> = cast
        .agents
        .iter()
        .filter(|a| !scope_agents.contains(*a))
        .collect();
    let distract =
        rng.gen::<f64>() < cfg.distractor_rate && (cast.objects.len() > 1 || !outsiders.is_empty());
    let (agents, objects): (Vec<&AgentId>, Vec<&ObjectId>) = if distract {
        (outsiders, cast.objects[1..].iter().collect())
    } else {
        (
            cast.agents
                .iter()
                .filter(|a| scope_agents.contains(*a))
                .collect(),
            vec![cast.q_object()],
        )
    };
    let movable: Vec<&AgentId> = agents
        .iter()
        .copied()
        .filter(|a| !pinned.contains(*a))
        .collect();

    if rng.gen::<f64>() < cfg.communication_rate {
        if let (Some(speaker), Some(object)) = (agents.choose(rng), objects.choose(rng)) {
            if let Some(truth) = world.object_loc.get(*object) {
                let lie = rng.gen::<f64>() < cfg.deception_rate;
                let container = if lie {
                    let room = &world.container_room[truth];
                    other_container(rng, cast.containers_in(room), truth)
                        .unwrap_or_else(|| truth.clone())
                } else {
                    truth.clone()
                };
                let others: Vec<&&AgentId> = agents.iter().filter(|a| **a != *speaker).collect();
                let scope = match others.choose(rng) {
                    Some(l) if rng.gen_bool(0.5) => {
                        Scope::Private([(**l).clone()].into_iter().collect())
                    }
                    _ => Scope::Public,
                };
                return EventKind::Utter {
                    speaker: (*speaker).clone(),
                    scope,
                    claim: Claim::At {
                        object: (*object).clone(),
                        container,
                    },
                };
            }
        }
    }

    let choice = rng.gen_range(0..3);
    if choice == 0 {
        if let Some(a) = movable.choose(rng) {
            return match world.agent_room.get(*a) {
                Some(room) => EventKind::Leave {
                    agent: (*a).clone(),
                    room: room.clone(),
                },
                None => EventKind::Enter {
                    agent: (*a).clone(),
                    room: cast.rooms.choose(rng).expect("at least one room").clone(),
                },
            };
        }
    }
    let object = (*objects.choose(rng).unwrap_or(&cast.q_object())).clone();
    if choice == 1 {
        if let Some(from) = world.object_loc.get(&object) {
            let room = world.container_room[from].clone();
            if let Some(to) = other_container(rng, cast.containers_in(&room), from) {
                let mover = present_in(world, &room).choose(rng).map(|a| (*a).clone());
                return EventKind::Move { mover, object, to };
            }
        }
    }
    EventKind::StateSet {
        object,
        attribute: cast.attribute.clone(),
        value: STATES.choose(rng).expect("states").to_string(),
        cause_visible: rng.gen_bool(0.7),
    }
}

fn header(cast: &Cast, rng: &mut ChaCha8Rng) -> Header {
    let home: Vec<ContainerId> = cast.containers_in(cast.home()).cloned().collect();
    Header {
        agents: cast.agents.clone(),
        rooms: cast.rooms.clone(),
        containers: cast
            .containers
            .iter()
            .map(|(c, r)| ContainerDecl {
                id: c.clone(),
                room: Some(r.clone()),
            })
            .collect(),
        objects: cast
            .objects
            .iter()
            .map(|o| ObjectDecl {
                id: o.clone(),
                container: home.choose(rng).expect("home has containers").clone(),
            })
            .collect(),
        attributes: vec![cast.attribute.clone()],
        agent_rooms: cast
            .agents
            .iter()
            .map(|a| (a.clone(), cast.home().clone()))
            .collect::<BTreeMap<_, _>>(),
        initial_attributes: cast
            .objects
            .iter()
            .map(|o| AttrValue {
                object: o.clone(),
                attribute: cast.attribute.clone(),
                value: "clean".into(),
            })
            .collect(),
    }
}

fn story(
    cfg: &GenConfig,
    cast: &Cast,
    plan: &Plan,
    h: &Header,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<Event>> {
    let n_noise = cfg.n_events.checked_sub(plan.beats.len())?;
    let mut gaps = vec![0usize; plan.beats.len() + 1];
    for _ in 0..n_noise {
        let slot = rng.gen_range(0..gaps.len());
        gaps[slot] += 1;
    }
    let scope: BTreeSet<AgentId> = plan.ask.agents().into_iter().collect();
    let mut world = h.initial_state();
    let mut events = Vec::with_capacity(cfg.n_events);
    for (i, gap) in gaps.iter().enumerate() {
        for _ in 0..*gap {
            let kind = noise(cfg, &world, cast, &scope, &plan.pinned, rng);
            let e = Event::new(events.len() as u32 + 1, kind);
            world.apply(&e).ok()?;
            events.push(e);
        }
        if let Some(beat) = plan.beats.get(i) {
            let e = Event::new(events.len() as u32 + 1, play_beat(beat, &world, cast, rng)?);
            world.apply(&e).ok()?;
            events.push(e);
        }
    }
    Some(events)
}

fn name_list(path: &[AgentId]) -> String {
    let mut text = String::new();
    for (i, a) in path.iter().enumerate() {
        if i == 0 {
            text.push_str(&format!("Where does {a} think "));
        } else {
            text.push_str(&format!("{a} thinks "));
        }
    }
    text
}

fn alternative(
    rng: &mut ChaCha8Rng,
    cast: &Cast,
    gold: &ContainerId,
    preferred: Option<&ContainerId>,
) -> ContainerId {
    match preferred {
        Some(p) if p != gold => p.clone(),
        _ => other_container(rng, cast.containers.iter().map(|(c, _)| c), gold)
            .expect("at least two containers"),
    }
}

fn at(o: &ObjectId, c: ContainerId) -> OptionClaim {
    OptionClaim::At {
        object: o.clone(),
        container: c,
    }
}

struct Posed {
    kind: QuestionKind,
    text: String,
    path: Vec<AgentId>,
    subject: Subject,
    claims: [OptionClaim; 2],
    visibility: Option<&'static str>,
}

fn pose(
    plan: &Plan,
    cast: &Cast,
    h: &Header,
    truth: &GroundTruth,
    rng: &mut ChaCha8Rng,
) -> Option<Posed> {
    let obj = cast.q_object();
    let reality = truth.final_reality().objects.get(obj)?.clone();
    let location = Subject::Location {
        object: obj.clone(),
    };
    let visibility = |believed: &ContainerId| {
        Some(if *believed == reality {
            "observed"
        } else {
            "hidden"
        })
    };
    Some(match &plan.ask {
        Ask::Reality => {
            let initial = h
                .objects
                .iter()
                .find(|o| o.id == *obj)
                .map(|o| &o.container);
            Posed {
                kind: QuestionKind::Reality,
                text: format!("Where is the {obj} really?"),
                path: Vec::new(),
                subject: location,
                claims: [
                    at(obj, reality.clone()),
                    at(obj, alternative(rng, cast, &reality, initial)),
                ],
                visibility: None,
            }
        }
        Ask::Belief(path) => {
            let believed = truth.final_table(path)?.objects.get(obj)?.clone();
            Posed {
                kind: QuestionKind::Belief,
                text: format!("{}the {obj} is?", name_list(path)),
                path: path.clone(),
                subject: location,
                claims: [
                    at(obj, believed.clone()),
                    at(obj, alternative(rng, cast, &believed, Some(&reality))),
                ],
                visibility: visibility(&believed),
            }
        }
        Ask::Memory(a) => {
            let series = truth
                .paths
                .get(&super::oracle::path_key(std::slice::from_ref(a)))?;
            let first = series.iter().find_map(|t| t.objects.get(obj))?.clone();
            let believed = truth
                .final_table(std::slice::from_ref(a))?
                .objects
                .get(obj)?
                .clone();
            Posed {
                kind: QuestionKind::Memory,
                text: format!("Where was the {obj} at the beginning?"),
                path: vec![a.clone()],
                subject: location,
                claims: [
                    at(obj, first.clone()),
                    at(obj, alternative(rng, cast, &first, Some(&reality))),
                ],
                visibility: visibility(&believed),
            }
        }
        Ask::Search(a) => {
            let believed = truth
                .final_table(std::slice::from_ref(a))?
                .objects
                .get(obj)?
                .clone();
            let search = |c: ContainerId| OptionClaim::Action {
                action: PredictedAction::Search { container: c },
            };
            Posed {
                kind: QuestionKind::Search,
                text: format!("Where will {a} look for the {obj}?"),
                path: vec![a.clone()],
                subject: Subject::Action {
                    agent: a.clone(),
                    object: Some(obj.clone()),
                },
                claims: [
                    search(believed.clone()),
                    search(alternative(rng, cast, &believed, Some(&reality))),
                ],
                visibility: visibility(&believed),
            }
        }
        Ask::Goal(a, g1, g2) => Posed {
            kind: QuestionKind::Goal,
            text: format!("What is {a} trying to do?"),
            path: vec![a.clone()],
            subject: Subject::Goal { agent: a.clone() },
            claims: [
                OptionClaim::GoalOf {
                    agent: a.clone(),
                    goal: g1.clone(),
                },
                OptionClaim::GoalOf {
                    agent: a.clone(),
                    goal: g2.clone(),
                },
            ],
            visibility: None,
        },
        Ask::BeliefOfGoal(path, g1, g2) => Posed {
            kind: QuestionKind::BeliefOfGoal,
            text: format!("What does {} think {} wants?", path[0], path[1]),
            path: path.clone(),
            subject: Subject::Goal {
                agent: path[1].clone(),
            },
            claims: [
                OptionClaim::GoalOf {
                    agent: path[1].clone(),
                    goal: g1.clone(),
                },
                OptionClaim::GoalOf {
                    agent: path[1].clone(),
                    goal: g2.clone(),
                },
            ],
            visibility: None,
        },
        Ask::Intent(speaker, listener, mode) => Posed {
            kind: QuestionKind::SocialIntent,
            text: format!(
                "Is {speaker} {} helping or hindering {listener}?",
                match mode {
                    IntentMode::MostLikely => "most likely",
                    IntentMode::LeastLikely => "least likely",
                }
            ),
            path: Vec::new(),
            subject: Subject::Intent {
                speaker: speaker.clone(),
                listener: listener.clone(),
                mode: *mode,
            },
            claims: [
                OptionClaim::Intent {
                    intent: SocialIntent::Helping,
                },
                OptionClaim::Intent {
                    intent: SocialIntent::Hindering,
                },
            ],
            visibility: None,
        },
    })
}

/// Moves of any object whose destination the agent did not witness.
pub fn unwitnessed_moves(scenario: &Scenario, agent: &AgentId) -> usize {
    let mut world = scenario.initial_state();
    let mut count = 0;
    for e in &scenario.events {
        if let EventKind::Move { to, .. } = &e.kind {
            let here = world.agent_room.get(agent);
            if here.is_none() || here != world.container_room.get(to) {
                count += 1;
            }
        }
        let _ = world.apply(e);
    }
    count
}

fn diverges(truth: &GroundTruth, path: &[AgentId], object: &ObjectId) -> bool {
    let (Some(deep), Some(shallow)) = (
        truth.paths.get(&super::oracle::path_key(path)),
        truth
            .paths
            .get(&super::oracle::path_key(&path[..path.len() - 1])),
    ) else {
        return false;
    };
    deep.iter()
        .zip(shallow)
        .any(|(d, s)| d.objects.get(object) != s.objects.get(object))
}

fn attempt(cfg: &GenConfig, cast: &Cast, rng: &mut ChaCha8Rng) -> Option<(Scenario, GroundTruth)> {
    let plan = plan(cfg, cast, rng);
    let h = header(cast, rng);
    let events = story(cfg, cast, &plan, &h, rng)?;
    let order = plan.ask.agents().len().max(cfg.belief_order).max(1);
    let placeholder = Question {
        kind_hint: Some(QuestionKind::Reality),
        text: String::new(),
        target_path: Vec::new(),
        subject: Subject::Location {
            object: cast.q_object().clone(),
        },
        options: Vec::new(),
        gold: None,
    };
    let mut scenario = Scenario {
        id: format!("{}-{:06}", cfg.regime, cfg.seed),
        header: h,
        events,
        question: placeholder,
        meta: Meta::default(),
    };
    let mut truth = oracle_beliefs(&scenario, order);
    let posed = pose(&plan, cast, &scenario.header, &truth, rng)?;
    let mut claims = posed.claims.to_vec();
    claims.shuffle(rng);
    if claims[0] == claims[1] {
        return None;
    }
    scenario.question = Question {
        kind_hint: Some(posed.kind),
        text: posed.text,
        target_path: posed.path.clone(),
        subject: posed.subject,
        options: claims
            .into_iter()
            .zip(["A", "B"])
            .map(|(claim, label)| AnswerOption {
                label: label.into(),
                claim,
            })
            .collect(),
        gold: None,
    };
    let OracleAnswer::Label(gold) = oracle_answer(&scenario, &truth) else {
        return None;
    };
    match cfg.regime {
        Regime::FalseBelief if unwitnessed_moves(&scenario, &cast.agents[0]) == 0 => return None,
        Regime::Nested
            if posed.path.len() >= 2 && !diverges(&truth, &posed.path, cast.q_object()) =>
        {
            return None
        }
        _ => {}
    }
    scenario.question.gold = Some(gold.clone());
    truth.gold = Some(gold);
    scenario.meta = Meta {
        benchmark: format!("synthetic-{}", cfg.regime),
        question_type: Some(
            match posed.kind {
                QuestionKind::Belief if posed.path.len() > 1 => "nested_belief",
                QuestionKind::Reality => "reality",
                QuestionKind::Memory => "memory",
                QuestionKind::Belief => "belief",
                QuestionKind::Search => "search",
                QuestionKind::Goal => "goal",
                QuestionKind::SocialIntent => "social_intent",
                QuestionKind::BeliefOfGoal => "belief_of_goal",
            }
            .into(),
        ),
        belief_order: Some(posed.path.len() as u32),
        visibility: posed.visibility.map(str::to_string),
    };
    Some((scenario, truth))
}

/// Generates one labelled story. Deterministic in the whole config.
pub fn generate_story(cfg: &GenConfig) -> Result<(Scenario, GroundTruth), GenError> {
    cfg.validate()?;
    let cast = Cast::new(cfg);
    for n in 0..MAX_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(u64::from(n));
        if let Some(found) = attempt(cfg, &cast, &mut rng) {
            debug_assert!(found.0.validate().is_ok());
            return Ok(found);
        }
    }
    Err(GenError::Exhausted {
        seed: cfg.seed,
        attempts: MAX_ATTEMPTS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::parse_scenario;

    fn cfg(regime: Regime, order: usize, seed: u64) -> GenConfig {
        GenConfig {
            regime,
            belief_order: order,
            n_agents: 5,
            seed,
            ..GenConfig::default()
        }
    }

    #[test]
    fn same_seed_same_story() {
        let c = cfg(Regime::FalseBelief, 1, 0);
        assert_eq!(generate_story(&c).unwrap(), generate_story(&c).unwrap());
    }

    #[test]
    fn every_regime_generates_and_parses() {
        for regime in Regime::ALL {
            for order in 0..=4 {
                let (s, truth) = generate_story(&cfg(regime, order, 7)).unwrap();
                let back = parse_scenario(&serde_json::to_string(&s).unwrap(), 1).unwrap();
                assert_eq!(back, s);
                assert_eq!(s.question.gold, truth.gold);
                assert_eq!(s.events.len(), 10);
            }
        }
    }

    #[test]
    fn false_belief_hides_a_move() {
        for seed in 0..20 {
            let (s, _) = generate_story(&cfg(Regime::FalseBelief, 1, seed)).unwrap();
            assert!(unwitnessed_moves(&s, &"Sally".into()) >= 1);
        }
    }

    #[test]
    fn nested_paths_diverge() {
        for seed in 0..20 {
            let (s, truth) = generate_story(&cfg(Regime::Nested, 2, seed)).unwrap();
            assert!(diverges(&truth, &s.question.target_path, &"ball".into()));
        }
    }

    #[test]
    fn order_zero_gold_is_reality() {
        for seed in 0..20 {
            let (s, truth) = generate_story(&cfg(Regime::Nested, 0, seed)).unwrap();
            let gold = s
                .question
                .option(s.question.gold.as_deref().unwrap())
                .unwrap();
            let OptionClaim::At { object, container } = &gold.claim else {
                panic!("reality options are locations");
            };
            assert_eq!(truth.final_reality().objects.get(object), Some(container));
        }
    }

    #[test]
    fn honest_speakers_never_lie() {
        for seed in 0..20 {
            let c = GenConfig {
                deception_rate: 0.0,
                communication_rate: 0.8,
                ..cfg(Regime::Communication, 1, seed)
            };
            let (s, _) = generate_story(&c).unwrap();
            let mut world = s.initial_state();
            for e in &s.events {
                if let EventKind::Utter {
                    claim: Claim::At { object, container },
                    ..
                } = &e.kind
                {
                    assert_eq!(world.object_loc.get(object), Some(container));
                }
                world.apply(e).unwrap();
            }
        }
    }

    #[test]
    fn no_distractors_means_every_event_is_in_scope() {
        for seed in 0..20 {
            let c = GenConfig {
                distractor_rate: 0.0,
                ..cfg(Regime::ALL[seed as usize % 4], 1 + seed as usize % 2, seed)
            };
            let (s, _) = generate_story(&c).unwrap();
            let scope = crate::perspective::QuestionScope::of(&s.question);
            assert!(s.events.iter().all(|e| scope.touches(e)), "{}", s.id);
        }
    }
}
