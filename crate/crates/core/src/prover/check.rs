use crate::event::{Claim, Goal, WorldState};
use crate::ids::AgentId;
use crate::perspective::{BeliefPath, PartialWorld, RuleId};
use crate::scenario::{AnswerOption, Header, IntentMode, OptionClaim, PredictedAction, Scenario};
use crate::trace::{resolve_goal, Trace};

use super::infer::{classify_social_intent, infer_goal};
use super::query::{FactKey, QueryKind};
use super::{Justification, ProofStep, ReasonCode, Status, Verdict};

/// Checks one option against the trace. Contradicted verdicts carry the
/// step that establishes the contradiction as their first evidence entry.
pub fn check_option(
    option: &AnswerOption,
    trace: &Trace,
    query: &QueryKind,
    scenario: &Scenario,
) -> Verdict {
    if let Some(missing) = undeclared(&option.claim, &scenario.header) {
        let mut v = Verdict::new(
            &option.label,
            Status::Contradicted(ReasonCode::BeliefMismatch),
        );
        v.note = Some(format!("undeclared {missing}"));
        return v;
    }
    match query {
        QueryKind::Reality(key) => check_reality(option, trace, key),
        QueryKind::Memory { agent, key } => check_memory(option, trace, agent, key),
        QueryKind::Belief { path, key } => check_belief(option, trace, path, key),
        QueryKind::Action { agent, object } => {
            check_action(option, trace, scenario, agent, object.as_ref())
        }
        QueryKind::Goal { agent } => check_goal(option, trace, scenario, agent),
        QueryKind::SocialIntent {
            speaker,
            listener,
            mode,
        } => check_intent(option, trace, speaker, listener, *mode),
        QueryKind::BeliefOfGoal { path } => check_belief_of_goal(option, trace, path),
    }
}

fn undeclared(claim: &OptionClaim, header: &Header) -> Option<String> {
    let mut missing = Vec::new();
    let goal_object = |goal: &Goal, missing: &mut Vec<String>| {
        if let Some(o) = goal.object() {
            if !header.has_object(o) {
                missing.push(format!("object `{o}`"));
            }
        }
    };
    match claim {
        OptionClaim::At { object, container } => {
            if !header.has_object(object) {
                missing.push(format!("object `{object}`"));
            }
            if !header.has_container(container) {
                missing.push(format!("container `{container}`"));
            }
        }
        OptionClaim::Attr {
            object, attribute, ..
        } => {
            if !header.has_object(object) {
                missing.push(format!("object `{object}`"));
            }
            if !header.has_attribute(attribute) {
                missing.push(format!("attribute `{attribute}`"));
            }
        }
        OptionClaim::GoalOf { agent, goal } => {
            if !header.has_agent(agent) {
                missing.push(format!("agent `{agent}`"));
            }
            goal_object(goal, &mut missing);
        }
        OptionClaim::Action { action } => {
            if let Some(c) = action.container() {
                if !header.has_container(c) {
                    missing.push(format!("container `{c}`"));
                }
            }
            match action {
                PredictedAction::Exploit { object, .. } | PredictedAction::Avoid { object }
                    if !header.has_object(object) =>
                {
                    missing.push(format!("object `{object}`"));
                }
                _ => {}
            }
        }
        OptionClaim::Intent { .. } => {}
    }
    missing.into_iter().next()
}

/// The fact an at/attr option asserts, if its key matches the query key.
enum Fact<'a> {
    Location(&'a crate::ids::ContainerId),
    Attribute(&'a str),
}

fn fact_for<'a>(claim: &'a OptionClaim, key: &FactKey) -> Option<Fact<'a>> {
    match (claim, key) {
        (OptionClaim::At { object, container }, FactKey::Location(o)) if object == o => {
            Some(Fact::Location(container))
        }
        (
            OptionClaim::Attr {
                object,
                attribute,
                value,
            },
            FactKey::Attribute(o, a),
        ) if object == o && attribute == a => Some(Fact::Attribute(value)),
        _ => None,
    }
}

fn world_holds(world: &WorldState, key: &FactKey, fact: &Fact<'_>) -> bool {
    match (key, fact) {
        (FactKey::Location(o), Fact::Location(c)) => world.object_loc.get(o) == Some(*c),
        (FactKey::Attribute(o, a), Fact::Attribute(v)) => {
            world
                .attributes
                .get(&(o.clone(), a.clone()))
                .map(String::as_str)
                == Some(*v)
        }
        _ => false,
    }
}

/// `Some(true)` when the table agrees, `Some(false)` when it holds a
/// different value and `None` when the value is unknown. Also returns the
/// provenance of the held value.
fn table_holds(
    table: &PartialWorld,
    key: &FactKey,
    fact: &Fact<'_>,
) -> Option<(bool, u32, RuleId)> {
    match (key, fact) {
        (FactKey::Location(o), Fact::Location(c)) => table
            .objects
            .get(o)
            .map(|h| (h.value == **c, h.since, h.source)),
        (FactKey::Attribute(o, a), Fact::Attribute(v)) => table
            .attributes
            .get(&(o.clone(), a.clone()))
            .map(|h| (h.value == *v, h.since, h.source)),
        _ => None,
    }
}

fn shape_mismatch(label: &str) -> Verdict {
    let mut v = Verdict::new(label, Status::Undetermined);
    v.note = Some("option does not address the queried fact".into());
    v
}

/// Last step at which the keyed fact changed in the world; 0 if never.
fn last_change(trace: &Trace, key: &FactKey) -> u32 {
    trace
        .steps
        .iter()
        .filter(|s| match (key, &s.event.kind) {
            (FactKey::Location(o), crate::event::EventKind::Move { object, .. }) => object == o,
            (
                FactKey::Attribute(o, a),
                crate::event::EventKind::StateSet {
                    object, attribute, ..
                },
            ) => object == o && attribute == a,
            _ => false,
        })
        .map(|s| s.time)
        .next_back()
        .unwrap_or(0)
}

fn check_reality(option: &AnswerOption, trace: &Trace, key: &FactKey) -> Verdict {
    let Some(fact) = fact_for(&option.claim, key) else {
        return shape_mismatch(&option.label);
    };
    let holds = world_holds(&trace.final_env, key, &fact);
    let mut v = Verdict::new(
        &option.label,
        if holds {
            Status::Consistent
        } else {
            Status::Contradicted(ReasonCode::RealityMismatch)
        },
    );
    v.support = (0..=trace.len())
        .filter(|&t| world_holds(trace.env_after(t), key, &fact))
        .count() as u32;
    v.evidence.push(ProofStep {
        step: last_change(trace, key),
        rule: Justification::Transition,
        conclusion: format!(
            "{} {} in the final world",
            option.claim,
            if holds { "holds" } else { "fails" }
        ),
    });
    v
}

fn belief_support(trace: &Trace, path: &BeliefPath, key: &FactKey, fact: &Fact<'_>) -> u32 {
    trace
        .belief_history()
        .filter(|(_, b)| {
            b.get(path)
                .and_then(|t| table_holds(t, key, fact))
                .is_some_and(|(ok, _, _)| ok)
        })
        .count() as u32
}

fn check_memory(option: &AnswerOption, trace: &Trace, agent: &AgentId, key: &FactKey) -> Verdict {
    let Some(fact) = fact_for(&option.claim, key) else {
        return shape_mismatch(&option.label);
    };
    let path = BeliefPath::single(agent.clone());
    let first = trace
        .belief_history()
        .find_map(|(_, b)| b.get(&path).and_then(|t| table_holds(t, key, &fact)));
    let mut v = match first {
        None => Verdict::new(&option.label, Status::Undetermined),
        Some((ok, since, source)) => {
            let mut v = Verdict::new(
                &option.label,
                if ok {
                    Status::Consistent
                } else {
                    Status::Contradicted(ReasonCode::BeliefMismatch)
                },
            );
            v.evidence.push(ProofStep {
                step: since,
                rule: Justification::Rule(source),
                conclusion: format!(
                    "{agent} first registered {key} {}",
                    if ok { "as claimed" } else { "differently" }
                ),
            });
            v
        }
    };
    v.support = belief_support(trace, &path, key, &fact);
    v
}

fn check_belief(option: &AnswerOption, trace: &Trace, path: &BeliefPath, key: &FactKey) -> Verdict {
    let Some(fact) = fact_for(&option.claim, key) else {
        return shape_mismatch(&option.label);
    };
    let held = trace
        .final_belief()
        .get(path)
        .and_then(|t| table_holds(t, key, &fact));
    let mut v = match held {
        None => {
            let mut v = Verdict::new(&option.label, Status::Undetermined);
            v.note = Some(format!("{path} holds no value for {key}"));
            v
        }
        Some((true, since, source)) => {
            let mut v = Verdict::new(&option.label, Status::Consistent);
            v.evidence.push(ProofStep {
                step: since,
                rule: Justification::Rule(source),
                conclusion: format!("{path} came to hold {}", option.claim),
            });
            v.evidence.push(ProofStep {
                step: since,
                rule: Justification::Rule(RuleId::R2),
                conclusion: format!("no later change to {key} was visible to {path}"),
            });
            v
        }
        Some((false, since, source)) => {
            let reason = mismatch_reason(trace, path, key, &fact);
            let mut v = Verdict::new(&option.label, Status::Contradicted(reason));
            v.evidence.push(ProofStep {
                step: since,
                rule: Justification::Rule(source),
                conclusion: format!("{path} holds a different value for {key} from here on"),
            });
            v
        }
    };
    v.support = belief_support(trace, path, key, &fact);
    v
}

fn mismatch_reason(trace: &Trace, path: &BeliefPath, key: &FactKey, fact: &Fact<'_>) -> ReasonCode {
    let unheard_claim = trace.final_env.heard_log.iter().any(|h| {
        let states_fact = match (&h.claim, key, fact) {
            (Claim::At { object, container }, FactKey::Location(o), Fact::Location(c)) => {
                object == o && container == *c
            }
            (
                Claim::Attr {
                    object,
                    attribute,
                    value,
                },
                FactKey::Attribute(o, a),
                Fact::Attribute(v),
            ) => object == o && attribute == a && value == v,
            _ => false,
        };
        states_fact
            && path
                .agents()
                .iter()
                .any(|a| *a != h.speaker && !h.listeners.contains(a))
    });
    if unheard_claim {
        ReasonCode::CommunicationAccess
    } else if world_holds(&trace.final_env, key, fact) {
        ReasonCode::UnobservedKnowledge
    } else {
        ReasonCode::BeliefMismatch
    }
}

fn action_matches(option: &OptionClaim, predicted: &PredictedAction) -> bool {
    match option {
        OptionClaim::Action {
            action: PredictedAction::Search { container },
        }
        | OptionClaim::At { container, .. } => predicted.container() == Some(container),
        OptionClaim::Action { action } => action == predicted,
        _ => false,
    }
}

fn option_container(option: &OptionClaim) -> Option<&crate::ids::ContainerId> {
    match option {
        OptionClaim::At { container, .. } => Some(container),
        OptionClaim::Action { action } => action.container(),
        _ => None,
    }
}

fn check_action(
    option: &AnswerOption,
    trace: &Trace,
    scenario: &Scenario,
    agent: &AgentId,
    object: Option<&crate::ids::ObjectId>,
) -> Verdict {
    if !matches!(
        option.claim,
        OptionClaim::Action { .. } | OptionClaim::At { .. }
    ) {
        return shape_mismatch(&option.label);
    }
    let predicted = trace.final_action();
    let support = (0..=trace.len())
        .filter(|&t| action_matches(&option.claim, trace.action_at(t)))
        .count() as u32;
    if *predicted == PredictedAction::None {
        let mut v = Verdict::new(&option.label, Status::Undetermined);
        v.support = support;
        v.note = Some(format!("no action predicted for {agent}"));
        return v;
    }
    let goal = resolve_goal(scenario, agent, trace.len());
    let object = object
        .cloned()
        .or_else(|| match predicted {
            PredictedAction::Exploit { object, .. } | PredictedAction::Avoid { object } => {
                Some(object.clone())
            }
            _ => None,
        })
        .or_else(|| goal.as_ref().and_then(|g| g.goal.object().cloned()));
    let provenance = object
        .as_ref()
        .and_then(|o| trace.final_belief().first_order().objects.get(o))
        .map_or(0, |h| h.since);

    let ok = action_matches(&option.claim, predicted);
    let status = if ok {
        Status::Consistent
    } else {
        let knows_reality = match (object.as_ref(), option_container(&option.claim)) {
            (Some(o), Some(c)) => trace.final_env.object_loc.get(o) == Some(c),
            _ => false,
        };
        Status::Contradicted(if knows_reality {
            ReasonCode::UnobservedKnowledge
        } else {
            ReasonCode::ActionRuleViolation
        })
    };
    let mut v = Verdict::new(&option.label, status);
    v.support = support;
    v.evidence.push(ProofStep {
        step: provenance,
        rule: Justification::Rule(RuleId::R5),
        conclusion: format!(
            "{agent} acts on its own belief: {predicted}{}",
            if ok { "" } else { ", not the option" }
        ),
    });
    v
}

fn check_goal(
    option: &AnswerOption,
    trace: &Trace,
    scenario: &Scenario,
    agent: &AgentId,
) -> Verdict {
    let OptionClaim::GoalOf { agent: who, goal } = &option.claim else {
        return shape_mismatch(&option.label);
    };
    if who != agent {
        let mut v = Verdict::new(
            &option.label,
            Status::Contradicted(ReasonCode::GoalMismatch),
        );
        v.note = Some(format!("option is about {who}, not {agent}"));
        return v;
    }
    let candidates: Vec<Goal> = scenario
        .question
        .options
        .iter()
        .filter_map(|o| match &o.claim {
            OptionClaim::GoalOf { agent: a, goal } if a == agent => Some(goal.clone()),
            _ => None,
        })
        .collect();

    let declared = resolve_goal(scenario, agent, trace.len()).filter(|g| g.declared_at.is_some());
    if let Some(decl) = declared {
        let step = decl.declared_at.unwrap_or(0);
        let ok = decl.goal == *goal;
        let mut v = Verdict::new(
            &option.label,
            if ok {
                Status::Consistent
            } else {
                Status::Contradicted(ReasonCode::GoalMismatch)
            },
        );
        v.support = u32::from(ok);
        v.evidence.push(ProofStep {
            step,
            rule: Justification::Rule(RuleId::R1),
            conclusion: format!("{agent} declared goal {}", decl.goal),
        });
        return v;
    }

    let inference = infer_goal(trace, &candidates);
    let survives = inference.survivors.contains(goal);
    let mut v = Verdict::new(
        &option.label,
        if survives {
            Status::Consistent
        } else {
            Status::Contradicted(ReasonCode::GoalMismatch)
        },
    );
    v.support = u32::from(survives);
    if let Some((step, why)) = inference.evidence.get(goal) {
        v.evidence.push(ProofStep {
            step: *step,
            rule: Justification::Rule(RuleId::R5),
            conclusion: why.clone(),
        });
    }
    v
}

fn check_intent(
    option: &AnswerOption,
    trace: &Trace,
    speaker: &AgentId,
    listener: &AgentId,
    mode: IntentMode,
) -> Verdict {
    let OptionClaim::Intent { intent } = &option.claim else {
        return shape_mismatch(&option.label);
    };
    let reading = match classify_social_intent(trace, speaker, listener) {
        Ok(r) => r,
        Err(err) => {
            let mut v = Verdict::new(&option.label, Status::Undetermined);
            v.note = Some(err.to_string());
            return v;
        }
    };
    let Some(class) = reading.class else {
        let mut v = Verdict::new(&option.label, Status::Undetermined);
        v.note = Some(format!("{speaker} never saw where the object really was"));
        return v;
    };
    let ok = match mode {
        IntentMode::MostLikely => *intent == class,
        IntentMode::LeastLikely => *intent != class,
    };
    let mut v = Verdict::new(
        &option.label,
        if ok {
            Status::Consistent
        } else {
            Status::Contradicted(ReasonCode::GoalMismatch)
        },
    );
    v.evidence.push(ProofStep {
        step: reading.step,
        rule: Justification::Rule(RuleId::R4),
        conclusion: format!("{speaker} told {listener} something {class}"),
    });
    v
}

fn check_belief_of_goal(option: &AnswerOption, trace: &Trace, path: &BeliefPath) -> Verdict {
    let OptionClaim::GoalOf { agent, goal } = &option.claim else {
        return shape_mismatch(&option.label);
    };
    let Some(prefix) = path.parent() else {
        return shape_mismatch(&option.label);
    };
    if agent != path.last() {
        let mut v = Verdict::new(
            &option.label,
            Status::Contradicted(ReasonCode::GoalMismatch),
        );
        v.note = Some(format!("option is about {agent}, not {}", path.last()));
        return v;
    }
    let support = trace
        .belief_history()
        .filter(|(_, b)| b.get(&prefix).and_then(|t| t.goal(agent)) == Some(goal))
        .count() as u32;
    let held = trace
        .final_belief()
        .get(&prefix)
        .and_then(|t| t.goals.get(agent));
    let mut v = match held {
        None => Verdict::new(&option.label, Status::Undetermined),
        Some(h) => {
            let ok = h.value == *goal;
            let mut v = Verdict::new(
                &option.label,
                if ok {
                    Status::Consistent
                } else {
                    Status::Contradicted(ReasonCode::GoalMismatch)
                },
            );
            v.evidence.push(ProofStep {
                step: h.since,
                rule: Justification::Rule(h.source),
                conclusion: format!("{prefix} attributes goal {} to {agent}", h.value),
            });
            v
        }
    };
    v.support = support;
    v
}
