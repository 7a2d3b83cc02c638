use std::collections::BTreeMap;

use thiserror::Error;

use crate::event::{ActionKind, Claim, EventKind, Goal};
use crate::ids::AgentId;
use crate::scenario::SocialIntent;
use crate::trace::Trace;

/// Goals that survive the agent's observed behaviour, plus for every
/// candidate the step and reason that pinned or eliminated it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GoalInference {
    pub survivors: Vec<Goal>,
    pub evidence: BTreeMap<Goal, (u32, String)>,
}

/// Eliminates candidate goals the target's own acts rule out.
///
/// The last exploit pins the goal to goals about the exploited object. A
/// search that the agent abandons for a different container eliminates
/// every object goal the agent believed to be in the searched container.
/// Task goals are never eliminated by searching.
pub fn infer_goal(trace: &Trace, candidates: &[Goal]) -> GoalInference {
    let mut out = GoalInference::default();
    let acts: Vec<(u32, &ActionKind)> = trace
        .steps
        .iter()
        .filter_map(|s| match &s.event.kind {
            EventKind::Act { agent, action } if *agent == trace.target => Some((s.time, action)),
            _ => None,
        })
        .collect();

    let last_exploit = acts.iter().rev().find_map(|(t, a)| match a {
        ActionKind::Exploit { object } => Some((*t, object)),
        _ => None,
    });
    if let Some((t, object)) = last_exploit {
        for goal in candidates {
            if goal.object() == Some(object) {
                out.survivors.push(goal.clone());
                out.evidence.insert(
                    goal.clone(),
                    (t, format!("{} exploited {object}", trace.target)),
                );
            } else {
                out.evidence.entry(goal.clone()).or_insert((
                    t,
                    format!(
                        "{} exploited {object}, which {goal} is not about",
                        trace.target
                    ),
                ));
            }
        }
        return out;
    }

    let mut eliminated: BTreeMap<Goal, (u32, String)> = BTreeMap::new();
    for (i, (t, action)) in acts.iter().enumerate() {
        let ActionKind::Search { container } = action else {
            continue;
        };
        let abandoned = acts[i + 1..].iter().any(|(_, later)| {
            matches!(later, ActionKind::Search { container: other } if other != container)
        });
        if !abandoned {
            continue;
        }
        let belief = trace.belief_at(*t).first_order();
        for goal in candidates {
            let Some(object) = goal.object() else {
                continue;
            };
            if belief.location(object) == Some(container) {
                eliminated.entry(goal.clone()).or_insert((
                    *t,
                    format!(
                        "{} searched {container}, where it believed {object} was, and moved on",
                        trace.target
                    ),
                ));
            }
        }
    }
    for goal in candidates {
        if !eliminated.contains_key(goal) {
            out.survivors.push(goal.clone());
        }
    }
    out.evidence = eliminated;
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntentReading {
    /// `None` when the speaker had no observation of the true location.
    pub class: Option<SocialIntent>,
    /// Step of the utterance the reading rests on.
    pub step: u32,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SocialError {
    #[error("trace belongs to {held}, not the speaker {speaker}")]
    WrongHolder { held: AgentId, speaker: AgentId },
    #[error("{listener} heard no location claim from {speaker}")]
    NoUtterance { speaker: AgentId, listener: AgentId },
}

/// Reads the speaker's intention from their last location claim the
/// listener heard. Helping when the claim matches where the object really
/// was and the speaker knew it; hindering when it points elsewhere.
pub fn classify_social_intent(
    trace: &Trace,
    speaker: &AgentId,
    listener: &AgentId,
) -> Result<IntentReading, SocialError> {
    if trace.target != *speaker {
        return Err(SocialError::WrongHolder {
            held: trace.target.clone(),
            speaker: speaker.clone(),
        });
    }
    let heard = trace
        .final_env
        .heard_log
        .iter()
        .rev()
        .find_map(|h| match &h.claim {
            Claim::At { object, container }
                if h.speaker == *speaker && h.listeners.contains(listener) =>
            {
                Some((h.time, object, container))
            }
            _ => None,
        })
        .ok_or_else(|| SocialError::NoUtterance {
            speaker: speaker.clone(),
            listener: listener.clone(),
        })?;
    let (t, object, claimed) = heard;
    let truth = trace
        .steps
        .iter()
        .find(|s| s.time == t)
        .map_or(&trace.final_env, |s| &s.env)
        .object_loc
        .get(object);
    let believed = trace.belief_at(t).first_order().location(object);
    let class = match (truth, believed) {
        (Some(truth), Some(believed)) if truth == believed => Some(if claimed == truth {
            SocialIntent::Helping
        } else {
            SocialIntent::Hindering
        }),
        _ => None,
    };
    Ok(IntentReading { class, step: t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::parse_scenario;
    use crate::trace::{build_trace, TraceConfig};

    const KITCHEN: &str = r#"{"id":"g","header":{"agents":["Mia","Leo"],"rooms":["kitchen"],"containers":[{"id":"fridge","room":"kitchen"},{"id":"cabinet","room":"kitchen"}],"objects":[{"id":"apple","container":"fridge"},{"id":"cup","container":"cabinet"}],"agent_rooms":{"Mia":"kitchen","Leo":"kitchen"}},"events":EVENTS,"question":{"kind":"goal","text":"What is Mia looking for?","target_path":["Mia"],"subject":{"goal":{"agent":"Mia"}},"options":[{"label":"A","claim":{"type":"goal_of","agent":"Mia","goal":{"goal":"fetch","object":"apple"}}},{"label":"B","claim":{"type":"goal_of","agent":"Mia","goal":{"goal":"fetch","object":"cup"}}}]},"meta":{"benchmark":"MMToM"}}"#;

    fn trace_of(events: &str, target: &str) -> Trace {
        let s = parse_scenario(&KITCHEN.replace("EVENTS", events), 1).unwrap();
        build_trace(&s, &target.into(), &TraceConfig::new(1)).unwrap()
    }

    fn fetch(o: &str) -> Goal {
        Goal::Fetch { object: o.into() }
    }

    #[test]
    fn exploit_pins_goal() {
        let tr = trace_of(
            r#"[{"kind":"act","agent":"Mia","action":{"action":"exploit","object":"apple"}}]"#,
            "Mia",
        );
        let out = infer_goal(&tr, &[fetch("apple"), fetch("cup")]);
        assert_eq!(out.survivors, vec![fetch("apple")]);
    }

    #[test]
    fn abandoned_search_eliminates() {
        let tr = trace_of(
            r#"[{"kind":"act","agent":"Mia","action":{"action":"search","container":"fridge"}},{"kind":"act","agent":"Mia","action":{"action":"search","container":"cabinet"}}]"#,
            "Mia",
        );
        let out = infer_goal(&tr, &[fetch("apple"), fetch("cup")]);
        assert_eq!(out.survivors, vec![fetch("cup")]);
        assert_eq!(out.evidence[&fetch("apple")].0, 1);
    }

    #[test]
    fn no_acts_leaves_candidates() {
        let tr = trace_of("[]", "Mia");
        let out = infer_goal(&tr, &[fetch("apple"), fetch("cup")]);
        assert_eq!(out.survivors.len(), 2);
    }

    #[test]
    fn task_goals_survive_searches() {
        let task = Goal::Task {
            label: "tidy".into(),
            requires: None,
        };
        let tr = trace_of(
            r#"[{"kind":"act","agent":"Mia","action":{"action":"search","container":"fridge"}},{"kind":"act","agent":"Mia","action":{"action":"search","container":"cabinet"}}]"#,
            "Mia",
        );
        let out = infer_goal(&tr, &[task.clone(), fetch("apple")]);
        assert_eq!(out.survivors, vec![task]);
    }

    fn utter(to: &str) -> String {
        format!(
            r#"[{{"kind":"utter","speaker":"Mia","scope":"public","claim":{{"type":"at","object":"apple","container":"{to}"}}}}]"#
        )
    }

    #[test]
    fn truthful_claim_is_helping() {
        let tr = trace_of(&utter("fridge"), "Mia");
        let r = classify_social_intent(&tr, &"Mia".into(), &"Leo".into()).unwrap();
        assert_eq!(r.class, Some(SocialIntent::Helping));
        assert_eq!(r.step, 1);
    }

    #[test]
    fn misdirection_is_hindering() {
        let tr = trace_of(&utter("cabinet"), "Mia");
        let r = classify_social_intent(&tr, &"Mia".into(), &"Leo".into()).unwrap();
        assert_eq!(r.class, Some(SocialIntent::Hindering));
    }

    #[test]
    fn unseen_truth_is_undetermined() {
        let events = r#"[{"kind":"leave","agent":"Mia","room":"kitchen"},{"kind":"move","mover":"Leo","object":"apple","to":"cabinet"},{"kind":"enter","agent":"Mia","room":"kitchen"},{"kind":"utter","speaker":"Mia","scope":"public","claim":{"type":"at","object":"apple","container":"fridge"}}]"#;
        let tr = trace_of(events, "Mia");
        let r = classify_social_intent(&tr, &"Mia".into(), &"Leo".into()).unwrap();
        assert_eq!(r.class, None);
    }

    #[test]
    fn silence_is_a_precondition_error() {
        let tr = trace_of("[]", "Mia");
        assert!(matches!(
            classify_social_intent(&tr, &"Mia".into(), &"Leo".into()),
            Err(SocialError::NoUtterance { .. })
        ));
    }
}
