//! Step-by-step reconstruction of one agent's mind over a story.

use std::fmt::Write as _;

use thiserror::Error;

use crate::event::{Event, EventKind, Goal, StateError, WorldState};
use crate::ids::AgentId;
use crate::perspective::{
    observe, update_belief, BeliefError, BeliefState, ObservationRecord, QuestionScope, RuleId,
    RuleSet, UpdateContext,
};
use crate::scenario::{PredictedAction, Scenario, Subject};

/// A goal and the step it was declared at, if it was declared at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentGoal {
    pub goal: Goal,
    pub declared_at: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub time: u32,
    /// World before this step's story event.
    pub env: WorldState,
    pub event: Event,
    pub obs: ObservationRecord,
    pub belief: BeliefState,
    pub action: PredictedAction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub target: AgentId,
    pub initial_env: WorldState,
    pub initial_belief: BeliefState,
    /// Action chosen from the initial belief, before any story event.
    pub initial_action: PredictedAction,
    pub steps: Vec<TraceStep>,
    pub final_env: WorldState,
}

impl Trace {
    /// Belief after the last step (the initial belief for an empty story).
    pub fn final_belief(&self) -> &BeliefState {
        self.steps
            .last()
            .map_or(&self.initial_belief, |s| &s.belief)
    }

    /// Belief held after step `t`; `t = 0` is the initial belief.
    pub fn belief_at(&self, t: u32) -> &BeliefState {
        match t {
            0 => &self.initial_belief,
            t => &self.steps[t as usize - 1].belief,
        }
    }

    /// Action predicted after the last step.
    pub fn final_action(&self) -> &PredictedAction {
        self.steps
            .last()
            .map_or(&self.initial_action, |s| &s.action)
    }

    /// Action predicted after step `t`; `t = 0` is the initial scene.
    pub fn action_at(&self, t: u32) -> &PredictedAction {
        match t {
            0 => &self.initial_action,
            t => &self.steps[t as usize - 1].action,
        }
    }

    /// Number of story steps.
    pub fn len(&self) -> u32 {
        self.steps.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// World state after step `t`.
    pub fn env_after(&self, t: u32) -> &WorldState {
        match self.steps.get(t as usize) {
            Some(step) => &step.env,
            None => &self.final_env,
        }
    }

    /// Beliefs from the initial scene through the final step, tagged with
    /// their step index.
    pub fn belief_history(&self) -> impl Iterator<Item = (u32, &BeliefState)> {
        std::iter::once((0, &self.initial_belief))
            .chain(self.steps.iter().map(|s| (s.time, &s.belief)))
    }

    /// One line per step:
    /// `time  env-digest  seen-steps  changed-entries  action`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# target={} steps={}", self.target, self.steps.len());
        let mut prev = &self.initial_belief;
        for step in &self.steps {
            let seen: Vec<String> = step.obs.seen.iter().map(|e| e.time.to_string()).collect();
            let mut changed = Vec::new();
            for (path, table) in &step.belief.entries {
                let before = prev.entries.get(path);
                for (o, h) in &table.objects {
                    if before.and_then(|b| b.objects.get(o)) != Some(h) {
                        changed.push(format!("{path}:{o}={}", h.value));
                    }
                }
                for ((o, a), h) in &table.attributes {
                    let key = (o.clone(), a.clone());
                    if before.and_then(|b| b.attributes.get(&key)) != Some(h) {
                        changed.push(format!("{path}:{o}.{a}={}", h.value));
                    }
                }
                for (agent, h) in &table.goals {
                    if before.and_then(|b| b.goals.get(agent)) != Some(h) {
                        changed.push(format!("{path}:goal[{agent}]={}", h.value));
                    }
                }
            }
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                step.time,
                step.env.digest(),
                if seen.is_empty() {
                    "-".into()
                } else {
                    seen.join(",")
                },
                if changed.is_empty() {
                    "-".into()
                } else {
                    changed.join(";")
                },
                step.action
            );
            prev = &step.belief;
        }
        out
    }
}

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("undeclared target agent `{0}`")]
    UnknownTarget(AgentId),
    #[error(transparent)]
    Belief(#[from] BeliefError),
    #[error("step {time}: {source}")]
    State {
        time: u32,
        #[source]
        source: StateError,
    },
}

/// The action policy: agents act on what they believe, never on the true
/// world.
pub fn decide_action(goal: Option<&AgentGoal>, belief: &BeliefState) -> PredictedAction {
    let Some(goal) = goal else {
        return PredictedAction::None;
    };
    let own = belief.first_order();
    match &goal.goal {
        Goal::Fetch { object } | Goal::Use { object } => match own.location(object) {
            Some(c) => PredictedAction::Exploit {
                object: object.clone(),
                container: c.clone(),
            },
            None => PredictedAction::None,
        },
        Goal::Locate { object } => match own.location(object) {
            Some(c) => PredictedAction::Search {
                container: c.clone(),
            },
            None => PredictedAction::None,
        },
        Goal::Task { label, requires } => {
            let Some(req) = requires else {
                return PredictedAction::Proceed {
                    task: label.clone(),
                };
            };
            match own.attribute(&req.object, &req.attribute) {
                Some(v) if *v == req.value => PredictedAction::Proceed {
                    task: label.clone(),
                },
                Some(_) => PredictedAction::Avoid {
                    object: req.object.clone(),
                },
                None => match own.location(&req.object) {
                    Some(c) => PredictedAction::Search {
                        container: c.clone(),
                    },
                    None => PredictedAction::None,
                },
            }
        }
    }
}

/// Goal the question implies when the story declares none: asking what an
/// agent will do about an object means they are looking for it.
pub fn implied_goal(scenario: &Scenario, agent: &AgentId) -> Option<Goal> {
    match &scenario.question.subject {
        Subject::Action {
            agent: who,
            object: Some(object),
        } if who == agent => Some(Goal::Locate {
            object: object.clone(),
        }),
        Subject::Location { object }
            if scenario.question.kind_hint == Some(crate::scenario::QuestionKind::Search)
                && scenario.question.target_path.first() == Some(agent) =>
        {
            Some(Goal::Locate {
                object: object.clone(),
            })
        }
        _ => None,
    }
}

/// Explicit declaration (up to `time`) beats the question-implied goal.
pub fn resolve_goal(scenario: &Scenario, agent: &AgentId, time: u32) -> Option<AgentGoal> {
    let declared = scenario
        .events
        .iter()
        .take_while(|e| e.time <= time)
        .filter_map(|e| match &e.kind {
            EventKind::GoalDecl { agent: who, goal } if who == agent => Some(AgentGoal {
                goal: goal.clone(),
                declared_at: Some(e.time),
            }),
            _ => None,
        })
        .last();
    declared.or_else(|| {
        implied_goal(scenario, agent).map(|goal| AgentGoal {
            goal,
            declared_at: None,
        })
    })
}

/// Configuration for [`build_trace`].
#[derive(Debug, Clone)]
pub struct TraceConfig {
    pub rules: RuleSet,
    pub max_order: usize,
    pub required_order: usize,
    pub scope: Option<QuestionScope>,
}

impl TraceConfig {
    pub fn new(max_order: usize) -> Self {
        Self {
            rules: RuleSet::all(),
            max_order,
            required_order: 0,
            scope: None,
        }
    }
}

/// Runs observe, update, decide for `target` at every step, then advances
/// the world with the story event. Predicted actions never touch the world.
pub fn build_trace(
    scenario: &Scenario,
    target: &AgentId,
    config: &TraceConfig,
) -> Result<Trace, TraceError> {
    if !scenario.header.has_agent(target) {
        return Err(TraceError::UnknownTarget(target.clone()));
    }
    if config.max_order < config.required_order {
        return Err(BeliefError::OrderTooLow {
            max_order: config.max_order,
            required: config.required_order,
        }
        .into());
    }
    let initial_env = scenario.initial_state();
    let initial_belief = BeliefState::initial(
        target,
        &scenario.header.agents,
        &initial_env,
        &config.rules,
        config.max_order,
    );
    let ctx = UpdateContext {
        rules: config.rules,
        max_order: config.max_order.max(1),
        required_order: config.required_order,
        scope: config.scope.as_ref(),
    };

    let initial_action = if config.rules.is_enabled(RuleId::R5) {
        decide_action(resolve_goal(scenario, target, 0).as_ref(), &initial_belief)
    } else {
        PredictedAction::None
    };
    let mut env = initial_env.clone();
    let mut belief = initial_belief.clone();
    let mut steps = Vec::with_capacity(scenario.events.len());
    for event in &scenario.events {
        let step_events = std::slice::from_ref(event);
        let obs = observe(&env, step_events, target);
        belief = update_belief(&belief, &obs, step_events, &env, &ctx)?;
        let action = if config.rules.is_enabled(RuleId::R5) {
            decide_action(resolve_goal(scenario, target, event.time).as_ref(), &belief)
        } else {
            PredictedAction::None
        };
        let next = crate::event::apply_event(&env, event).map_err(|source| TraceError::State {
            time: event.time,
            source,
        })?;
        steps.push(TraceStep {
            time: event.time,
            env,
            event: event.clone(),
            obs,
            belief: belief.clone(),
            action,
        });
        env = next;
    }
    Ok(Trace {
        target: target.clone(),
        initial_env,
        initial_belief,
        initial_action,
        steps,
        final_env: env,
    })
}
