//! Synthetic stories with known answers, and the brute-force oracle that
//! labels them.

mod equivalence;
mod generate;
mod oracle;
mod suite;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use equivalence::{check_scenario, EquivalenceReport, Mismatch};
pub use generate::{generate_story, unwitnessed_moves};
pub use oracle::{
    all_paths, oracle_answer, oracle_beliefs, path_key, replay_path, replay_path_final,
    GroundTruth, OracleAnswer, PathTable,
};
pub use suite::{false_belief_config, nested_config, suite_config};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    FalseBelief,
    Nested,
    Communication,
    GoalAction,
}

impl Regime {
    pub const ALL: [Regime; 4] = [
        Regime::FalseBelief,
        Regime::Nested,
        Regime::Communication,
        Regime::GoalAction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Regime::FalseBelief => "false_belief",
            Regime::Nested => "nested",
            Regime::Communication => "communication",
            Regime::GoalAction => "goal_action",
        }
    }

    /// Fewest story events any question of this regime needs.
    pub fn min_events(self) -> usize {
        match self {
            Regime::FalseBelief => 2,
            Regime::Nested => 3,
            Regime::Communication | Regime::GoalAction => 4,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Regime {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Regime::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| GenError::UnknownRegime(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub n_agents: usize,
    pub n_rooms: usize,
    pub n_containers: usize,
    pub n_objects: usize,
    pub n_events: usize,
    pub belief_order: usize,
    pub communication_rate: f64,
    pub deception_rate: f64,
    pub distractor_rate: f64,
    pub regime: Regime,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self {
            n_agents: 3,
            n_rooms: 2,
            n_containers: 4,
            n_objects: 2,
            n_events: 10,
            belief_order: 1,
            communication_rate: 0.2,
            deception_rate: 0.3,
            distractor_rate: 0.2,
            regime: Regime::FalseBelief,
            seed: 0,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("{field} = {value} is outside {min}..={max}")]
    OutOfRange {
        field: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },
    #[error("{field} = {value} is not a fraction in [0, 1]")]
    BadRate { field: &'static str, value: f64 },
    #[error("belief order {order} needs at least {order} agents, got {agents}")]
    OrderExceedsAgents { order: usize, agents: usize },
    #[error("{regime} stories need at least {needed} events, got {got}")]
    TooFewEvents {
        regime: Regime,
        needed: usize,
        got: usize,
    },
    #[error("unknown regime `{0}`")]
    UnknownRegime(String),
    #[error("no decidable story after {attempts} attempts for seed {seed}")]
    Exhausted { seed: u64, attempts: u32 },
}

impl GenConfig {
    pub fn validate(&self) -> Result<(), GenError> {
        let ranges = [
            ("n_agents", self.n_agents, 2, 5),
            ("n_rooms", self.n_rooms, 1, 4),
            ("n_containers", self.n_containers, 2, 6),
            ("n_objects", self.n_objects, 1, 4),
            ("n_events", self.n_events, 1, 30),
            ("belief_order", self.belief_order, 0, 4),
        ];
        for (field, value, min, max) in ranges {
            if value < min || value > max {
                return Err(GenError::OutOfRange {
                    field,
                    value,
                    min,
                    max,
                });
            }
        }
        for (field, value) in [
            ("communication_rate", self.communication_rate),
            ("deception_rate", self.deception_rate),
            ("distractor_rate", self.distractor_rate),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(GenError::BadRate { field, value });
            }
        }
        if self.belief_order > self.n_agents {
            return Err(GenError::OrderExceedsAgents {
                order: self.belief_order,
                agents: self.n_agents,
            });
        }
        if self.n_events < self.regime.min_events() {
            return Err(GenError::TooFewEvents {
                regime: self.regime,
                needed: self.regime.min_events(),
                got: self.n_events,
            });
        }
        Ok(())
    }
}
