//! Perspective-constrained reconstruction of story characters' minds.
//!
//! A story is a list of events over declared agents, rooms, containers and
//! objects. For a target agent the engine builds a trace of what the world
//! was, what the agent could observe, what it (and, recursively, what it
//! thinks others) believed, and what it would do. Multiple-choice questions
//! are then answered by checking every option against that trace.
//!
//! The crate also ships a seeded story generator with an independent
//! brute-force belief oracle, and the batch evaluation harness.

pub mod eval;
pub mod event;
pub mod ids;
pub mod perspective;
pub mod prover;
pub mod scenario;
pub mod synth;
pub mod trace;

pub use event::{apply_event, Claim, Event, EventKind, Goal, Scope, WorldState};
pub use ids::{AgentId, AttributeId, ContainerId, ObjectId, RoomId};
pub use perspective::{BeliefPath, BeliefState, RuleId, RuleSet};
pub use scenario::{parse_scenario, Question, Scenario};
pub use trace::{build_trace, Trace, TraceConfig};
