//! Football reinforcement-learning environment.
//!
//! A 2.5D fixed-timestep football engine with rule-based bots of tunable
//! difficulty, three observation encodings (115 floats, super mini map
//! planes, RGB pixels), scoring and checkpoint rewards, built-in academy and
//! benchmark scenarios, a step/reset environment with multi-agent control
//! and opponent replacement, deterministic replays and a throughput
//! harness.

pub mod action;
pub mod bot;
pub mod engine;
pub mod env;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod observation;
pub mod rewards;
pub mod rng;
pub mod scenario;

pub use action::{Action, Direction, KickKind, StickyFlags, ACTION_COUNT};
pub use engine::{tick, EndReason, Event, FrameActions, GameMode, GameState, PlayerRef, PlayerState, Role};
pub use error::{ConfigError, ContractError, EnvError, ReplayError};
pub use geometry::{Side, Vec2};
pub use rng::DeterministicRng;
pub use scenario::{builtin, is_episode_done, parse_scenario, ScenarioConfig};
