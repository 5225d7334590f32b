//! Tooling around the environment: replays, throughput measurement and
//! bot-versus-bot evaluation.

pub mod eval;
pub mod replay;
pub mod throughput;

pub use eval::{run_eval, Controller, EvalReport};
pub use replay::{record_episode, state_at, verify_replay, Checkpoint, Replay, ReplayHeader, Verdict};
pub use throughput::{run_benchmark, ThroughputRow, CSV_HEADER};
