//! Scenario configuration: the documented text format, the built-in
//! benchmark and academy scenarios, and episode termination.

mod builtin;
mod config;
mod parse;

pub use builtin::{builtin, builtin_names, BENCHMARK_NAMES};
pub use config::ScenarioConfig;
pub use parse::parse_scenario;

use crate::engine::{EndReason, Event, GameState};
use crate::geometry::Side;

/// Why the episode is over after this step, if it is.
pub fn is_episode_done(state: &GameState, config: &ScenarioConfig, events: &[Event]) -> Option<EndReason> {
    if config.end_on_score && events.iter().any(|e| e.scoring_side().is_some()) {
        return Some(EndReason::Score);
    }
    if config.end_on_possession_loss {
        let uncontrolled = match (config.controlled_left > 0, config.controlled_right > 0) {
            (true, false) => Some(Side::Right),
            (false, true) => Some(Side::Left),
            _ => None,
        };
        if let Some(u) = uncontrolled {
            if events.contains(&Event::PossessionChange(u)) {
                return Some(EndReason::PossessionLoss);
            }
        }
    }
    if config.end_on_out_of_play && events.iter().any(Event::stops_play) {
        return Some(EndReason::OutOfPlay);
    }
    if state.frame >= config.duration_frames {
        return Some(EndReason::Time);
    }
    None
}
