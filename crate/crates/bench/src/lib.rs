//! Shared fixtures for the benchmarks.

use pitch_core::bot::{BotParams, BotTeam};
use pitch_core::{builtin, GameState, Side};

/// Medium benchmark state after `frames` frames of bot-versus-bot play.
pub fn midgame_state(frames: u32, seed: u64) -> GameState {
    let cfg = builtin("11_vs_11_medium").expect("builtin");
    let mut state = GameState::reset(&cfg, seed).expect("valid");
    let mut bots = [BotTeam::new(BotParams::new(0.6).expect("θ")), BotTeam::new(BotParams::new(0.6).expect("θ"))];
    for _ in 0..frames {
        let actions = [bots[0].act_team(&state, Side::Left), bots[1].act_team(&state, Side::Right)];
        state.tick(&actions).expect("bot actions are complete");
    }
    state
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_advances() {
        assert_eq!(midgame_state(30, 0).frame, 30);
    }
}
