use std::fmt::Write;

use crate::engine::{GameMode, Role};
use crate::error::ConfigError;
use crate::geometry::Vec2;

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub name: String,
    pub duration_frames: u32,
    /// Built-in bot difficulty θ in `[0, 1]`.
    pub difficulty: f64,
    pub stochastic: bool,
    pub offsides_enabled: bool,
    pub left_placements: Vec<(Role, Vec2)>,
    pub right_placements: Vec<(Role, Vec2)>,
    pub ball_start: Vec2,
    pub start_mode: GameMode,
    pub controlled_left: usize,
    pub controlled_right: usize,
    pub teammate_bot_enabled: bool,
    pub end_on_score: bool,
    pub end_on_possession_loss: bool,
    pub end_on_out_of_play: bool,
    /// Opponents never move; they can still take a ball that comes close.
    pub lazy_opponents: bool,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            name: "custom".to_string(),
            duration_frames: 400,
            difficulty: 0.6,
            stochastic: true,
            offsides_enabled: true,
            left_placements: Vec::new(),
            right_placements: Vec::new(),
            ball_start: Vec2::ZERO,
            start_mode: GameMode::Normal,
            controlled_left: 1,
            controlled_right: 0,
            teammate_bot_enabled: true,
            end_on_score: true,
            end_on_possession_loss: true,
            end_on_out_of_play: true,
            lazy_opponents: false,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let invalid = |entry: String, message: String| Err(ConfigError::Invalid { entry, message });
        if !(0.0..=1.0).contains(&self.difficulty) {
            return invalid("difficulty".into(), format!("{} outside [0, 1]", self.difficulty));
        }
        if self.duration_frames == 0 {
            return invalid("duration_frames".into(), "must be positive".into());
        }
        if !self.ball_start.is_on_pitch() {
            return invalid("ball".into(), format!("({}, {}) outside the pitch", self.ball_start.x, self.ball_start.y));
        }
        for (key, team, controlled) in [
            ("left_player", &self.left_placements, self.controlled_left),
            ("right_player", &self.right_placements, self.controlled_right),
        ] {
            if team.is_empty() || team.len() > 11 {
                return invalid(key.into(), format!("{} players; expected 1 to 11", team.len()));
            }
            for (i, (_, p)) in team.iter().enumerate() {
                if !p.is_on_pitch() {
                    return invalid(format!("{key} #{i}"), format!("({}, {}) outside the pitch", p.x, p.y));
                }
            }
            let keepers = team.iter().filter(|(r, _)| *r == Role::Keeper).count();
            if team.len() == 11 && keepers != 1 {
                return invalid(key.into(), format!("a full team needs exactly one keeper, found {keepers}"));
            }
            if controlled > team.len() {
                return invalid(
                    format!("controlled_{}", &key[..key.find('_').unwrap_or(0)]),
                    format!("{controlled} controlled players but only {} on the team", team.len()),
                );
            }
        }
        Ok(())
    }

    /// Text form accepted by [`crate::scenario::parse_scenario`].
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let b = |v: bool| if v { "true" } else { "false" };
        let _ = writeln!(s, "name = {}", self.name);
        let _ = writeln!(s, "duration_frames = {}", self.duration_frames);
        let _ = writeln!(s, "difficulty = {}", self.difficulty);
        let _ = writeln!(s, "stochastic = {}", b(self.stochastic));
        let _ = writeln!(s, "offsides = {}", b(self.offsides_enabled));
        let _ = writeln!(s, "end_on_score = {}", b(self.end_on_score));
        let _ = writeln!(s, "end_on_possession_loss = {}", b(self.end_on_possession_loss));
        let _ = writeln!(s, "end_on_out_of_play = {}", b(self.end_on_out_of_play));
        let _ = writeln!(s, "ball = {} {}", self.ball_start.x, self.ball_start.y);
        let _ = writeln!(s, "start_mode = {}", self.start_mode.name());
        let _ = writeln!(s, "controlled_left = {}", self.controlled_left);
        let _ = writeln!(s, "controlled_right = {}", self.controlled_right);
        let _ = writeln!(s, "teammate_bot = {}", b(self.teammate_bot_enabled));
        let _ = writeln!(s, "lazy_opponents = {}", b(self.lazy_opponents));
        for (key, team) in [("left_player", &self.left_placements), ("right_player", &self.right_placements)] {
            for (role, p) in team {
                let _ = writeln!(s, "{key} = {} {} {}", role.name(), p.x, p.y);
            }
        }
        s
    }
}
