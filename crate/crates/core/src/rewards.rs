//! Scoring and checkpoint rewards.

use std::fmt;
use std::str::FromStr;

use crate::engine::{Event, GameState};
use crate::error::ConfigError;
use crate::geometry::Side;

pub const CHECKPOINT_COUNT: usize = 10;
/// Bonus per checkpoint region, in tenths of a reward unit.
const TENTHS_PER_REGION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum RewardKind {
    #[default]
    Scoring,
    Checkpoints,
}

impl RewardKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Scoring => "scoring",
            Self::Checkpoints => "checkpoints",
        }
    }
}

impl fmt::Display for RewardKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RewardKind {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "scoring" => Ok(Self::Scoring),
            "checkpoints" => Ok(Self::Checkpoints),
            _ => Err(ConfigError::Invalid {
                entry: "reward".into(),
                message: format!("unknown reward {s:?}; expected scoring or checkpoints"),
            }),
        }
    }
}

/// +1 for each goal credited to `side`, −1 for each conceded. Own goals
/// are credited to the team that benefits.
pub fn scoring_reward(events: &[Event], side: Side) -> i32 {
    events
        .iter()
        .filter_map(Event::scoring_side)
        .map(|s| if s == side { 1 } else { -1 })
        .sum()
}

/// Distances from the opponent goal centre: `t_i = 0.99 − 0.8 i / 9`.
pub fn checkpoint_thresholds() -> [f64; CHECKPOINT_COUNT] {
    std::array::from_fn(|i| 0.99 - 0.8 * i as f64 / 9.0)
}

/// Per-team checkpoint progress within one episode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CheckpointTracker {
    pub collected: u32,
    pub exhausted: bool,
}

impl CheckpointTracker {
    /// Reward this step in tenths, updating the tracker. Exact decimal
    /// arithmetic: convert with [`tenths_to_reward`].
    pub fn step_tenths(&mut self, state: &GameState, side: Side, events: &[Event]) -> u32 {
        if self.exhausted {
            return 0;
        }
        let mut paid = 0;
        if state.owner_side() == Some(side) {
            let ball = side.frame(state.ball.position);
            if ball.x > 0.0 {
                let d = ball.distance(crate::geometry::Vec2::new(1.0, 0.0));
                let thresholds = checkpoint_thresholds();
                while (self.collected as usize) < CHECKPOINT_COUNT
                    && d <= thresholds[self.collected as usize]
                {
                    self.collected += 1;
                    paid += TENTHS_PER_REGION;
                }
            }
        }
        if events.contains(&Event::Goal(side)) {
            paid += TENTHS_PER_REGION * (CHECKPOINT_COUNT as u32 - self.collected);
            self.collected = CHECKPOINT_COUNT as u32;
        }
        if self.collected as usize == CHECKPOINT_COUNT {
            self.exhausted = true;
        }
        paid
    }
}

pub fn tenths_to_reward(tenths: u32) -> f64 {
    tenths as f64 / 10.0
}

/// Pure form of [`CheckpointTracker::step_tenths`]: `(delta, next tracker)`.
pub fn checkpoint_step(
    tracker: CheckpointTracker,
    state: &GameState,
    side: Side,
    events: &[Event],
) -> (f64, CheckpointTracker) {
    let mut t = tracker;
    let tenths = t.step_tenths(state, side, events);
    (tenths_to_reward(tenths), t)
}

/// Caller-supplied reward transform: `(state, events, side, base) -> reward`.
pub type RewardHook = Box<dyn FnMut(&GameState, &[Event], Side, f64) -> f64 + Send>;
