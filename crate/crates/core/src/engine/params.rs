//! Tunable physics and rules constants. All speeds are per frame at 10 Hz.

pub const CONTAINMENT_MARGIN: f64 = 0.02;

pub const GOAL_HALF_WIDTH: f64 = 0.044;
pub const GOAL_HEIGHT: f64 = 0.046;
/// Penalty box spans `|x| >= 1 - PENALTY_BOX_DEPTH`, `|y| <= PENALTY_BOX_HALF_WIDTH`.
pub const PENALTY_BOX_DEPTH: f64 = 0.3;
pub const PENALTY_BOX_HALF_WIDTH: f64 = 0.24;
/// Distance of the penalty spot from the goal line.
pub const PENALTY_SPOT_DEPTH: f64 = 0.22;

pub const BASE_SPEED: f64 = 0.01;
pub const SPRINT_MULTIPLIER: f64 = 1.4;
pub const BALL_CARRY_MULTIPLIER: f64 = 0.92;
pub const DRIBBLE_MULTIPLIER: f64 = 0.8;

pub const FATIGUE_SPEED_PENALTY: f64 = 0.3;
pub const FATIGUE_SPRINT: f64 = 0.0005;
pub const FATIGUE_MOVE: f64 = 0.0001;
pub const FATIGUE_RECOVERY: f64 = 0.0002;

pub const BALL_FRICTION: f64 = 0.95;
pub const AIR_DRAG: f64 = 0.99;
pub const GRAVITY: f64 = 0.002;
pub const BOUNCE: f64 = 0.3;
pub const MIN_BOUNCE_SPEED: f64 = 0.004;

pub const CONTROL_RADIUS: f64 = 0.015;
pub const CONTROL_HEIGHT: f64 = 0.02;
/// Owned ball sits this far ahead of the owner along its facing.
pub const CARRY_OFFSET: f64 = 0.008;
/// Opponent this close to an owned ball takes it (halved while dribbling).
pub const STEAL_RADIUS: f64 = 0.01;
/// Frames a kicker cannot retouch its own kick.
pub const KICK_COOLDOWN: u8 = 4;

pub const SHORT_PASS_SPEED: (f64, f64) = (0.015, 0.03);
pub const LONG_PASS_SPEED: (f64, f64) = (0.032, 0.055);
pub const SHOT_SPEED: f64 = 0.065;
/// Speed a pass is meant to keep when it reaches the receiver.
pub const PASS_ARRIVAL_SPEED: f64 = 0.012;
pub const HIGH_PASS_LIFT: f64 = 0.02;
pub const HIGH_PASS_SPEED: (f64, f64) = (0.015, 0.05);
/// Shot aim point offset from the goal centre, toward the far post.
pub const SHOT_AIM_Y: f64 = 0.03;
/// Standard deviation (radians) of kick direction noise in stochastic mode.
pub const KICK_NOISE: f64 = 0.05;

pub const SLIDE_FRAMES: u8 = 5;
pub const SLIDE_SPEED: f64 = 0.018;
pub const SLIDE_BALL_REACH: f64 = 0.02;
pub const SLIDE_CONTACT_RADIUS: f64 = 0.016;
pub const YELLOW_CARD_PROBABILITY: f64 = 0.25;

pub const KEEPER_REACH: f64 = 0.03;
pub const KEEPER_SAVE_BASE: f64 = 0.3;
pub const KEEPER_SAVE_SLOPE: f64 = 0.5;

/// Restart modes fall back to open play after this many frames.
pub const RESTART_TIMEOUT: u32 = 30;
pub const RESTART_CLEARANCE: f64 = 0.08;

/// Active player only switches to a closer teammate by this margin.
pub const ACTIVE_SWITCH_MARGIN: f64 = 0.02;

pub fn base_speed_for(role: crate::engine::Role) -> f64 {
    use crate::engine::Role;
    match role {
        Role::Keeper => 0.009,
        Role::Defender => 0.0097,
        Role::Midfielder => BASE_SPEED,
        Role::Forward => 0.0103,
    }
}

pub fn keeper_save_probability(theta: f64) -> f64 {
    KEEPER_SAVE_BASE + KEEPER_SAVE_SLOPE * theta
}
