//! Rule-based bot with a smooth difficulty θ, plus the teammate behaviour
//! that steers non-active players of a controlled team.
//!
//! Difficulty acts through three knobs: how often a decision is recomputed
//! ([`reaction_period`]), how much heading noise decisions carry in
//! stochastic mode ([`BotParams::aim_noise_scale`]), and how often the
//! team's keeper saves (in the engine).

use crate::action::{Action, Direction};
use crate::engine::params::GOAL_HALF_WIDTH;
use crate::engine::{best_pass_target, GameState, PlayerRef, PlayerState, Role};
use crate::error::ContractError;
use crate::geometry::{Side, Vec2};
use crate::rng::DeterministicRng;

pub const SHOT_RANGE: f64 = 0.3;
pub const SPRINT_DISTANCE: f64 = 0.2;
const ARRIVE_RADIUS: f64 = 0.012;
const PRESSURE_RADIUS: f64 = 0.06;
const KEEPER_RUSH_RADIUS: f64 = 0.12;

/// Frames between decisions: `round(1 + 9 (1 - θ))`.
pub fn reaction_period(theta: f64) -> Result<u32, ContractError> {
    if !(0.0..=1.0).contains(&theta) {
        return Err(ContractError::Difficulty(theta));
    }
    Ok((1.0 + 9.0 * (1.0 - theta)).round() as u32)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BotParams {
    pub theta: f64,
    pub reaction_period_frames: u32,
    /// Standard deviation of heading noise, radians: `0.4 (1 - θ)`.
    pub aim_noise_scale: f64,
}

impl BotParams {
    pub fn new(theta: f64) -> Result<Self, ContractError> {
        Ok(Self {
            theta,
            reaction_period_frames: reaction_period(theta)?,
            aim_noise_scale: 0.4 * (1.0 - theta),
        })
    }
}

/// RNG stream for one decision; independent of every other draw.
pub fn decision_rng(state: &GameState, side: Side, index: usize) -> DeterministicRng {
    state
        .rng
        .fork(0xB07 << 48 | (state.frame as u64) << 8 | (side.index() as u64) << 5 | index as u64)
}

/// One fresh decision for `side`'s player `index`.
pub fn bot_action(
    state: &GameState,
    side: Side,
    index: usize,
    params: &BotParams,
    rng: &mut DeterministicRng,
) -> Action {
    let noise = if state.stochastic && params.aim_noise_scale > 0.0 {
        rng.normal() * params.aim_noise_scale
    } else {
        0.0
    };
    decide(state, PlayerRef::new(side, index), noise, true)
}

/// Built-in behaviour for a controlled team's non-active player: the bot
/// tree at full reaction speed, without noise, and never kicking.
pub fn teammate_action(state: &GameState, side: Side, index: usize, enabled: bool) -> Action {
    if !enabled {
        return Action::Idle;
    }
    let a = decide(state, PlayerRef::new(side, index), 0.0, false);
    if a.kick().is_some() {
        Action::Idle
    } else {
        a
    }
}

/// Per-team decision memory implementing the reaction cadence: decisions
/// are recomputed on frames divisible by the reaction period and repeated
/// verbatim in between.
#[derive(Debug, Clone, PartialEq)]
pub struct BotTeam {
    pub params: BotParams,
    last: Vec<Option<Action>>,
}

impl BotTeam {
    pub fn new(params: BotParams) -> Self {
        Self { params, last: Vec::new() }
    }

    pub fn reset(&mut self) {
        self.last.clear();
    }

    pub fn act(&mut self, state: &GameState, side: Side, index: usize) -> Action {
        if self.last.len() <= index {
            self.last.resize(index + 1, None);
        }
        let on_boundary = state.frame.is_multiple_of(self.params.reaction_period_frames);
        match self.last[index] {
            Some(a) if !on_boundary => a,
            _ => {
                let mut rng = decision_rng(state, side, index);
                let a = bot_action(state, side, index, &self.params, &mut rng);
                self.last[index] = Some(a);
                a
            }
        }
    }

    /// Actions for every player of `side` (`None` for sent-off players).
    pub fn act_team(&mut self, state: &GameState, side: Side) -> Vec<Option<Action>> {
        (0..state.team(side).len())
            .map(|i| (!state.team(side)[i].sent_off).then(|| self.act(state, side, i)))
            .collect()
    }
}

fn decide(state: &GameState, who: PlayerRef, noise: f64, may_kick: bool) -> Action {
    let me = state.player(who);
    let side = who.side;
    let ball = state.ball.position;
    let owner = state.ball.owned_by;

    if owner == Some(who) {
        return if may_kick { with_ball(state, who, noise) } else { Action::Idle };
    }
    if me.role == Role::Keeper {
        return keeper(state, who, noise);
    }
    let chaser = nearest_to_ball(state, side) == Some(who.index);
    match owner {
        Some(o) if o.side == side => {
            let target = formation_point(state, who, true);
            steer(me, target, noise, false)
        }
        Some(o) => {
            let d = me.position.distance(ball);
            if chaser {
                if may_kick && (0.012..0.025).contains(&d) && me.slide_frames == 0 {
                    let carrier = state.player(o);
                    // only slide into a carrier running at us
                    if carrier.velocity.dot(me.position - carrier.position) > 0.0 {
                        return Action::Sliding;
                    }
                }
                steer(me, ball + state.ball.velocity * 2.0, noise, d > SPRINT_DISTANCE)
            } else if second_nearest_to_ball(state, side) == Some(who.index) {
                // cover the lane between the ball and our goal
                let own_goal = side.other().target_goal();
                steer(me, ball + (own_goal - ball) * 0.25, noise, false)
            } else {
                steer(me, formation_point(state, who, false), noise, false)
            }
        }
        None => {
            let targeted = state.ball.pass_target == Some(who);
            if chaser || targeted {
                let d = me.position.distance(ball);
                let lead = (d / 0.02).min(8.0);
                steer(me, ball + state.ball.velocity * lead, noise, d > SPRINT_DISTANCE)
            } else {
                let attacking = state.possession == Some(side);
                steer(me, formation_point(state, who, attacking), noise, false)
            }
        }
    }
}

fn with_ball(state: &GameState, who: PlayerRef, noise: f64) -> Action {
    let me = state.player(who);
    let side = who.side;
    let goal = side.target_goal();
    if me.role == Role::Keeper {
        return if best_pass_target(state, who).is_some() {
            Action::LongPass
        } else {
            steer(me, goal, noise, false)
        };
    }
    if me.position.distance(goal) < SHOT_RANGE {
        return Action::Shot;
    }
    let opponents = state.team(side.other());
    let pressure = opponents
        .iter()
        .filter(|o| !o.sent_off)
        .map(|o| o.position.distance(me.position))
        .fold(f64::INFINITY, f64::min);
    if let Some((mate, score)) = best_pass_target(state, who) {
        if (pressure < PRESSURE_RADIUS && score > -0.05) || (score > 0.25 && pressure < 0.12) {
            let d = me.position.distance(state.team(side)[mate].position);
            let target = state.team(side)[mate].position;
            let lane_blocked = opponents
                .iter()
                .filter(|o| !o.sent_off)
                .any(|o| o.position.distance_to_segment(me.position, target) < 0.03);
            return if d < 0.35 {
                Action::ShortPass
            } else if lane_blocked {
                Action::HighPass
            } else {
                Action::LongPass
            };
        }
    }
    if pressure < PRESSURE_RADIUS && !me.sticky.dribble {
        return Action::Dribble;
    }
    if pressure > 2.0 * PRESSURE_RADIUS && me.sticky.dribble {
        return Action::StopDribble;
    }
    // run at goal, sidestepping the nearest defender in front
    let mut heading = (goal - me.position).normalized().unwrap_or(Vec2::new(side.sign(), 0.0));
    if let Some(blocker) = opponents
        .iter()
        .filter(|o| !o.sent_off)
        .filter(|o| (o.position - me.position).dot(heading) > 0.0 && o.position.distance(me.position) < 0.12)
        .min_by(|a, b| a.position.distance(me.position).total_cmp(&b.position.distance(me.position)))
    {
        let perp = Vec2::new(-heading.y, heading.x);
        let away = if (blocker.position - me.position).dot(perp) > 0.0 { -perp } else { perp };
        heading += away * 0.8;
    }
    steer(me, me.position + heading * 0.1, noise, pressure > PRESSURE_RADIUS)
}

fn keeper(state: &GameState, who: PlayerRef, noise: f64) -> Action {
    let me = state.player(who);
    let side = who.side;
    let ball = state.ball.position;
    let own_goal = side.other().target_goal();
    let ball_is_ours = state.ball.owned_by.is_some_and(|o| o.side == side);
    if !ball_is_ours && me.position.distance(ball) < KEEPER_RUSH_RADIUS {
        return steer(me, ball, noise, false);
    }
    let toward = (ball - own_goal).normalized().unwrap_or(Vec2::new(-own_goal.x, 0.0));
    let mut guard = own_goal + toward * 0.04;
    guard.y = guard.y.clamp(-GOAL_HALF_WIDTH, GOAL_HALF_WIDTH);
    steer(me, guard, noise, false)
}

/// Nearest on-pitch outfield player of `side` to the ball (keepers only
/// when no outfield player is left); ties go to the lower index.
pub fn nearest_to_ball(state: &GameState, side: Side) -> Option<usize> {
    ranked_by_ball_distance(state, side).first().copied()
}

fn second_nearest_to_ball(state: &GameState, side: Side) -> Option<usize> {
    ranked_by_ball_distance(state, side).get(1).copied()
}

fn ranked_by_ball_distance(state: &GameState, side: Side) -> Vec<usize> {
    let team = state.team(side);
    let outfield = team.iter().any(|p| !p.sent_off && p.role != Role::Keeper);
    let ball = state.ball.position;
    let mut idx: Vec<usize> = (0..team.len())
        .filter(|&i| !team[i].sent_off && !(outfield && team[i].role == Role::Keeper))
        .collect();
    idx.sort_by(|&a, &b| {
        team[a]
            .position
            .distance(ball)
            .total_cmp(&team[b].position.distance(ball))
            .then(a.cmp(&b))
    });
    idx
}

/// Where a player should stand in open play: its home slot stretched toward
/// the ball, pushed up when attacking (but not past the offside line) and
/// dropped back when defending.
pub fn formation_point(state: &GameState, who: PlayerRef, attacking: bool) -> Vec2 {
    let side = who.side;
    let home = side.frame(state.player(who).home);
    let ball = side.frame(state.ball.position);
    let (mut x, y) = if attacking {
        (home.x * 0.5 + ball.x * 0.5 + 0.35, home.y * 0.9 + ball.y * 0.2)
    } else {
        (home.x * 0.6 + ball.x * 0.4 - 0.05, home.y * 0.9 + ball.y * 0.2)
    };
    if attacking {
        let mut depths: Vec<f64> = state
            .team(side.other())
            .iter()
            .filter(|p| !p.sent_off)
            .map(|p| side.frame(p.position).x)
            .collect();
        depths.sort_by(|a, b| b.total_cmp(a));
        let line = depths.get(1).copied().unwrap_or(0.0).max(0.0);
        x = x.min((line - 0.01).max(ball.x));
    }
    side.frame(Vec2::new(x.clamp(-0.95, 0.95), y.clamp(-0.38, 0.38)))
}

/// Movement action toward `target`. Re-affirms the heading first, then
/// toggles sprint; stops on arrival.
fn steer(me: &PlayerState, target: Vec2, noise: f64, sprint: bool) -> Action {
    let delta = target - me.position;
    if delta.length() < ARRIVE_RADIUS {
        return if me.sticky.direction.is_some() {
            Action::StopMoving
        } else if me.sticky.sprint {
            Action::StopSprint
        } else {
            Action::Idle
        };
    }
    let Some(dir) = Direction::quantize(delta.rotated(noise)) else {
        return Action::Idle;
    };
    if me.sticky.direction != Some(dir) {
        dir.action()
    } else if sprint && !me.sticky.sprint {
        Action::Sprint
    } else if !sprint && me.sticky.sprint {
        Action::StopSprint
    } else {
        dir.action()
    }
}
