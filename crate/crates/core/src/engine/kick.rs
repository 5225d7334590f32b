//! Kick execution and pass-target scoring.

use crate::action::KickKind;
use crate::engine::params::*;
use crate::engine::{GameState, PlayerRef, Role};
use crate::geometry::{Side, Vec2};

/// Teammate the ball carrier would pass to, with its score
/// (forward progress minus opponent pressure on the receiver and the lane).
pub fn best_pass_target(state: &GameState, passer: PlayerRef) -> Option<(usize, f64)> {
    let me = state.player(passer);
    let sign = passer.side.sign();
    let opponents = state.team(passer.side.other());
    let mut best: Option<(usize, f64)> = None;
    for (j, mate) in state.team(passer.side).iter().enumerate() {
        if j == passer.index || mate.sent_off {
            continue;
        }
        let dist = me.position.distance(mate.position);
        if !(0.05..=0.9).contains(&dist) {
            continue;
        }
        let progress = (mate.position.x - me.position.x) * sign;
        let mut marking = f64::INFINITY;
        let mut lane = f64::INFINITY;
        for o in opponents.iter().filter(|o| !o.sent_off) {
            marking = marking.min(o.position.distance(mate.position));
            lane = lane.min(o.position.distance_to_segment(me.position, mate.position));
        }
        let score = progress - 2.0 * (0.1 - marking).max(0.0) - 2.0 * (0.05 - lane).max(0.0);
        if best.is_none_or(|(_, s)| score > s) {
            best = Some((j, score));
        }
    }
    best
}

/// Nearest on-pitch keeper of `side` to its own goal.
pub fn keeper_of(state: &GameState, side: Side) -> Option<usize> {
    let own_goal = side.other().target_goal();
    let mut best: Option<(usize, f64)> = None;
    for (i, p) in state.team(side).iter().enumerate() {
        if p.sent_off || p.role != Role::Keeper {
            continue;
        }
        let d = p.position.distance(own_goal);
        if best.is_none_or(|(_, bd)| d < bd) {
            best = Some((i, d));
        }
    }
    best.map(|(i, _)| i)
}

impl GameState {
    /// Releases the ball from `kicker`. Returns `false` (and changes
    /// nothing) when the kicker does not own the ball.
    pub fn resolve_kick(&mut self, kicker: PlayerRef, kind: KickKind) -> bool {
        if self.ball.owned_by != Some(kicker) {
            return false;
        }
        let me = self.player(kicker).clone();
        let origin = self.ball.position;
        let mut pass_target = None;
        let (aim, speed, lift) = match kind {
            KickKind::Shot => {
                let goal = kicker.side.target_goal();
                let aim_y = match keeper_of(self, kicker.side.other()) {
                    Some(k) if self.team(kicker.side.other())[k].position.y >= 0.0 => -SHOT_AIM_Y,
                    Some(_) => SHOT_AIM_Y,
                    None => 0.0,
                };
                (Vec2::new(goal.x, aim_y) - origin, SHOT_SPEED, 0.0)
            }
            pass => {
                let target = best_pass_target(self, kicker).map(|(j, _)| {
                    let mate = &self.team(kicker.side)[j];
                    pass_target = Some(PlayerRef::new(kicker.side, j));
                    mate.position + mate.velocity * 6.0
                });
                let target = target.unwrap_or(origin + me.facing * 0.3);
                let d = origin.distance(target);
                let ground = d * (1.0 - BALL_FRICTION) + PASS_ARRIVAL_SPEED;
                match pass {
                    KickKind::ShortPass => {
                        (target - origin, ground.clamp(SHORT_PASS_SPEED.0, SHORT_PASS_SPEED.1), 0.0)
                    }
                    KickKind::LongPass => {
                        (target - origin, ground.clamp(LONG_PASS_SPEED.0, LONG_PASS_SPEED.1), 0.0)
                    }
                    _ => {
                        let flight = 2.0 * HIGH_PASS_LIFT / GRAVITY;
                        let carried = (1.0 - AIR_DRAG.powf(flight)) / (1.0 - AIR_DRAG);
                        let v = (d / carried).clamp(HIGH_PASS_SPEED.0, HIGH_PASS_SPEED.1);
                        (target - origin, v, HIGH_PASS_LIFT)
                    }
                }
            }
        };
        let mut dir = aim.normalized().unwrap_or(me.facing);
        if self.stochastic {
            let angle = self.rng.normal() * KICK_NOISE;
            dir = dir.rotated(angle);
        }
        let ball = &mut self.ball;
        ball.owned_by = None;
        ball.velocity = dir * speed;
        ball.vz = lift;
        ball.last_touch = Some(kicker);
        ball.cooldown = KICK_COOLDOWN;
        ball.pass_target = pass_target;
        ball.shot_by = (kind == KickKind::Shot).then_some(kicker.side);
        ball.save_attempted = false;
        self.player_mut(kicker).facing = dir;
        true
    }
}
