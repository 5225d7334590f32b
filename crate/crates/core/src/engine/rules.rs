//! Offside, restarts and set-piece placement.

use crate::action::StickyFlags;
use crate::engine::formation::formations;
use crate::engine::params::*;
use crate::engine::{GameMode, GameState, PlayerRef, Role};
use crate::geometry::{Side, Vec2, PITCH_HALF_LENGTH, PITCH_HALF_WIDTH};

/// Teammates of `passer` in an offside position at the moment of the pass:
/// in the opponent half, strictly ahead of the ball and strictly ahead of
/// the second-last opponent. With fewer than two opponents on the pitch the
/// halfway line stands in for the missing defender.
pub fn offside_check(state: &GameState, passer: PlayerRef) -> Vec<PlayerRef> {
    let side = passer.side;
    let sign = side.sign();
    let ball_x = state.ball.position.x * sign;
    let mut depths: Vec<f64> = state
        .team(side.other())
        .iter()
        .filter(|p| !p.sent_off)
        .map(|p| p.position.x * sign)
        .collect();
    depths.sort_by(|a, b| b.total_cmp(a));
    let second_last = depths.get(1).copied().unwrap_or(0.0);
    state
        .team(side)
        .iter()
        .enumerate()
        .filter(|&(i, p)| {
            let x = p.position.x * sign;
            i != passer.index && !p.sent_off && x > 0.0 && x > ball_x && x > second_last
        })
        .map(|(i, _)| PlayerRef::new(side, i))
        .collect()
}

/// Whether `p` lies inside the penalty box `defending` side protects.
pub fn in_penalty_box(p: Vec2, defending: Side) -> bool {
    let x = p.x * defending.sign();
    x <= -(PITCH_HALF_LENGTH - PENALTY_BOX_DEPTH) && p.y.abs() <= PENALTY_BOX_HALF_WIDTH
}

pub fn penalty_spot(defending: Side) -> Vec2 {
    Vec2::new(-defending.sign() * (PITCH_HALF_LENGTH - PENALTY_SPOT_DEPTH), 0.0)
}

fn contain(p: Vec2) -> Vec2 {
    p.clamp_to(
        PITCH_HALF_LENGTH + CONTAINMENT_MARGIN,
        PITCH_HALF_WIDTH + CONTAINMENT_MARGIN,
    )
}

impl GameState {
    /// Puts every player on its kick-off slot and hands the ball to the
    /// `owner` player nearest the centre spot.
    pub fn place_kickoff(&mut self, owner: Side) {
        let f = formations();
        for side in Side::BOTH {
            let formation = if side == owner { &f.kickoff_attack } else { &f.kickoff_defend };
            let facing = Vec2::new(side.sign(), 0.0);
            for (i, p) in self.teams[side.index()].iter_mut().enumerate() {
                if p.sent_off {
                    continue;
                }
                p.position = side.frame(formation.slot(i));
                p.velocity = Vec2::ZERO;
                p.facing = facing;
                p.sticky = StickyFlags::default();
                p.slide_frames = 0;
            }
        }
        self.set_restart(GameMode::KickOff, owner, Vec2::ZERO);
    }

    /// Enters a restart `mode` for `owner` at `spot`: the taker is moved
    /// behind the ball and takes possession; opponents are pushed back.
    pub fn set_restart(&mut self, mode: GameMode, owner: Side, spot: Vec2) {
        self.mode = mode;
        self.mode_owner = owner;
        self.mode_frames = 0;
        self.offside_flags.clear();
        let spot = contain(spot);
        let Some(taker) = self.pick_taker(mode, owner, spot) else {
            // team has nobody left; play simply continues
            self.mode = GameMode::Normal;
            self.ball = crate::engine::BallState::at(spot);
            return;
        };
        let aim = if mode == GameMode::GoalKick {
            Vec2::new(owner.sign(), 0.0)
        } else {
            (owner.target_goal() - spot).normalized().unwrap_or(Vec2::new(owner.sign(), 0.0))
        };
        {
            let p = &mut self.teams[owner.index()][taker];
            p.position = contain(spot - aim * CARRY_OFFSET);
            p.facing = aim;
            p.velocity = Vec2::ZERO;
            p.sticky.direction = None;
            p.slide_frames = 0;
        }
        let taker_ref = PlayerRef::new(owner, taker);
        let mut ball = crate::engine::BallState::at(spot);
        ball.owned_by = Some(taker_ref);
        ball.last_touch = Some(taker_ref);
        self.ball = ball;
        self.possession = Some(owner);
        self.active_player[owner.index()] = taker;

        let clearance = RESTART_CLEARANCE;
        for p in self.teams[owner.other().index()].iter_mut().filter(|p| !p.sent_off) {
            let away = p.position - spot;
            let d = away.length();
            if d < clearance {
                let dir = away.normalized().unwrap_or(-aim);
                p.position = contain(spot + dir * clearance);
            }
        }
        if mode == GameMode::Penalty {
            self.clear_box_for_penalty(owner, taker);
        }
    }

    fn pick_taker(&self, mode: GameMode, owner: Side, spot: Vec2) -> Option<usize> {
        let team = self.team(owner);
        let on_pitch = || team.iter().enumerate().filter(|(_, p)| !p.sent_off);
        if mode == GameMode::GoalKick {
            if let Some(k) = crate::engine::kick::keeper_of(self, owner) {
                return Some(k);
            }
        }
        let outfield = on_pitch().any(|(_, p)| p.role != Role::Keeper);
        let mut best: Option<(usize, f64)> = None;
        for (i, p) in on_pitch() {
            if outfield && p.role == Role::Keeper && mode != GameMode::GoalKick {
                continue;
            }
            let d = p.position.distance(spot);
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((i, d));
            }
        }
        best.map(|(i, _)| i)
    }

    fn clear_box_for_penalty(&mut self, owner: Side, taker: usize) {
        let defending = owner.other();
        let keeper = crate::engine::kick::keeper_of(self, defending);
        let edge = PITCH_HALF_LENGTH - PENALTY_BOX_DEPTH - 0.02;
        for side in Side::BOTH {
            for (i, p) in self.teams[side.index()].iter_mut().enumerate() {
                if p.sent_off || (side == owner && i == taker) {
                    continue;
                }
                if side == defending && Some(i) == keeper {
                    p.position = Vec2::new(-defending.sign() * (PITCH_HALF_LENGTH - 0.01), 0.0);
                    p.velocity = Vec2::ZERO;
                    continue;
                }
                if in_penalty_box(p.position, defending) {
                    p.position.x = -defending.sign() * edge;
                }
            }
        }
    }
}
