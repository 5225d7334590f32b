//! Fixed-timestep football simulation.
//!
//! One [`GameState::tick`] advances the match by one frame (10 Hz nominal).
//! Players are processed left team first, index ascending; that order also
//! breaks every tie, which keeps a tick a pure function of state and
//! actions.

mod formation;
pub mod kick;
pub mod params;
mod rules;
mod state;

pub use formation::{formations, Formation, Formations};
pub use kick::{best_pass_target, keeper_of};
pub use rules::{in_penalty_box, offside_check, penalty_spot};
pub use state::{
    BallState, EndReason, Event, FrameActions, GameMode, GameState, PlayerRef, PlayerState, Role,
};

use crate::action::Action;
use crate::error::{ConfigError, ContractError};
use crate::geometry::{Side, Vec2, PITCH_HALF_LENGTH, PITCH_HALF_WIDTH};
use crate::rng::DeterministicRng;
use crate::scenario::ScenarioConfig;
use params::*;

/// Seed used for every episode in deterministic mode, so outcomes do not
/// depend on the caller's seed.
pub const DETERMINISTIC_SEED: u64 = 0x5EED_F00D;

/// Functional form of [`GameState::tick`].
pub fn tick(state: &GameState, actions: &FrameActions) -> Result<(GameState, Vec<Event>), ContractError> {
    let mut next = state.clone();
    let events = next.tick(actions)?;
    Ok((next, events))
}

struct Stoppage {
    mode: GameMode,
    owner: Side,
    spot: Vec2,
}

impl GameState {
    /// Fresh episode state for `config`. In deterministic mode `seed` is
    /// ignored.
    pub fn reset(config: &ScenarioConfig, seed: u64) -> Result<GameState, ConfigError> {
        config.validate()?;
        let build = |side: Side, placements: &[(Role, Vec2)]| -> Vec<PlayerState> {
            let full = placements.len() == 11;
            placements
                .iter()
                .enumerate()
                .map(|(i, &(role, pos))| {
                    let mut p = PlayerState::new(role, pos, Vec2::new(side.sign(), 0.0));
                    if full {
                        p.home = side.frame(formations().base.slot(i));
                    }
                    p
                })
                .collect()
        };
        let rng_seed = if config.stochastic { seed } else { DETERMINISTIC_SEED };
        let mut s = GameState {
            frame: 0,
            duration_frames: config.duration_frames,
            teams: [
                build(Side::Left, &config.left_placements),
                build(Side::Right, &config.right_placements),
            ],
            ball: BallState::at(config.ball_start),
            mode: GameMode::Normal,
            mode_owner: Side::Left,
            mode_frames: 0,
            score: [0, 0],
            active_player: [0, 0],
            possession: None,
            rng: DeterministicRng::new(rng_seed),
            stochastic: config.stochastic,
            offsides: config.offsides_enabled,
            team_theta: [config.difficulty; 2],
            offside_flags: Vec::new(),
        };
        if config.start_mode == GameMode::Normal {
            if let Some((winner, _)) = s.closest_controller(config.ball_start, config.ball_start, None) {
                s.ball.owned_by = Some(winner);
                s.ball.last_touch = Some(winner);
                s.possession = Some(winner.side);
            }
        } else {
            s.set_restart(config.start_mode, Side::Left, config.ball_start);
        }
        for side in Side::BOTH {
            s.active_player[side.index()] = s.nearest_outfield(side).unwrap_or(0);
        }
        s.update_active_players();
        Ok(s)
    }

    /// Advances one frame. Every on-pitch player needs `Some(action)`;
    /// sent-off players must be `None`.
    pub fn tick(&mut self, actions: &FrameActions) -> Result<Vec<Event>, ContractError> {
        self.check_actions(actions)?;
        if self.frame >= self.duration_frames {
            return Err(ContractError::EpisodeOver(self.duration_frames));
        }
        self.frame += 1;
        let mut events = Vec::new();
        let mut stoppage: Option<Stoppage> = None;
        let prev_ball = self.ball.position;
        let prev_z = self.ball.z;

        for side in Side::BOTH {
            for i in 0..self.teams[side.index()].len() {
                if let Some(action) = actions[side.index()][i] {
                    self.act(PlayerRef::new(side, i), action, &mut events, &mut stoppage);
                }
            }
        }

        self.move_ball();
        if stoppage.is_none() {
            self.keeper_save(prev_ball, &mut events);
        }
        if stoppage.is_none() {
            stoppage = self.boundary_checks(prev_ball, prev_z, &mut events);
        }
        if stoppage.is_none() && self.mode == GameMode::Normal {
            stoppage = self.resolve_possession(prev_ball, prev_z, &mut events);
        }

        match stoppage {
            Some(Stoppage { mode: GameMode::KickOff, owner, .. }) => self.place_kickoff(owner),
            Some(st) => self.set_restart(st.mode, st.owner, st.spot),
            None if self.mode != GameMode::Normal => {
                self.mode_frames += 1;
                if self.mode_frames >= RESTART_TIMEOUT {
                    self.mode = GameMode::Normal;
                    self.mode_frames = 0;
                }
            }
            None => {}
        }
        self.update_active_players();
        Ok(events)
    }

    fn check_actions(&self, actions: &FrameActions) -> Result<(), ContractError> {
        for side in Side::BOTH {
            let team = self.team(side);
            let given = &actions[side.index()];
            if given.len() != team.len() {
                return Err(ContractError::TeamActionCount {
                    side: side.name(),
                    expected: team.len(),
                    got: given.len(),
                });
            }
            for (index, (p, a)) in team.iter().zip(given).enumerate() {
                match (p.sent_off, a) {
                    (true, Some(_)) => {
                        return Err(ContractError::ActionForSentOff { side: side.name(), index })
                    }
                    (false, None) => {
                        return Err(ContractError::MissingAction { side: side.name(), index })
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    fn act(
        &mut self,
        who: PlayerRef,
        action: Action,
        events: &mut Vec<Event>,
        stoppage: &mut Option<Stoppage>,
    ) {
        let owns = self.ball.owned_by == Some(who);
        let restart_taker = owns && self.mode != GameMode::Normal;
        let prior_mode = self.mode;
        {
            let p = self.player_mut(who);
            p.sticky = p.sticky.apply(action);
        }
        if restart_taker && (action.kick().is_some() || action.direction().is_some()) {
            self.mode = GameMode::Normal;
            self.mode_frames = 0;
        }
        let sliding_now = self.player(who).slide_frames > 0;

        if let Some(kind) = action.kick() {
            if owns && !sliding_now && self.resolve_kick(who, kind) {
                events.push(Event::KickExecuted(kind));
                self.offside_flags.clear();
                if kind.is_pass()
                    && self.offsides
                    && matches!(prior_mode, GameMode::Normal | GameMode::FreeKick)
                {
                    self.offside_flags = offside_check(self, who);
                }
            }
        }
        if action == Action::Sliding && !owns && !sliding_now && self.mode == GameMode::Normal {
            let p = self.player_mut(who);
            p.slide_frames = SLIDE_FRAMES;
            p.fouled_this_slide = false;
        }

        let still_taker = self.ball.owned_by == Some(who) && self.mode != GameMode::Normal;
        let owns_now = self.ball.owned_by == Some(who);
        let p = self.player_mut(who);
        let sliding = p.slide_frames > 0;
        let (velocity, moving, sprinting) = if sliding {
            p.slide_frames -= 1;
            (p.facing * SLIDE_SPEED, true, false)
        } else if still_taker {
            (Vec2::ZERO, false, false)
        } else if let Some(dir) = p.sticky.direction {
            let mut speed = p.base_speed * p.fatigue_multiplier();
            if p.sticky.sprint {
                speed *= SPRINT_MULTIPLIER;
            }
            if owns_now {
                speed *= if p.sticky.dribble { DRIBBLE_MULTIPLIER } else { BALL_CARRY_MULTIPLIER };
            }
            p.facing = dir.unit();
            (dir.unit() * speed, true, p.sticky.sprint)
        } else {
            (Vec2::ZERO, false, false)
        };
        p.velocity = velocity;
        p.position = (p.position + velocity).clamp_to(
            PITCH_HALF_LENGTH + CONTAINMENT_MARGIN,
            PITCH_HALF_WIDTH + CONTAINMENT_MARGIN,
        );
        p.update_fatigue(sprinting, moving);

        if sliding {
            self.slide_contact(who, events, stoppage);
        }
    }

    /// Slide tackle reaching the ball first wins it; touching an opponent
    /// first is a foul.
    fn slide_contact(&mut self, who: PlayerRef, events: &mut Vec<Event>, stoppage: &mut Option<Stoppage>) {
        let me = self.player(who).clone();
        if me.fouled_this_slide {
            return;
        }
        let ball_free_or_theirs = self.ball.owned_by.is_none_or(|o| o.side != who.side);
        if ball_free_or_theirs
            && self.ball.z < CONTROL_HEIGHT
            && me.position.distance(self.ball.position) <= SLIDE_BALL_REACH
        {
            self.take_ball(who, events);
            self.player_mut(who).slide_frames = 0;
            return;
        }
        let victim = self
            .team(who.side.other())
            .iter()
            .enumerate()
            .filter(|(_, o)| !o.sent_off && o.position.distance(me.position) <= SLIDE_CONTACT_RADIUS)
            .map(|(i, _)| i)
            .next();
        let Some(victim) = victim else { return };
        {
            let p = self.player_mut(who);
            p.fouled_this_slide = true;
            p.slide_frames = 0;
        }
        events.push(Event::Foul(who.side));
        if self.rng.chance(YELLOW_CARD_PROBABILITY) {
            let p = self.player_mut(who);
            p.yellow_cards += 1;
            let second = p.yellow_cards >= 2;
            events.push(Event::YellowCard(who.side, who.index));
            if second {
                self.send_off(who);
                events.push(Event::RedCard(who.side, who.index));
            }
        }
        if stoppage.is_none() && self.mode == GameMode::Normal {
            let spot = self.team(who.side.other())[victim].position;
            let mode = if in_penalty_box(spot, who.side) {
                GameMode::Penalty
            } else {
                GameMode::FreeKick
            };
            let spot = if mode == GameMode::Penalty { penalty_spot(who.side) } else { spot };
            *stoppage = Some(Stoppage { mode, owner: who.side.other(), spot });
        }
    }

    fn send_off(&mut self, who: PlayerRef) {
        if self.ball.owned_by == Some(who) {
            self.ball.owned_by = None;
        }
        let p = self.player_mut(who);
        p.sent_off = true;
        p.velocity = Vec2::ZERO;
        p.sticky = Default::default();
        p.slide_frames = 0;
    }

    fn take_ball(&mut self, who: PlayerRef, events: &mut Vec<Event>) {
        if self.possession != Some(who.side) {
            events.push(Event::PossessionChange(who.side));
        }
        self.possession = Some(who.side);
        let b = &mut self.ball;
        b.owned_by = Some(who);
        b.last_touch = Some(who);
        b.velocity = Vec2::ZERO;
        b.vz = 0.0;
        b.z = 0.0;
        b.cooldown = 0;
        b.pass_target = None;
        b.shot_by = None;
        self.active_player[who.side.index()] = who.index;
    }

    fn move_ball(&mut self) {
        if let Some(owner) = self.ball.owned_by {
            let p = self.player(owner);
            let (pos, vel) = (p.position + p.facing * CARRY_OFFSET, p.velocity);
            let b = &mut self.ball;
            b.position = pos;
            b.velocity = vel;
            b.z = 0.0;
            b.vz = 0.0;
            return;
        }
        let b = &mut self.ball;
        b.cooldown = b.cooldown.saturating_sub(1);
        b.position += b.velocity;
        b.z += b.vz;
        if b.z > 0.0 || b.vz > 0.0 {
            b.vz -= GRAVITY;
        }
        if b.z <= 0.0 {
            b.z = 0.0;
            if b.vz < 0.0 {
                b.vz = if -b.vz * BOUNCE > MIN_BOUNCE_SPEED { -b.vz * BOUNCE } else { 0.0 };
            }
        }
        if b.z == 0.0 && b.vz == 0.0 {
            b.velocity = b.velocity * BALL_FRICTION;
        } else {
            b.velocity = b.velocity * AIR_DRAG;
        }
    }

    fn keeper_save(&mut self, prev: Vec2, events: &mut Vec<Event>) {
        let Some(shooter) = self.ball.shot_by else { return };
        if self.ball.owned_by.is_some() || self.ball.save_attempted || self.ball.z > GOAL_HEIGHT {
            return;
        }
        let defending = shooter.other();
        let Some(k) = keeper_of(self, defending) else { return };
        let keeper = self.team(defending)[k].position;
        if keeper.distance_to_segment(prev, self.ball.position) > KEEPER_REACH {
            return;
        }
        self.ball.save_attempted = true;
        let p = keeper_save_probability(self.team_theta[defending.index()]);
        if self.rng.chance(p) {
            let who = PlayerRef::new(defending, k);
            self.take_ball(who, events);
            let kp = self.player(who);
            self.ball.position = kp.position + kp.facing * CARRY_OFFSET;
        }
    }

    fn boundary_checks(&mut self, prev: Vec2, prev_z: f64, events: &mut Vec<Event>) -> Option<Stoppage> {
        let pos = self.ball.position;
        let toucher = self.ball.last_touch.map(|r| r.side);
        if pos.x.abs() > PITCH_HALF_LENGTH {
            let end = pos.x.signum();
            let t = ((end * PITCH_HALF_LENGTH - prev.x) / (pos.x - prev.x)).clamp(0.0, 1.0);
            let y = prev.y + t * (pos.y - prev.y);
            let z = prev_z + t * (self.ball.z - prev_z);
            let attacker = if end > 0.0 { Side::Left } else { Side::Right };
            let defender = attacker.other();
            if y.abs() < GOAL_HALF_WIDTH && z < GOAL_HEIGHT {
                if toucher == Some(defender) {
                    events.push(Event::OwnGoal(defender));
                } else {
                    events.push(Event::Goal(attacker));
                }
                self.score[attacker.index()] += 1;
                self.ball.owned_by = None;
                return Some(Stoppage { mode: GameMode::KickOff, owner: defender, spot: Vec2::ZERO });
            }
            if y.abs() <= PITCH_HALF_WIDTH {
                self.ball.owned_by = None;
                return Some(if toucher == Some(defender) {
                    events.push(Event::OutGoalLine { restart: GameMode::Corner, awarded_to: attacker });
                    let corner = Vec2::new(end * PITCH_HALF_LENGTH, y.signum() * PITCH_HALF_WIDTH);
                    Stoppage { mode: GameMode::Corner, owner: attacker, spot: corner }
                } else {
                    events.push(Event::OutGoalLine { restart: GameMode::GoalKick, awarded_to: defender });
                    let spot = Vec2::new(end * (PITCH_HALF_LENGTH - 0.06), y.signum() * 0.06);
                    Stoppage { mode: GameMode::GoalKick, owner: defender, spot }
                });
            }
        }
        if pos.y.abs() > PITCH_HALF_WIDTH {
            let edge = pos.y.signum() * PITCH_HALF_WIDTH;
            let t = ((edge - prev.y) / (pos.y - prev.y)).clamp(0.0, 1.0);
            let x = (prev.x + t * (pos.x - prev.x)).clamp(-PITCH_HALF_LENGTH, PITCH_HALF_LENGTH);
            let awarded_to = toucher.map_or(Side::Left, Side::other);
            events.push(Event::OutSideLine { awarded_to });
            self.ball.owned_by = None;
            return Some(Stoppage { mode: GameMode::ThrowIn, owner: awarded_to, spot: Vec2::new(x, edge) });
        }
        None
    }

    /// Nearest eligible player to the ball path `a..b`; ties favour the
    /// left team, then lower index.
    fn closest_controller(&self, a: Vec2, b: Vec2, excluded: Option<PlayerRef>) -> Option<(PlayerRef, f64)> {
        let mut best: Option<(PlayerRef, f64)> = None;
        for side in Side::BOTH {
            for (i, p) in self.team(side).iter().enumerate() {
                let r = PlayerRef::new(side, i);
                if p.sent_off || Some(r) == excluded {
                    continue;
                }
                let d = p.position.distance_to_segment(a, b);
                if d <= CONTROL_RADIUS && best.is_none_or(|(_, bd)| d < bd) {
                    best = Some((r, d));
                }
            }
        }
        best
    }

    fn resolve_possession(&mut self, prev: Vec2, prev_z: f64, events: &mut Vec<Event>) -> Option<Stoppage> {
        if let Some(owner) = self.ball.owned_by {
            // standing tackle on the carrier
            let carrier = self.player(owner);
            let radius = if carrier.sticky.dribble { STEAL_RADIUS * 0.5 } else { STEAL_RADIUS };
            let ball = self.ball.position;
            let mut best: Option<(usize, f64)> = None;
            for (i, o) in self.team(owner.side.other()).iter().enumerate() {
                if o.sent_off || o.slide_frames > 0 {
                    continue;
                }
                let d = o.position.distance(ball);
                if d < radius && best.is_none_or(|(_, bd)| d < bd) {
                    best = Some((i, d));
                }
            }
            if let Some((i, _)) = best {
                self.take_ball(PlayerRef::new(owner.side.other(), i), events);
                self.offside_flags.clear();
            }
            return None;
        }
        if self.ball.z.min(prev_z) >= CONTROL_HEIGHT {
            return None;
        }
        let excluded = (self.ball.cooldown > 0).then_some(self.ball.last_touch).flatten();
        let (winner, _) = self.closest_controller(prev, self.ball.position, excluded)?;
        let flagged = self.offside_flags.contains(&winner);
        self.offside_flags.clear();
        self.take_ball(winner, events);
        let p = self.player(winner);
        self.ball.position = p.position + p.facing * CARRY_OFFSET;
        if flagged {
            events.push(Event::OffsideCalled(winner.side));
            let spot = self.player(winner).position;
            return Some(Stoppage { mode: GameMode::FreeKick, owner: winner.side.other(), spot });
        }
        None
    }

    fn nearest_outfield(&self, side: Side) -> Option<usize> {
        let team = self.team(side);
        let outfield = team.iter().any(|p| !p.sent_off && p.role != Role::Keeper);
        let mut best: Option<(usize, f64)> = None;
        for (i, p) in team.iter().enumerate() {
            if p.sent_off || (outfield && p.role == Role::Keeper) {
                continue;
            }
            let d = p.position.distance(self.ball.position);
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((i, d));
            }
        }
        best.map(|(i, _)| i)
    }

    /// Ball owner is always active; a pass receiver becomes active while
    /// the pass travels; otherwise control moves to the nearest outfield
    /// player once it is clearly closer.
    fn update_active_players(&mut self) {
        for side in Side::BOTH {
            if let Some(owner) = self.ball.owned_by.filter(|o| o.side == side) {
                self.active_player[side.index()] = owner.index;
                continue;
            }
            if let Some(t) = self.ball.pass_target.filter(|t| t.side == side) {
                if !self.player(t).sent_off {
                    self.active_player[side.index()] = t.index;
                    continue;
                }
            }
            let Some(best) = self.nearest_outfield(side) else { continue };
            let current = self.active(side);
            let team = self.team(side);
            let cur = &team[current.min(team.len() - 1)];
            let outfield = team.iter().any(|p| !p.sent_off && p.role != Role::Keeper);
            let ball = self.ball.position;
            let stale = cur.sent_off
                || (outfield && cur.role == Role::Keeper)
                || team[best].position.distance(ball) + ACTIVE_SWITCH_MARGIN < cur.position.distance(ball);
            if stale {
                self.active_player[side.index()] = best;
            }
        }
    }
}
