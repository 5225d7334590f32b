use std::hash::{DefaultHasher, Hasher};

use crate::action::{KickKind, StickyFlags};
use crate::engine::params::{
    FATIGUE_MOVE, FATIGUE_RECOVERY, FATIGUE_SPEED_PENALTY, FATIGUE_SPRINT,
};
use crate::geometry::{Side, Vec2};
use crate::rng::DeterministicRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Keeper,
    Defender,
    Midfielder,
    Forward,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Keeper => "keeper",
            Role::Defender => "defender",
            Role::Midfielder => "midfielder",
            Role::Forward => "forward",
        }
    }
}

impl std::str::FromStr for Role {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "keeper" => Ok(Role::Keeper),
            "defender" => Ok(Role::Defender),
            "midfielder" => Ok(Role::Midfielder),
            "forward" => Ok(Role::Forward),
            other => Err(format!("unknown role `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlayerRef {
    pub side: Side,
    pub index: usize,
}

impl PlayerRef {
    pub fn new(side: Side, index: usize) -> Self {
        Self { side, index }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlayerState {
    pub position: Vec2,
    /// Displacement applied during the last frame.
    pub velocity: Vec2,
    /// Unit vector.
    pub facing: Vec2,
    pub tiredness: f64,
    pub sticky: StickyFlags,
    pub yellow_cards: u8,
    pub sent_off: bool,
    pub base_speed: f64,
    pub role: Role,
    /// Open-play anchor the bots stretch toward the ball.
    pub home: Vec2,
    /// Remaining frames of a slide tackle.
    pub slide_frames: u8,
    pub fouled_this_slide: bool,
}

impl PlayerState {
    pub fn new(role: Role, position: Vec2, facing: Vec2) -> Self {
        Self {
            position,
            velocity: Vec2::ZERO,
            facing,
            tiredness: 0.0,
            sticky: StickyFlags::default(),
            yellow_cards: 0,
            sent_off: false,
            base_speed: crate::engine::params::base_speed_for(role),
            role,
            home: position,
            slide_frames: 0,
            fouled_this_slide: false,
        }
    }

    /// Sprinting raises tiredness fastest, plain movement slower, and
    /// standing still recovers. Always clamped to `[0, 1]`.
    pub fn update_fatigue(&mut self, sprinting: bool, moving: bool) {
        let delta = if sprinting {
            FATIGUE_SPRINT
        } else if moving {
            FATIGUE_MOVE
        } else {
            -FATIGUE_RECOVERY
        };
        self.tiredness = (self.tiredness + delta).clamp(0.0, 1.0);
    }

    pub fn fatigue_multiplier(&self) -> f64 {
        1.0 - FATIGUE_SPEED_PENALTY * self.tiredness
    }

    fn mirrored(&self) -> Self {
        let mut p = self.clone();
        p.position = -p.position;
        p.velocity = -p.velocity;
        p.facing = -p.facing;
        p.home = -p.home;
        p.sticky.direction = p.sticky.direction.map(|d| d.mirrored());
        p
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BallState {
    pub position: Vec2,
    pub z: f64,
    pub velocity: Vec2,
    pub vz: f64,
    pub owned_by: Option<PlayerRef>,
    pub last_touch: Option<PlayerRef>,
    /// Frames during which `last_touch` cannot regain the ball.
    pub cooldown: u8,
    /// Intended receiver of the pass in flight.
    pub pass_target: Option<PlayerRef>,
    /// Side whose shot is in flight.
    pub shot_by: Option<Side>,
    pub save_attempted: bool,
}

impl BallState {
    pub fn at(position: Vec2) -> Self {
        Self {
            position,
            z: 0.0,
            velocity: Vec2::ZERO,
            vz: 0.0,
            owned_by: None,
            last_touch: None,
            cooldown: 0,
            pass_target: None,
            shot_by: None,
            save_attempted: false,
        }
    }

    pub fn speed(&self) -> f64 {
        (self.velocity.dot(self.velocity) + self.vz * self.vz).sqrt()
    }

    fn mirrored(&self) -> Self {
        let flip = |r: PlayerRef| PlayerRef::new(r.side.other(), r.index);
        BallState {
            position: -self.position,
            velocity: -self.velocity,
            owned_by: self.owned_by.map(flip),
            last_touch: self.last_touch.map(flip),
            pass_target: self.pass_target.map(flip),
            shot_by: self.shot_by.map(Side::other),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GameMode {
    Normal,
    KickOff,
    GoalKick,
    FreeKick,
    Corner,
    ThrowIn,
    Penalty,
}

impl GameMode {
    pub const ALL: [GameMode; 7] = [
        GameMode::Normal,
        GameMode::KickOff,
        GameMode::GoalKick,
        GameMode::FreeKick,
        GameMode::Corner,
        GameMode::ThrowIn,
        GameMode::Penalty,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            GameMode::Normal => "normal",
            GameMode::KickOff => "kickoff",
            GameMode::GoalKick => "goal_kick",
            GameMode::FreeKick => "free_kick",
            GameMode::Corner => "corner",
            GameMode::ThrowIn => "throw_in",
            GameMode::Penalty => "penalty",
        }
    }
}

impl std::str::FromStr for GameMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GameMode::ALL
            .iter()
            .copied()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown game mode `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EndReason {
    Time,
    Score,
    PossessionLoss,
    OutOfPlay,
}

impl EndReason {
    pub fn name(self) -> &'static str {
        match self {
            EndReason::Time => "time",
            EndReason::Score => "score",
            EndReason::PossessionLoss => "possession_loss",
            EndReason::OutOfPlay => "out_of_play",
        }
    }
}

/// Rule transitions reported by a tick.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Event {
    /// Side scored in the opponents' goal.
    Goal(Side),
    /// Side put the ball in its own goal.
    OwnGoal(Side),
    /// Ball crossed a touch line; throw-in to `awarded_to`.
    OutSideLine { awarded_to: Side },
    /// Ball crossed a goal line outside the goal; `restart` is Corner or GoalKick.
    OutGoalLine { restart: GameMode, awarded_to: Side },
    /// Side was caught offside.
    OffsideCalled(Side),
    /// Side committed a foul.
    Foul(Side),
    YellowCard(Side, usize),
    RedCard(Side, usize),
    PossessionChange(Side),
    KickExecuted(KickKind),
    EpisodeEnd(EndReason),
}

impl Event {
    /// The side whose score goes up, if any.
    pub fn scoring_side(&self) -> Option<Side> {
        match *self {
            Event::Goal(s) => Some(s),
            Event::OwnGoal(s) => Some(s.other()),
            _ => None,
        }
    }

    /// Events that stop play (out of play, free kick awarded).
    pub fn stops_play(&self) -> bool {
        matches!(
            self,
            Event::OutSideLine { .. } | Event::OutGoalLine { .. } | Event::OffsideCalled(_) | Event::Foul(_)
        )
    }

    pub fn name(&self) -> String {
        match self {
            Event::Goal(s) => format!("goal_{}", s.name()),
            Event::OwnGoal(s) => format!("own_goal_{}", s.name()),
            Event::OutSideLine { awarded_to } => format!("throw_in_{}", awarded_to.name()),
            Event::OutGoalLine { restart, awarded_to } => {
                format!("{}_{}", restart.name(), awarded_to.name())
            }
            Event::OffsideCalled(s) => format!("offside_{}", s.name()),
            Event::Foul(s) => format!("foul_{}", s.name()),
            Event::YellowCard(s, i) => format!("yellow_{}_{}", s.name(), i),
            Event::RedCard(s, i) => format!("red_{}_{}", s.name(), i),
            Event::PossessionChange(s) => format!("possession_{}", s.name()),
            Event::KickExecuted(k) => format!("kick_{k:?}").to_lowercase(),
            Event::EpisodeEnd(r) => format!("end_{}", r.name()),
        }
    }
}

/// One action slot per player of a team; `None` exactly for sent-off players.
pub type FrameActions = [Vec<Option<crate::action::Action>>; 2];

#[derive(Debug, Clone, PartialEq)]
pub struct GameState {
    pub frame: u32,
    pub duration_frames: u32,
    /// Indexed by [`Side::index`].
    pub teams: [Vec<PlayerState>; 2],
    pub ball: BallState,
    pub mode: GameMode,
    pub mode_owner: Side,
    /// Frames spent in the current restart mode.
    pub mode_frames: u32,
    pub score: [u32; 2],
    pub active_player: [usize; 2],
    /// Side that most recently owned the ball.
    pub possession: Option<Side>,
    pub rng: DeterministicRng,
    pub stochastic: bool,
    pub offsides: bool,
    /// Difficulty of each side's built-in behaviour; drives keeper saves.
    pub team_theta: [f64; 2],
    /// Receivers flagged offside by the pass in flight.
    pub offside_flags: Vec<PlayerRef>,
}

impl GameState {
    pub fn team(&self, side: Side) -> &[PlayerState] {
        &self.teams[side.index()]
    }

    pub fn player(&self, r: PlayerRef) -> &PlayerState {
        &self.teams[r.side.index()][r.index]
    }

    pub fn player_mut(&mut self, r: PlayerRef) -> &mut PlayerState {
        &mut self.teams[r.side.index()][r.index]
    }

    pub fn owner_side(&self) -> Option<Side> {
        self.ball.owned_by.map(|r| r.side)
    }

    /// Active player index of `side`.
    pub fn active(&self, side: Side) -> usize {
        self.active_player[side.index()]
    }

    /// Action assignment with `Idle` for every player still on the pitch.
    pub fn idle_actions(&self) -> FrameActions {
        let team = |s: Side| {
            self.team(s)
                .iter()
                .map(|p| (!p.sent_off).then_some(crate::action::Action::Idle))
                .collect()
        };
        [team(Side::Left), team(Side::Right)]
    }

    /// The same situation seen from the other end: teams swap places and
    /// every coordinate is rotated through the centre spot. Involution.
    pub fn mirrored(&self) -> GameState {
        let [left, right] = &self.teams;
        GameState {
            teams: [
                right.iter().map(PlayerState::mirrored).collect(),
                left.iter().map(PlayerState::mirrored).collect(),
            ],
            ball: self.ball.mirrored(),
            mode_owner: self.mode_owner.other(),
            score: [self.score[1], self.score[0]],
            active_player: [self.active_player[1], self.active_player[0]],
            possession: self.possession.map(Side::other),
            team_theta: [self.team_theta[1], self.team_theta[0]],
            offside_flags: self
                .offside_flags
                .iter()
                .map(|r| PlayerRef::new(r.side.other(), r.index))
                .collect(),
            ..self.clone()
        }
    }

    /// 64-bit digest over a canonical little-endian serialisation of frame,
    /// mode, score, ball, and every player's kinematic and rules state, in
    /// left-then-right, index-ascending order. Stable within one build.
    pub fn digest(&self) -> u64 {
        let mut buf = Vec::with_capacity(1024);
        self.canonical_bytes(&mut buf);
        let mut h = DefaultHasher::new();
        h.write(&buf);
        h.finish()
    }

    pub fn canonical_bytes(&self, out: &mut Vec<u8>) {
        let f = |out: &mut Vec<u8>, v: f64| out.extend_from_slice(&v.to_bits().to_le_bytes());
        out.extend_from_slice(&self.frame.to_le_bytes());
        out.push(self.mode.index() as u8);
        out.push(self.mode_owner.index() as u8);
        out.extend_from_slice(&self.score[0].to_le_bytes());
        out.extend_from_slice(&self.score[1].to_le_bytes());
        let b = &self.ball;
        for v in [b.position.x, b.position.y, b.z, b.velocity.x, b.velocity.y, b.vz] {
            f(out, v);
        }
        match b.owned_by {
            Some(r) => out.extend_from_slice(&[1, r.side.index() as u8, r.index as u8]),
            None => out.extend_from_slice(&[0, 0, 0]),
        }
        for team in &self.teams {
            out.push(team.len() as u8);
            for p in team {
                for v in [p.position.x, p.position.y, p.velocity.x, p.velocity.y, p.tiredness] {
                    f(out, v);
                }
                let dir = p.sticky.direction.map_or(0u8, |d| d.action().index());
                out.extend_from_slice(&[
                    dir,
                    p.sticky.sprint as u8,
                    p.sticky.dribble as u8,
                    p.yellow_cards,
                    p.sent_off as u8,
                ]);
            }
        }
    }
}
