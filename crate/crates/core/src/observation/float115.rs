use crate::engine::{GameMode, GameState, PlayerState};
use crate::geometry::{Side, Vec2, PITCH_HALF_LENGTH, PITCH_HALF_WIDTH};

pub const FLOAT115_LEN: usize = 115;
const SLOTS: usize = 11;

pub const OWN_POSITIONS: usize = 0;
pub const OWN_VELOCITIES: usize = 22;
pub const OPP_POSITIONS: usize = 44;
pub const OPP_VELOCITIES: usize = 66;
pub const BALL_POSITION: usize = 88;
pub const BALL_VELOCITY: usize = 91;
pub const OWNERSHIP: usize = 94;
pub const ACTIVE: usize = 97;
pub const MODE: usize = 108;

/// Fixed 115-float summary of the state.
///
/// | indices  | content                                         |
/// |----------|-------------------------------------------------|
/// | 0..22    | own players (x, y) × 11                         |
/// | 22..44   | own velocities (dx, dy) × 11                    |
/// | 44..66   | opponent positions                              |
/// | 66..88   | opponent velocities                             |
/// | 88..91   | ball x, y, z                                    |
/// | 91..94   | ball dx, dy, dz                                 |
/// | 94..97   | ownership one-hot: none, own, opponent          |
/// | 97..108  | own active player one-hot                       |
/// | 108..115 | game mode one-hot                               |
///
/// Absent and sent-off players sit at (−1, −0.42) with zero velocity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Float115(pub [f64; FLOAT115_LEN]);

impl Float115 {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn to_le_bytes(&self) -> Vec<u8> {
        self.0.iter().flat_map(|v| v.to_le_bytes()).collect()
    }
}

pub fn to_float115(state: &GameState, viewer: Side) -> Float115 {
    encode(state, viewer, state.active(viewer))
}

pub(super) fn encode(state: &GameState, viewer: Side, active: usize) -> Float115 {
    // adding 0.0 turns -0.0 into 0.0 so the byte form is canonical
    let f = |p: Vec2| {
        let q = viewer.frame(p);
        (q.x + 0.0, q.y + 0.0)
    };
    let mut v = [0.0; FLOAT115_LEN];
    let mut team = |players: &[PlayerState], pos: usize, vel: usize| {
        for slot in 0..SLOTS {
            let (p, d) = match players.get(slot) {
                Some(pl) if !pl.sent_off => (f(pl.position), f(pl.velocity)),
                _ => ((-PITCH_HALF_LENGTH, -PITCH_HALF_WIDTH), (0.0, 0.0)),
            };
            v[pos + 2 * slot] = p.0;
            v[pos + 2 * slot + 1] = p.1;
            v[vel + 2 * slot] = d.0;
            v[vel + 2 * slot + 1] = d.1;
        }
    };
    team(state.team(viewer), OWN_POSITIONS, OWN_VELOCITIES);
    team(state.team(viewer.other()), OPP_POSITIONS, OPP_VELOCITIES);

    let (bx, by) = f(state.ball.position);
    let (dx, dy) = f(state.ball.velocity);
    v[BALL_POSITION..BALL_POSITION + 3].copy_from_slice(&[bx, by, state.ball.z]);
    v[BALL_VELOCITY..BALL_VELOCITY + 3].copy_from_slice(&[dx, dy, state.ball.vz]);

    let owner = match state.owner_side() {
        None => 0,
        Some(s) if s == viewer => 1,
        Some(_) => 2,
    };
    v[OWNERSHIP + owner] = 1.0;
    v[ACTIVE + active.min(SLOTS - 1)] = 1.0;
    let mode: GameMode = state.mode;
    v[MODE + mode.index()] = 1.0;
    Float115(v)
}
