//! Observation encodings of a [`GameState`] as seen by one side.
//!
//! Every encoding is expressed in the viewer's attacking frame: for the
//! right side all coordinates are rotated by 180° so both teams attack +x.

mod float115;
mod pixels;
mod smm;
mod stack;

pub use float115::{to_float115, Float115, FLOAT115_LEN};
pub use pixels::{to_pixels, PixelFrame, MIN_PIXEL_SIZE};
pub use smm::{to_smm, world_to_grid, SmmPlanes, SMM_COLS, SMM_PLANES, SMM_ROWS};
pub use stack::{stack_obs, FrameStack, StackedObservation};

use std::fmt;
use std::str::FromStr;

use crate::engine::GameState;
use crate::error::ConfigError;
use crate::geometry::Side;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Representation {
    Raw,
    #[default]
    Float115,
    Smm,
    Pixels,
}

impl Representation {
    pub const ALL: [Representation; 4] = [Self::Raw, Self::Float115, Self::Smm, Self::Pixels];

    pub fn name(self) -> &'static str {
        match self {
            Self::Raw => "raw",
            Self::Float115 => "float115",
            Self::Smm => "smm",
            Self::Pixels => "pixels",
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Representation {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.into_iter().find(|r| r.name() == s).ok_or_else(|| ConfigError::Invalid {
            entry: "representation".into(),
            message: format!("unknown representation {s:?}; expected raw, float115, smm or pixels"),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Observation {
    /// Full state in the viewer's frame: the viewer is always `Side::Left`.
    Raw(Box<GameState>),
    Float115(Float115),
    Smm(SmmPlanes),
    Pixels(PixelFrame),
}

impl Observation {
    pub fn representation(&self) -> Representation {
        match self {
            Self::Raw(_) => Representation::Raw,
            Self::Float115(_) => Representation::Float115,
            Self::Smm(_) => Representation::Smm,
            Self::Pixels(_) => Representation::Pixels,
        }
    }

    /// Array shape in the wire layout (`[115]`, `[4, 72, 96]`, `[h, w, 3]`;
    /// raw states have the length of their canonical byte encoding).
    pub fn shape(&self) -> Vec<usize> {
        match self {
            Self::Raw(s) => {
                let mut out = Vec::new();
                s.canonical_bytes(&mut out);
                vec![out.len()]
            }
            Self::Float115(_) => vec![FLOAT115_LEN],
            Self::Smm(_) => vec![SMM_PLANES, SMM_ROWS, SMM_COLS],
            Self::Pixels(p) => vec![p.height, p.width, 3],
        }
    }

    /// Wire bytes: little-endian f64 for floats, one byte per cell or channel
    /// otherwise.
    pub fn to_bytes(&self) -> Vec<u8> {
        match self {
            Self::Raw(s) => {
                let mut out = Vec::new();
                s.canonical_bytes(&mut out);
                out
            }
            Self::Float115(f) => f.to_le_bytes(),
            Self::Smm(s) => s.as_bytes().to_vec(),
            Self::Pixels(p) => p.data.clone(),
        }
    }
}

/// Encodes `state` for `viewer`, marking `active` (an index into the
/// viewer's team) as the active player.
pub fn observe(
    state: &GameState,
    viewer: Side,
    active: usize,
    repr: Representation,
    render_size: (usize, usize),
) -> Observation {
    match repr {
        Representation::Float115 => {
            Observation::Float115(float115::encode(state, viewer, active))
        }
        Representation::Smm => Observation::Smm(smm::encode(state, viewer, active)),
        Representation::Raw => Observation::Raw(Box::new(viewpoint_state(state, viewer, active))),
        Representation::Pixels => {
            let (w, h) = render_size;
            Observation::Pixels(to_pixels(&viewpoint_state(state, viewer, active), w, h))
        }
    }
}

/// `state` rotated so that `viewer` plays as the left team, with `active`
/// marked as its active player.
pub fn viewpoint_state(state: &GameState, viewer: Side, active: usize) -> GameState {
    let mut s = match viewer {
        Side::Left => state.clone(),
        Side::Right => state.mirrored(),
    };
    s.active_player[0] = active;
    s
}
