//! The 19-action alphabet and its sticky semantics.

use std::fmt;
use std::str::FromStr;

use crate::geometry::Vec2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Action {
    Idle = 0,
    Left,
    TopLeft,
    Top,
    TopRight,
    Right,
    BottomRight,
    Bottom,
    BottomLeft,
    ShortPass,
    HighPass,
    LongPass,
    Shot,
    Sliding,
    Dribble,
    StopDribble,
    Sprint,
    StopMoving,
    StopSprint,
}

pub const ACTION_COUNT: usize = 19;

impl Action {
    pub const ALL: [Action; ACTION_COUNT] = [
        Action::Idle,
        Action::Left,
        Action::TopLeft,
        Action::Top,
        Action::TopRight,
        Action::Right,
        Action::BottomRight,
        Action::Bottom,
        Action::BottomLeft,
        Action::ShortPass,
        Action::HighPass,
        Action::LongPass,
        Action::Shot,
        Action::Sliding,
        Action::Dribble,
        Action::StopDribble,
        Action::Sprint,
        Action::StopMoving,
        Action::StopSprint,
    ];

    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn from_index(i: u8) -> Option<Action> {
        Action::ALL.get(i as usize).copied()
    }

    pub fn direction(self) -> Option<Direction> {
        Some(match self {
            Action::Left => Direction::Left,
            Action::TopLeft => Direction::TopLeft,
            Action::Top => Direction::Top,
            Action::TopRight => Direction::TopRight,
            Action::Right => Direction::Right,
            Action::BottomRight => Direction::BottomRight,
            Action::Bottom => Direction::Bottom,
            Action::BottomLeft => Direction::BottomLeft,
            _ => return None,
        })
    }

    pub fn kick(self) -> Option<KickKind> {
        Some(match self {
            Action::ShortPass => KickKind::ShortPass,
            Action::HighPass => KickKind::HighPass,
            Action::LongPass => KickKind::LongPass,
            Action::Shot => KickKind::Shot,
            _ => return None,
        })
    }

    /// The same intent seen from the opposite end of the pitch.
    pub fn mirrored(self) -> Action {
        match self.direction() {
            Some(d) => d.mirrored().action(),
            None => self,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Action::Idle => "Idle",
            Action::Left => "Left",
            Action::TopLeft => "TopLeft",
            Action::Top => "Top",
            Action::TopRight => "TopRight",
            Action::Right => "Right",
            Action::BottomRight => "BottomRight",
            Action::Bottom => "Bottom",
            Action::BottomLeft => "BottomLeft",
            Action::ShortPass => "ShortPass",
            Action::HighPass => "HighPass",
            Action::LongPass => "LongPass",
            Action::Shot => "Shot",
            Action::Sliding => "Sliding",
            Action::Dribble => "Dribble",
            Action::StopDribble => "StopDribble",
            Action::Sprint => "Sprint",
            Action::StopMoving => "StopMoving",
            Action::StopSprint => "StopSprint",
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Action {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Action::ALL
            .iter()
            .copied()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown action `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    TopLeft,
    Top,
    TopRight,
    Right,
    BottomRight,
    Bottom,
    BottomLeft,
}

impl Direction {
    pub const ALL: [Direction; 8] = [
        Direction::Left,
        Direction::TopLeft,
        Direction::Top,
        Direction::TopRight,
        Direction::Right,
        Direction::BottomRight,
        Direction::Bottom,
        Direction::BottomLeft,
    ];

    pub fn unit(self) -> Vec2 {
        const D: f64 = std::f64::consts::FRAC_1_SQRT_2;
        match self {
            Direction::Left => Vec2::new(-1.0, 0.0),
            Direction::TopLeft => Vec2::new(-D, -D),
            Direction::Top => Vec2::new(0.0, -1.0),
            Direction::TopRight => Vec2::new(D, -D),
            Direction::Right => Vec2::new(1.0, 0.0),
            Direction::BottomRight => Vec2::new(D, D),
            Direction::Bottom => Vec2::new(0.0, 1.0),
            Direction::BottomLeft => Vec2::new(-D, D),
        }
    }

    pub fn action(self) -> Action {
        match self {
            Direction::Left => Action::Left,
            Direction::TopLeft => Action::TopLeft,
            Direction::Top => Action::Top,
            Direction::TopRight => Action::TopRight,
            Direction::Right => Action::Right,
            Direction::BottomRight => Action::BottomRight,
            Direction::Bottom => Action::Bottom,
            Direction::BottomLeft => Action::BottomLeft,
        }
    }

    pub fn mirrored(self) -> Direction {
        match self {
            Direction::Left => Direction::Right,
            Direction::TopLeft => Direction::BottomRight,
            Direction::Top => Direction::Bottom,
            Direction::TopRight => Direction::BottomLeft,
            Direction::Right => Direction::Left,
            Direction::BottomRight => Direction::TopLeft,
            Direction::Bottom => Direction::Top,
            Direction::BottomLeft => Direction::TopRight,
        }
    }

    /// Nearest of the 8 directions to `heading`; `None` for a zero heading.
    /// Ties go to the earlier entry of [`Direction::ALL`].
    pub fn quantize(heading: Vec2) -> Option<Direction> {
        let h = heading.normalized()?;
        let mut best = Direction::ALL[0];
        let mut best_dot = f64::NEG_INFINITY;
        for d in Direction::ALL {
            let dot = h.dot(d.unit());
            if dot > best_dot {
                best_dot = dot;
                best = d;
            }
        }
        Some(best)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KickKind {
    ShortPass,
    HighPass,
    LongPass,
    Shot,
}

impl KickKind {
    pub fn is_pass(self) -> bool {
        !matches!(self, KickKind::Shot)
    }
}

/// Movement intent that persists across frames until its stop action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct StickyFlags {
    pub direction: Option<Direction>,
    pub sprint: bool,
    pub dribble: bool,
}

impl StickyFlags {
    /// Kicks, `Sliding` and `Idle` leave every flag untouched.
    pub fn apply(mut self, action: Action) -> StickyFlags {
        if let Some(d) = action.direction() {
            self.direction = Some(d);
            return self;
        }
        match action {
            Action::Sprint => self.sprint = true,
            Action::StopSprint => self.sprint = false,
            Action::Dribble => self.dribble = true,
            Action::StopDribble => self.dribble = false,
            Action::StopMoving => self.direction = None,
            _ => {}
        }
        self
    }
}
