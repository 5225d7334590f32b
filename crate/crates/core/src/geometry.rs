//! Pitch coordinates and the two sides.
//!
//! The pitch interior is `x ∈ [-1, 1]`, `y ∈ [-0.42, 0.42]`. The left team
//! attacks toward `x = +1`. `y` grows downward on screen, so `Top` moves
//! toward `y = -0.42`.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

pub const PITCH_HALF_LENGTH: f64 = 1.0;
pub const PITCH_HALF_WIDTH: f64 = 0.42;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn length(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).length()
    }

    /// Unit vector in the same direction, or `None` for (near) zero vectors.
    pub fn normalized(self) -> Option<Vec2> {
        let len = self.length();
        (len > 1e-12).then(|| self * (1.0 / len))
    }

    pub fn rotated(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(self.x * c - self.y * s, self.x * s + self.y * c)
    }

    pub fn is_on_pitch(self) -> bool {
        self.x.abs() <= PITCH_HALF_LENGTH && self.y.abs() <= PITCH_HALF_WIDTH
    }

    pub fn clamp_to(self, half_length: f64, half_width: f64) -> Vec2 {
        Vec2::new(
            self.x.clamp(-half_length, half_length),
            self.y.clamp(-half_width, half_width),
        )
    }

    /// Distance from `self` to the segment `a..b`.
    pub fn distance_to_segment(self, a: Vec2, b: Vec2) -> f64 {
        let ab = b - a;
        let len2 = ab.dot(ab);
        if len2 <= 1e-18 {
            return self.distance(a);
        }
        let t = ((self - a).dot(ab) / len2).clamp(0.0, 1.0);
        self.distance(a + ab * t)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Left, Side::Right];

    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    /// +1 for the side attacking toward `x = +1`.
    pub fn sign(self) -> f64 {
        match self {
            Side::Left => 1.0,
            Side::Right => -1.0,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Maps a world point into this side's attacking frame (and back: the
    /// map is an involution).
    pub fn frame(self, p: Vec2) -> Vec2 {
        match self {
            Side::Left => p,
            Side::Right => -p,
        }
    }

    /// Centre of the goal this side attacks, in world coordinates.
    pub fn target_goal(self) -> Vec2 {
        Vec2::new(self.sign() * PITCH_HALF_LENGTH, 0.0)
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

impl std::str::FromStr for Side {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(format!("unknown side `{other}` (expected left|right)")),
        }
    }
}
