use crate::engine::params::{GOAL_HALF_WIDTH, PENALTY_BOX_DEPTH, PENALTY_BOX_HALF_WIDTH};
use crate::engine::GameState;
use crate::geometry::{Side, Vec2, PITCH_HALF_LENGTH, PITCH_HALF_WIDTH};

pub const MIN_PIXEL_SIZE: usize = 16;

const GRASS: [u8; 3] = [46, 125, 50];
const LINE: [u8; 3] = [235, 235, 235];
const STRIP: [u8; 3] = [20, 20, 20];
const LEFT: [u8; 3] = [220, 50, 40];
const RIGHT: [u8; 3] = [40, 90, 220];
const BALL: [u8; 3] = [255, 255, 255];
const RING: [u8; 3] = [255, 220, 0];

/// RGB raster, row-major, three bytes per pixel.
#[derive(Clone, PartialEq, Eq)]
pub struct PixelFrame {
    pub width: usize,
    pub height: usize,
    pub data: Vec<u8>,
}

impl std::fmt::Debug for PixelFrame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PixelFrame({}x{})", self.width, self.height)
    }
}

impl PixelFrame {
    pub fn pixel(&self, x: usize, y: usize) -> [u8; 3] {
        let i = 3 * (y * self.width + x);
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }
}

struct Canvas {
    w: usize,
    h: usize,
    data: Vec<u8>,
}

impl Canvas {
    fn put(&mut self, x: i64, y: i64, c: [u8; 3]) {
        if x >= 0 && y >= 0 && (x as usize) < self.w && (y as usize) < self.h {
            let i = 3 * (y as usize * self.w + x as usize);
            self.data[i..i + 3].copy_from_slice(&c);
        }
    }

    fn rect(&mut self, x0: i64, y0: i64, x1: i64, y1: i64, c: [u8; 3]) {
        for y in y0..=y1 {
            for x in x0..=x1 {
                self.put(x, y, c);
            }
        }
    }

    fn outline(&mut self, x0: i64, y0: i64, x1: i64, y1: i64, c: [u8; 3]) {
        for x in x0..=x1 {
            self.put(x, y0, c);
            self.put(x, y1, c);
        }
        for y in y0..=y1 {
            self.put(x0, y, c);
            self.put(x1, y, c);
        }
    }

    fn disc(&mut self, cx: i64, cy: i64, r: i64, c: [u8; 3]) {
        for dy in -r..=r {
            for dx in -r..=r {
                if dx * dx + dy * dy <= r * r {
                    self.put(cx + dx, cy + dy, c);
                }
            }
        }
    }

    fn ring(&mut self, cx: i64, cy: i64, r: i64, c: [u8; 3]) {
        for dy in -r..=r {
            for dx in -r..=r {
                let d2 = dx * dx + dy * dy;
                if d2 <= r * r && d2 > (r - 1) * (r - 1) {
                    self.put(cx + dx, cy + dy, c);
                }
            }
        }
    }
}

/// 3×5 glyphs for the digits and '-', one row per nibble (bit 2 = left).
const GLYPHS: [[u8; 5]; 11] = [
    [7, 5, 5, 5, 7],
    [2, 6, 2, 2, 7],
    [7, 1, 7, 4, 7],
    [7, 1, 3, 1, 7],
    [5, 5, 7, 1, 1],
    [7, 4, 7, 1, 7],
    [7, 4, 7, 5, 7],
    [7, 1, 1, 1, 1],
    [7, 5, 7, 5, 7],
    [7, 5, 7, 1, 7],
    [0, 0, 7, 0, 0],
];

/// Top-down render: score strip above a pitch with lines, team discs, the
/// ball and a ring around the left team's active player.
/// Sizes below [`MIN_PIXEL_SIZE`] are raised to it.
pub fn to_pixels(state: &GameState, width: usize, height: usize) -> PixelFrame {
    let (w, h) = (width.max(MIN_PIXEL_SIZE), height.max(MIN_PIXEL_SIZE));
    let mut cv = Canvas { w, h, data: vec![0; w * h * 3] };
    let strip = (h / 8).max(6) as i64;
    cv.rect(0, 0, w as i64 - 1, strip - 1, STRIP);
    cv.rect(0, strip, w as i64 - 1, h as i64 - 1, GRASS);

    let field_h = h as i64 - strip;
    let to_px = |p: Vec2| -> (i64, i64) {
        let x = (p.x + PITCH_HALF_LENGTH) / (2.0 * PITCH_HALF_LENGTH) * (w - 1) as f64;
        let y = (p.y + PITCH_HALF_WIDTH) / (2.0 * PITCH_HALF_WIDTH) * (field_h - 1) as f64;
        (x.round() as i64, strip + y.round() as i64)
    };

    let (x0, y0) = to_px(Vec2::new(-PITCH_HALF_LENGTH, -PITCH_HALF_WIDTH));
    let (x1, y1) = to_px(Vec2::new(PITCH_HALF_LENGTH, PITCH_HALF_WIDTH));
    cv.outline(x0, y0, x1, y1, LINE);
    let (mx, _) = to_px(Vec2::ZERO);
    cv.rect(mx, y0, mx, y1, LINE);
    for side in Side::BOTH {
        let g = side.sign() * PITCH_HALF_LENGTH;
        let (bx0, by0) = to_px(Vec2::new(g - side.sign() * PENALTY_BOX_DEPTH, -PENALTY_BOX_HALF_WIDTH));
        let (bx1, by1) = to_px(Vec2::new(g, PENALTY_BOX_HALF_WIDTH));
        cv.outline(bx0.min(bx1), by0, bx0.max(bx1), by1, LINE);
        let (gx, gy0) = to_px(Vec2::new(g, -GOAL_HALF_WIDTH));
        let (_, gy1) = to_px(Vec2::new(g, GOAL_HALF_WIDTH));
        cv.rect(gx - 1, gy0, gx, gy1, BALL);
    }

    let r = ((w as f64 / 96.0).round() as i64).max(1);
    for (side, colour) in [(Side::Left, LEFT), (Side::Right, RIGHT)] {
        for p in state.team(side).iter().filter(|p| !p.sent_off) {
            let (x, y) = to_px(p.position);
            cv.disc(x, y, r, colour);
        }
    }
    if let Some(p) = state.team(Side::Left).get(state.active(Side::Left)) {
        let (x, y) = to_px(p.position);
        cv.ring(x, y, r + 2, RING);
    }
    let (bx, by) = to_px(state.ball.position);
    cv.disc(bx, by, (r / 2).max(1), BALL);

    let text = format!("{}-{}", state.score[0], state.score[1]);
    let scale = ((strip - 2) / 5).max(1);
    let text_w = text.len() as i64 * 4 * scale;
    let mut pen = (w as i64 - text_w) / 2;
    let top = (strip - 5 * scale) / 2;
    for ch in text.chars() {
        let g = match ch {
            '-' => GLYPHS[10],
            d => GLYPHS[d.to_digit(10).unwrap_or(0) as usize],
        };
        for (row, bits) in g.iter().enumerate() {
            for col in 0..3 {
                if bits & (4 >> col) != 0 {
                    let px = pen + col * scale;
                    let py = top + row as i64 * scale;
                    cv.rect(px, py, px + scale - 1, py + scale - 1, LINE);
                }
            }
        }
        pen += 4 * scale;
    }
    PixelFrame { width: w, height: h, data: cv.data }
}
