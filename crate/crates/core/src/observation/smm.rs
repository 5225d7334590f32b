use crate::engine::GameState;
use crate::geometry::{Side, Vec2, PITCH_HALF_LENGTH, PITCH_HALF_WIDTH};

pub const SMM_PLANES: usize = 4;
pub const SMM_ROWS: usize = 72;
pub const SMM_COLS: usize = 96;
const PLANE: usize = SMM_ROWS * SMM_COLS;

/// Four binary 72×96 planes, plane-major then row-major: own team,
/// opponents, ball, own active player. Row 0 is the top touchline
/// (y = −0.42), column 0 the viewer's own goal line.
#[derive(Clone, PartialEq, Eq)]
pub struct SmmPlanes {
    data: Box<[u8]>,
}

impl std::fmt::Debug for SmmPlanes {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sums: Vec<usize> = (0..SMM_PLANES).map(|p| self.plane_sum(p)).collect();
        f.debug_struct("SmmPlanes").field("plane_sums", &sums).finish()
    }
}

impl SmmPlanes {
    pub fn zeros() -> Self {
        Self { data: vec![0; SMM_PLANES * PLANE].into_boxed_slice() }
    }

    pub fn get(&self, plane: usize, row: usize, col: usize) -> u8 {
        self.data[plane * PLANE + row * SMM_COLS + col]
    }

    pub fn set(&mut self, plane: usize, (row, col): (usize, usize)) {
        self.data[plane * PLANE + row * SMM_COLS + col] = 1;
    }

    pub fn plane(&self, plane: usize) -> &[u8] {
        &self.data[plane * PLANE..(plane + 1) * PLANE]
    }

    pub fn plane_sum(&self, plane: usize) -> usize {
        self.plane(plane).iter().map(|&b| b as usize).sum()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.data
    }
}

/// Grid cell `(row, col)` of a pitch position; off-pitch points clamp to
/// the border cells.
pub fn world_to_grid(p: Vec2) -> (usize, usize) {
    let col = ((p.x + PITCH_HALF_LENGTH) / (2.0 * PITCH_HALF_LENGTH) * (SMM_COLS - 1) as f64).round();
    let row = ((p.y + PITCH_HALF_WIDTH) / (2.0 * PITCH_HALF_WIDTH) * (SMM_ROWS - 1) as f64).round();
    let clamp = |v: f64, hi: usize| v.clamp(0.0, hi as f64) as usize;
    (clamp(row, SMM_ROWS - 1), clamp(col, SMM_COLS - 1))
}

pub fn to_smm(state: &GameState, viewer: Side) -> SmmPlanes {
    encode(state, viewer, state.active(viewer))
}

pub(super) fn encode(state: &GameState, viewer: Side, active: usize) -> SmmPlanes {
    let mut planes = SmmPlanes::zeros();
    for (plane, side) in [(0, viewer), (1, viewer.other())] {
        for p in state.team(side).iter().filter(|p| !p.sent_off) {
            planes.set(plane, world_to_grid(viewer.frame(p.position)));
        }
    }
    planes.set(2, world_to_grid(viewer.frame(state.ball.position)));
    if let Some(p) = state.team(viewer).get(active).filter(|p| !p.sent_off) {
        planes.set(3, world_to_grid(viewer.frame(p.position)));
    }
    planes
}
