//! Canonical formations loaded from `data/formations.txt`.

use std::sync::OnceLock;

use crate::engine::Role;
use crate::geometry::Vec2;

const FORMATIONS_TXT: &str = include_str!("../../data/formations.txt");

#[derive(Debug, Clone, PartialEq)]
pub struct Formation {
    pub slots: Vec<(Role, Vec2)>,
}

impl Formation {
    /// Position of `slot` for a team attacking toward +x; slots past the
    /// end wrap around.
    pub fn slot(&self, slot: usize) -> Vec2 {
        self.slots[slot % self.slots.len()].1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Formations {
    pub base: Formation,
    pub kickoff_attack: Formation,
    pub kickoff_defend: Formation,
}

pub fn formations() -> &'static Formations {
    static CELL: OnceLock<Formations> = OnceLock::new();
    CELL.get_or_init(|| parse_formations(FORMATIONS_TXT).expect("bundled formations file is valid"))
}

fn parse_formations(text: &str) -> Result<Formations, String> {
    let mut base = Vec::new();
    let mut attack = Vec::new();
    let mut defend = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 5 {
            return Err(format!("line {}: expected 5 fields", n + 1));
        }
        let slot: usize = f[1].parse().map_err(|e| format!("line {}: {e}", n + 1))?;
        let role: Role = f[2].parse()?;
        let x: f64 = f[3].parse().map_err(|e| format!("line {}: {e}", n + 1))?;
        let y: f64 = f[4].parse().map_err(|e| format!("line {}: {e}", n + 1))?;
        let target = match f[0] {
            "base" => &mut base,
            "kickoff_attack" => &mut attack,
            "kickoff_defend" => &mut defend,
            other => return Err(format!("line {}: unknown formation {other}", n + 1)),
        };
        if slot != target.len() {
            return Err(format!("line {}: slots must be listed in order", n + 1));
        }
        target.push((role, Vec2::new(x, y)));
    }
    for (name, f) in [("base", &base), ("kickoff_attack", &attack), ("kickoff_defend", &defend)] {
        if f.len() != 11 {
            return Err(format!("formation {name} has {} slots, expected 11", f.len()));
        }
    }
    Ok(Formations {
        base: Formation { slots: base },
        kickoff_attack: Formation { slots: attack },
        kickoff_defend: Formation { slots: defend },
    })
}
