//! Replay files: the controlled players' actions for one episode plus
//! periodic state digests for verification.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! "MPRP" | version u16 | header_len u32 | header
//! block_count u32 | blocks
//! ```
//!
//! The header holds `seed u64, representation u8, reward u8, stacking u16,
//! render_w u16, render_h u16, options_digest u64, name (u16 len + UTF-8),
//! config text (u32 len + UTF-8)`. Each block is `frame_count u32,
//! actions_per_frame u16, frame_count × actions_per_frame action bytes`,
//! followed by a checkpoint `frame u32, state_digest u64, chain_digest u64`.
//! Blocks cover 100 frames; the last one may be shorter.

use std::hash::{DefaultHasher, Hash, Hasher};
use std::path::Path;

use crate::action::{Action, ACTION_COUNT};
use crate::engine::GameState;
use crate::env::{EnvOptions, Environment};
use crate::error::{EnvError, ReplayError};
use crate::observation::Representation;
use crate::rewards::RewardKind;
use crate::scenario::{parse_scenario, ScenarioConfig};

pub const MAGIC: &[u8; 4] = b"MPRP";
pub const VERSION: u16 = 1;
pub const CHECKPOINT_INTERVAL: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct ReplayHeader {
    pub seed: u64,
    pub representation: Representation,
    pub reward: RewardKind,
    pub stacking: usize,
    pub render_size: (usize, usize),
    pub scenario_name: String,
    /// Scenario document with any controlled-count overrides applied.
    pub config_text: String,
}

impl ReplayHeader {
    pub fn options(&self) -> EnvOptions {
        EnvOptions {
            representation: self.representation,
            stacking: self.stacking,
            reward: self.reward,
            seed: self.seed,
            render_size: self.render_size,
            controlled_left: None,
            controlled_right: None,
        }
    }

    pub fn options_digest(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.seed.hash(&mut h);
        self.representation.hash(&mut h);
        self.reward.hash(&mut h);
        self.stacking.hash(&mut h);
        self.render_size.hash(&mut h);
        h.finish()
    }

    pub fn config(&self) -> Result<ScenarioConfig, ReplayError> {
        Ok(parse_scenario(&self.config_text)?)
    }
}

/// Episodes start at frame 0 and advance one frame per step, so a
/// checkpoint's frame is also the number of steps before it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checkpoint {
    pub frame: u32,
    pub state_digest: u64,
    /// Running hash of every action byte up to `frame`.
    pub chain_digest: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Replay {
    pub header: ReplayHeader,
    pub frames: Vec<Vec<Action>>,
    pub checkpoints: Vec<Checkpoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    /// First checkpoint frame whose digests disagree with re-simulation.
    Mismatch { frame: u32 },
}

fn chain(prev: u64, actions: &[Action]) -> u64 {
    let mut h = DefaultHasher::new();
    prev.hash(&mut h);
    for a in actions {
        a.index().hash(&mut h);
    }
    h.finish()
}

/// Plays one episode with actions from `source` (called once per step
/// with the environment about to be stepped) and records it.
pub fn record_episode(
    config: ScenarioConfig,
    options: EnvOptions,
    source: &mut dyn FnMut(&Environment) -> Vec<Action>,
) -> Result<Replay, EnvError> {
    let mut env = Environment::new(config, options)?;
    let header = ReplayHeader {
        seed: env.options().seed,
        representation: env.options().representation,
        reward: env.options().reward,
        stacking: env.options().stacking,
        render_size: env.options().render_size,
        scenario_name: env.config().name.clone(),
        config_text: env.config().to_text(),
    };
    env.reset()?;
    let mut frames = Vec::new();
    let mut checkpoints = Vec::new();
    let mut digest = 0;
    loop {
        let actions = source(&env);
        let done = env.step(&actions)?.done;
        digest = chain(digest, &actions);
        frames.push(actions);
        if done || frames.len() % CHECKPOINT_INTERVAL == 0 {
            let state = env.state().expect("stepped");
            checkpoints.push(Checkpoint { frame: state.frame, state_digest: state.digest(), chain_digest: digest });
        }
        if done {
            break;
        }
    }
    Ok(Replay { header, frames, checkpoints })
}

/// Re-simulates `replay` and compares every checkpoint.
pub fn verify_replay(replay: &Replay) -> Result<Verdict, ReplayError> {
    let mut env = Environment::new(replay.header.config()?, replay.header.options()).map_err(split)?;
    env.reset().map_err(split)?;
    let mut digest = 0;
    let mut next = replay.checkpoints.iter().peekable();
    for (i, actions) in replay.frames.iter().enumerate() {
        env.step(actions)?;
        digest = chain(digest, actions);
        if let Some(cp) = next.next_if(|cp| cp.frame as usize == i + 1) {
            let state = env.state().expect("stepped");
            if cp.state_digest != state.digest() || cp.chain_digest != digest {
                return Ok(Verdict::Mismatch { frame: cp.frame });
            }
        }
    }
    Ok(match next.next() {
        None => Verdict::Ok,
        Some(cp) => Verdict::Mismatch { frame: cp.frame },
    })
}

fn split(e: EnvError) -> ReplayError {
    match e {
        EnvError::Config(c) => ReplayError::Config(c),
        EnvError::Contract(c) => ReplayError::Contract(c),
    }
}

/// Game state after `frames` recorded steps (clamped to the replay length).
pub fn state_at(replay: &Replay, frames: usize) -> Result<GameState, ReplayError> {
    let mut env = Environment::new(replay.header.config()?, replay.header.options()).map_err(split)?;
    env.reset().map_err(split)?;
    for actions in replay.frames.iter().take(frames) {
        env.step(actions)?;
    }
    Ok(env.state().expect("reset").clone())
}

impl Replay {
    pub fn to_bytes(&self) -> Vec<u8> {
        let h = &self.header;
        let mut head = Vec::new();
        head.extend(h.seed.to_le_bytes());
        let repr = Representation::ALL.iter().position(|r| *r == h.representation).unwrap_or(0);
        head.push(repr as u8);
        head.push(match h.reward {
            RewardKind::Scoring => 0,
            RewardKind::Checkpoints => 1,
        });
        head.extend((h.stacking as u16).to_le_bytes());
        head.extend((h.render_size.0 as u16).to_le_bytes());
        head.extend((h.render_size.1 as u16).to_le_bytes());
        head.extend(h.options_digest().to_le_bytes());
        head.extend((h.scenario_name.len() as u16).to_le_bytes());
        head.extend(h.scenario_name.as_bytes());
        head.extend((h.config_text.len() as u32).to_le_bytes());
        head.extend(h.config_text.as_bytes());

        let mut out = Vec::new();
        out.extend(MAGIC);
        out.extend(VERSION.to_le_bytes());
        out.extend((head.len() as u32).to_le_bytes());
        out.extend(head);
        out.extend((self.checkpoints.len() as u32).to_le_bytes());
        let mut start = 0;
        for cp in &self.checkpoints {
            let end = (cp.frame as usize).clamp(start, self.frames.len());
            let block = &self.frames[start..end];
            out.extend((block.len() as u32).to_le_bytes());
            let width = block.first().map_or(0, Vec::len);
            out.extend((width as u16).to_le_bytes());
            for f in block {
                out.extend(f.iter().map(|a| a.index()));
            }
            out.extend(cp.frame.to_le_bytes());
            out.extend(cp.state_digest.to_le_bytes());
            out.extend(cp.chain_digest.to_le_bytes());
            start = end;
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Replay, ReplayError> {
        let mut r = Reader { bytes, pos: 0 };
        if r.take(4)? != MAGIC {
            return Err(ReplayError::Format("bad magic".into()));
        }
        let version = r.u16()?;
        if version != VERSION {
            return Err(ReplayError::Format(format!("unsupported version {version}")));
        }
        let head_len = r.u32()? as usize;
        let mut h = Reader { bytes: r.take(head_len)?, pos: 0 };
        let seed = h.u64()?;
        let representation = *Representation::ALL
            .get(h.u8()? as usize)
            .ok_or_else(|| ReplayError::Format("bad representation".into()))?;
        let reward = match h.u8()? {
            0 => RewardKind::Scoring,
            1 => RewardKind::Checkpoints,
            other => return Err(ReplayError::Format(format!("bad reward kind {other}"))),
        };
        let stacking = h.u16()? as usize;
        let render_size = (h.u16()? as usize, h.u16()? as usize);
        let options_digest = h.u64()?;
        let name_len = h.u16()? as usize;
        let scenario_name = h.string(name_len)?;
        let text_len = h.u32()? as usize;
        let config_text = h.string(text_len)?;
        let header = ReplayHeader {
            seed,
            representation,
            reward,
            stacking,
            render_size,
            scenario_name,
            config_text,
        };
        if header.options_digest() != options_digest {
            return Err(ReplayError::Format("header digest mismatch".into()));
        }

        let blocks = r.u32()?;
        let mut frames = Vec::new();
        let mut checkpoints = Vec::new();
        for _ in 0..blocks {
            let count = r.u32()? as usize;
            let width = r.u16()? as usize;
            for _ in 0..count {
                let raw = r.take(width)?;
                let actions = raw
                    .iter()
                    .map(|&b| {
                        Action::from_index(b).ok_or_else(|| {
                            ReplayError::Format(format!("action byte {b} outside 0..{ACTION_COUNT}"))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                frames.push(actions);
            }
            checkpoints.push(Checkpoint { frame: r.u32()?, state_digest: r.u64()?, chain_digest: r.u64()? });
        }
        if r.pos != bytes.len() {
            return Err(ReplayError::Format("trailing bytes".into()));
        }
        Ok(Replay { header, frames, checkpoints })
    }

    pub fn save(&self, path: &Path) -> Result<(), ReplayError> {
        std::fs::write(path, self.to_bytes())
            .map_err(|source| ReplayError::Io { path: path.display().to_string(), source })
    }

    pub fn load(path: &Path) -> Result<Replay, ReplayError> {
        let bytes = std::fs::read(path)
            .map_err(|source| ReplayError::Io { path: path.display().to_string(), source })?;
        Replay::from_bytes(&bytes)
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], ReplayError> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| ReplayError::Format("truncated".into()))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8, ReplayError> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16, ReplayError> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().expect("2 bytes")))
    }

    fn u32(&mut self) -> Result<u32, ReplayError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }

    fn u64(&mut self) -> Result<u64, ReplayError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }

    fn string(&mut self, n: usize) -> Result<String, ReplayError> {
        String::from_utf8(self.take(n)?.to_vec()).map_err(|_| ReplayError::Format("invalid UTF-8".into()))
    }
}
