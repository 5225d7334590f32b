//! Controller-versus-controller evaluation over several episodes with
//! alternating sides.

use std::fmt;
use std::str::FromStr;

use crate::action::{Action, ACTION_COUNT};
use crate::bot::{BotParams, BotTeam};
use crate::engine::GameState;
use crate::error::{ConfigError, ContractError};
use crate::geometry::Side;
use crate::rng::{split_seed, DeterministicRng};
use crate::scenario::{is_episode_done, ScenarioConfig};

/// Who drives a whole team: `bot:θ`, `idle` or `random`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Controller {
    Bot(f64),
    Idle,
    Random,
}

impl fmt::Display for Controller {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Controller::Bot(t) => write!(f, "bot:{t}"),
            Controller::Idle => f.write_str("idle"),
            Controller::Random => f.write_str("random"),
        }
    }
}

impl FromStr for Controller {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let invalid = |message: String| ConfigError::Invalid { entry: "controller".into(), message };
        match s {
            "idle" => Ok(Controller::Idle),
            "random" => Ok(Controller::Random),
            _ => {
                let theta = s
                    .strip_prefix("bot:")
                    .ok_or_else(|| invalid(format!("{s:?}; expected bot:<θ>, idle or random")))?
                    .parse::<f64>()
                    .map_err(|e| invalid(format!("{s:?}: {e}")))?;
                if !(0.0..=1.0).contains(&theta) {
                    return Err(invalid(format!("difficulty {theta} outside [0, 1]")));
                }
                Ok(Controller::Bot(theta))
            }
        }
    }
}

enum Driver {
    Bot(BotTeam),
    Idle,
    Random(DeterministicRng),
}

impl Driver {
    fn new(c: Controller, seed: u64) -> Result<Self, ContractError> {
        Ok(match c {
            Controller::Bot(t) => Driver::Bot(BotTeam::new(BotParams::new(t)?)),
            Controller::Idle => Driver::Idle,
            Controller::Random => Driver::Random(DeterministicRng::new(seed)),
        })
    }

    fn act(&mut self, state: &GameState, side: Side) -> Vec<Option<Action>> {
        match self {
            Driver::Bot(team) => team.act_team(state, side),
            Driver::Idle => state.team(side).iter().map(|p| (!p.sent_off).then_some(Action::Idle)).collect(),
            Driver::Random(rng) => state
                .team(side)
                .iter()
                .map(|p| {
                    let a = Action::from_index((rng.next_u64() % ACTION_COUNT as u64) as u8);
                    a.filter(|_| !p.sent_off)
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    /// Goal difference per episode from the first controller's viewpoint.
    pub goal_differences: Vec<i64>,
    pub mean: f64,
    /// Population standard deviation (0 for a single episode).
    pub std: f64,
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.2} ± {:.2} over {} episodes", self.mean, self.std, self.goal_differences.len())
    }
}

/// Plays `episodes` games of `a` against `b` on seeds `seed..seed+episodes`.
/// `a` plays left (and kicks off) on even episodes and right on odd ones.
pub fn run_eval(
    a: Controller,
    b: Controller,
    episodes: usize,
    scenario: &ScenarioConfig,
    seed: u64,
) -> Result<EvalReport, ContractError> {
    assert!(episodes >= 1, "need at least one episode");
    let mut diffs = Vec::with_capacity(episodes);
    for i in 0..episodes {
        let ep_seed = seed.wrapping_add(i as u64);
        let (left, right) = if i % 2 == 0 { (a, b) } else { (b, a) };
        let [l, r] = play(left, right, scenario, ep_seed)?;
        let d = l as i64 - r as i64;
        diffs.push(if i % 2 == 0 { d } else { -d });
    }
    let n = diffs.len() as f64;
    let mean = diffs.iter().sum::<i64>() as f64 / n;
    let var = diffs.iter().map(|&d| (d as f64 - mean).powi(2)).sum::<f64>() / n;
    Ok(EvalReport { goal_differences: diffs, mean, std: var.sqrt() })
}

/// Final score of one episode between two team controllers.
pub fn play(left: Controller, right: Controller, scenario: &ScenarioConfig, seed: u64) -> Result<[u32; 2], ContractError> {
    let mut state = GameState::reset(scenario, seed).expect("builtin scenarios validate");
    for (side, c) in [(Side::Left, left), (Side::Right, right)] {
        if let Controller::Bot(t) = c {
            state.team_theta[side.index()] = t;
        }
    }
    let mut drivers = [
        Driver::new(left, split_seed(seed, 1))?,
        Driver::new(right, split_seed(seed, 2))?,
    ];
    loop {
        let actions = [drivers[0].act(&state, Side::Left), drivers[1].act(&state, Side::Right)];
        let events = state.tick(&actions)?;
        if is_episode_done(&state, scenario, &events).is_some() {
            return Ok(state.score);
        }
    }
}
