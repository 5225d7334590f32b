//! Step/reset environment: the engine plus bots, observations, rewards and
//! termination, driven one controlled-player action list at a time.

use std::collections::BTreeMap;
use std::path::Path;

use crate::action::Action;
use crate::bot::{teammate_action, BotParams, BotTeam};
use crate::engine::{EndReason, Event, FrameActions, GameState};
use crate::error::{ConfigError, ContractError, EnvError};
use crate::geometry::Side;
use crate::observation::{
    observe, FrameStack, Observation, Representation, StackedObservation, MIN_PIXEL_SIZE,
};
use crate::rewards::{scoring_reward, tenths_to_reward, CheckpointTracker, RewardHook, RewardKind};
use crate::rng::split_seed;
use crate::scenario::{builtin, is_episode_done, parse_scenario, ScenarioConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct EnvOptions {
    pub representation: Representation,
    pub stacking: usize,
    pub reward: RewardKind,
    pub seed: u64,
    /// `(width, height)` of pixel observations.
    pub render_size: (usize, usize),
    /// Overrides of the scenario's controlled-player counts.
    pub controlled_left: Option<usize>,
    pub controlled_right: Option<usize>,
}

impl Default for EnvOptions {
    fn default() -> Self {
        Self {
            representation: Representation::Float115,
            stacking: 1,
            reward: RewardKind::Scoring,
            seed: 0,
            render_size: (96, 72),
            controlled_left: None,
            controlled_right: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepInfo {
    pub score_left: u32,
    pub score_right: u32,
    pub frame: u32,
    pub events: Vec<Event>,
    pub end_reason: Option<EndReason>,
}

impl StepInfo {
    /// String map with the frozen keys `score_left, score_right, frame,
    /// events, end_reason`.
    pub fn to_map(&self) -> BTreeMap<&'static str, String> {
        let events: Vec<String> = self.events.iter().map(Event::name).collect();
        BTreeMap::from([
            ("score_left", self.score_left.to_string()),
            ("score_right", self.score_right.to_string()),
            ("frame", self.frame.to_string()),
            ("events", events.join(",")),
            ("end_reason", self.end_reason.map(|r| r.name().to_string()).unwrap_or_default()),
        ])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepResult {
    /// Left-side controlled players first, then right-side ones.
    pub observations: Vec<StackedObservation>,
    pub rewards: Vec<f64>,
    pub done: bool,
    pub info: StepInfo,
}

/// Replacement for the built-in opponent bot. Receives one observation per
/// on-pitch opponent player (in player order, each marking that player as
/// active, in the opponent's own attacking frame) and returns one action
/// per observation, also in the opponent's frame.
pub trait OpponentPolicy: Send {
    fn act(&mut self, observations: &[Observation]) -> Vec<Action>;

    fn reset(&mut self) {}
}

impl<F> OpponentPolicy for F
where
    F: FnMut(&[Observation]) -> Vec<Action> + Send,
{
    fn act(&mut self, observations: &[Observation]) -> Vec<Action> {
        self(observations)
    }
}

/// Opponent policy that reproduces the built-in bot from raw observations.
/// Requires the `raw` representation.
pub struct BotPolicy {
    side: Side,
    team: BotTeam,
}

impl BotPolicy {
    /// `side` is the side the opponent actually plays on.
    pub fn new(theta: f64, side: Side) -> Result<Self, ContractError> {
        Ok(Self { side, team: BotTeam::new(BotParams::new(theta)?) })
    }
}

impl OpponentPolicy for BotPolicy {
    fn act(&mut self, observations: &[Observation]) -> Vec<Action> {
        observations
            .iter()
            .map(|o| {
                let Observation::Raw(view) = o else {
                    panic!("BotPolicy needs raw observations");
                };
                let index = view.active_player[0];
                let world = match self.side {
                    Side::Left => (**view).clone(),
                    Side::Right => view.mirrored(),
                };
                let a = self.team.act(&world, self.side, index);
                match self.side {
                    Side::Left => a,
                    Side::Right => a.mirrored(),
                }
            })
            .collect()
    }

    fn reset(&mut self) {
        self.team.reset();
    }
}

/// Resolves a builtin scenario name or a path to a scenario file.
pub fn load_scenario(name: &str) -> Result<ScenarioConfig, ConfigError> {
    match builtin(name) {
        Ok(cfg) => Ok(cfg),
        Err(unknown) => {
            let path = Path::new(name);
            if !path.is_file() {
                return Err(unknown);
            }
            let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
                path: name.to_string(),
                message: e.to_string(),
            })?;
            parse_scenario(&text)
        }
    }
}

pub fn create_environment(name: &str, options: EnvOptions) -> Result<Environment, EnvError> {
    Environment::new(load_scenario(name)?, options)
}

pub struct Environment {
    config: ScenarioConfig,
    options: EnvOptions,
    controlled: [usize; 2],
    state: Option<GameState>,
    done: bool,
    base_seed: u64,
    episode: u64,
    bots: [BotTeam; 2],
    opponent: Option<Box<dyn OpponentPolicy>>,
    trackers: [CheckpointTracker; 2],
    reward_hook: Option<RewardHook>,
    /// Player index behind each controlled slot, per side.
    slots: [Vec<usize>; 2],
    stacks: Vec<FrameStack>,
}

impl std::fmt::Debug for Environment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Environment")
            .field("scenario", &self.config.name)
            .field("options", &self.options)
            .field("frame", &self.state.as_ref().map(|s| s.frame))
            .finish()
    }
}

impl Environment {
    pub fn new(mut config: ScenarioConfig, options: EnvOptions) -> Result<Self, EnvError> {
        if options.stacking == 0 {
            return Err(ContractError::Stacking.into());
        }
        let (w, h) = options.render_size;
        if w < MIN_PIXEL_SIZE || h < MIN_PIXEL_SIZE {
            return Err(ContractError::RenderSize(w, h).into());
        }
        if let Some(n) = options.controlled_left {
            config.controlled_left = n;
        }
        if let Some(n) = options.controlled_right {
            config.controlled_right = n;
        }
        config.validate()?;
        let bot = BotTeam::new(BotParams::new(config.difficulty)?);
        let controlled = [config.controlled_left, config.controlled_right];
        let stacks = (0..controlled[0] + controlled[1])
            .map(|_| FrameStack::new(options.stacking))
            .collect();
        Ok(Self {
            base_seed: options.seed,
            config,
            options,
            controlled,
            state: None,
            done: false,
            episode: 0,
            bots: [bot.clone(), bot],
            opponent: None,
            trackers: Default::default(),
            reward_hook: None,
            slots: Default::default(),
            stacks,
        })
    }

    pub fn config(&self) -> &ScenarioConfig {
        &self.config
    }

    pub fn options(&self) -> &EnvOptions {
        &self.options
    }

    pub fn state(&self) -> Option<&GameState> {
        self.state.as_ref()
    }

    pub fn is_done(&self) -> bool {
        self.done
    }

    pub fn controlled(&self, side: Side) -> usize {
        self.controlled[side.index()]
    }

    pub fn controlled_total(&self) -> usize {
        self.controlled[0] + self.controlled[1]
    }

    /// Index of the next episode `reset` will start.
    pub fn episode(&self) -> u64 {
        self.episode
    }

    /// Seed of the upcoming episodes; only allowed between episodes.
    pub fn seed(&mut self, value: u64) -> Result<(), ContractError> {
        if self.state.is_some() && !self.done {
            return Err(ContractError::SeedMidEpisode);
        }
        self.base_seed = value;
        self.episode = 0;
        Ok(())
    }

    pub fn set_opponent_policy(&mut self, policy: Box<dyn OpponentPolicy>) {
        self.opponent = Some(policy);
    }

    pub fn clear_opponent_policy(&mut self) {
        self.opponent = None;
    }

    /// Transform applied to every controlled side's reward each step.
    pub fn set_reward_hook(&mut self, hook: RewardHook) {
        self.reward_hook = Some(hook);
    }

    pub fn reset(&mut self) -> Result<Vec<StackedObservation>, EnvError> {
        let seed = split_seed(self.base_seed, self.episode);
        self.episode += 1;
        let state = GameState::reset(&self.config, seed)?;
        self.done = false;
        self.trackers = Default::default();
        for b in &mut self.bots {
            b.reset();
        }
        if let Some(p) = &mut self.opponent {
            p.reset();
        }
        self.state = Some(state);
        self.assign_slots();
        let obs = self.controlled_observations();
        Ok(self.stacks.iter_mut().zip(obs).map(|(s, o)| s.reset(o)).collect())
    }

    /// One frame. `actions` holds one action per controlled player, left
    /// side first, each in that side's own attacking frame.
    pub fn step(&mut self, actions: &[Action]) -> Result<StepResult, ContractError> {
        if self.state.is_none() {
            return Err(ContractError::NotReset);
        }
        if self.done {
            return Err(ContractError::StepAfterDone);
        }
        let expected = self.controlled_total();
        if actions.len() != expected {
            return Err(ContractError::ActionCount { expected, got: actions.len() });
        }
        let frame_actions = self.frame_actions(actions)?;
        let state = self.state.as_mut().expect("checked above");
        let events = state.tick(&frame_actions)?;
        let state = self.state.as_ref().expect("checked above");

        let mut rewards = Vec::with_capacity(expected);
        for side in Side::BOTH {
            if self.controlled[side.index()] == 0 {
                continue;
            }
            let mut r = scoring_reward(&events, side) as f64;
            if self.options.reward == RewardKind::Checkpoints {
                let tenths = self.trackers[side.index()].step_tenths(state, side, &events);
                r += tenths_to_reward(tenths);
            }
            if let Some(hook) = &mut self.reward_hook {
                r = hook(state, &events, side, r);
            }
            rewards.extend(std::iter::repeat_n(r, self.controlled[side.index()]));
        }

        let end_reason = is_episode_done(state, &self.config, &events);
        self.done = end_reason.is_some();
        let info = StepInfo {
            score_left: state.score[0],
            score_right: state.score[1],
            frame: state.frame,
            events,
            end_reason,
        };
        self.assign_slots();
        let obs = self.controlled_observations();
        let observations = self.stacks.iter_mut().zip(obs).map(|(s, o)| s.push(o)).collect();
        Ok(StepResult { observations, rewards, done: self.done, info })
    }

    fn frame_actions(&mut self, actions: &[Action]) -> Result<FrameActions, ContractError> {
        let state = self.state.as_ref().expect("reset before step");
        let mut out: FrameActions = Default::default();
        let mut offset = 0;
        for side in Side::BOTH {
            let team = state.team(side);
            let n = self.controlled[side.index()];
            let team_actions: Vec<Option<Action>> = if n > 0 {
                let mut acts: Vec<Option<Action>> = (0..team.len())
                    .map(|i| {
                        (!team[i].sent_off)
                            .then(|| teammate_action(state, side, i, self.config.teammate_bot_enabled))
                    })
                    .collect();
                for (slot, &player) in self.slots[side.index()].iter().enumerate() {
                    if !team[player].sent_off {
                        let a = actions[offset + slot];
                        acts[player] = Some(if side == Side::Right { a.mirrored() } else { a });
                    }
                }
                offset += n;
                acts
            } else if self.config.lazy_opponents {
                team.iter().map(|p| (!p.sent_off).then_some(Action::Idle)).collect()
            } else if let Some(policy) = &mut self.opponent {
                let on_pitch: Vec<usize> = (0..team.len()).filter(|&i| !team[i].sent_off).collect();
                let obs: Vec<Observation> = on_pitch
                    .iter()
                    .map(|&i| {
                        observe(state, side, i, self.options.representation, self.options.render_size)
                    })
                    .collect();
                let chosen = policy.act(&obs);
                if chosen.len() != on_pitch.len() {
                    return Err(ContractError::PolicyActionCount {
                        expected: on_pitch.len(),
                        got: chosen.len(),
                    });
                }
                let mut acts = vec![None; team.len()];
                for (&i, a) in on_pitch.iter().zip(chosen) {
                    acts[i] = Some(if side == Side::Right { a.mirrored() } else { a });
                }
                acts
            } else {
                self.bots[side.index()].act_team(state, side)
            };
            out[side.index()] = team_actions;
        }
        Ok(out)
    }

    /// Controlled slots: the whole team in index order when every on-pitch
    /// player is controlled, otherwise the active player followed by the
    /// players nearest the ball. Slots beyond the on-pitch count repeat the
    /// last player and their actions are ignored.
    fn assign_slots(&mut self) {
        let state = self.state.as_ref().expect("reset before slots");
        for side in Side::BOTH {
            let n = self.controlled[side.index()];
            let team = state.team(side);
            let on_pitch: Vec<usize> = (0..team.len()).filter(|&i| !team[i].sent_off).collect();
            let mut slots = if n >= on_pitch.len() {
                on_pitch
            } else {
                let active = state.active(side);
                let ball = state.ball.position;
                let mut rest: Vec<usize> = on_pitch.into_iter().filter(|&i| i != active).collect();
                rest.sort_by(|&a, &b| {
                    team[a]
                        .position
                        .distance(ball)
                        .total_cmp(&team[b].position.distance(ball))
                        .then(a.cmp(&b))
                });
                std::iter::once(active).chain(rest).take(n).collect()
            };
            if let Some(&last) = slots.last() {
                slots.resize(n, last);
            }
            self.slots[side.index()] = slots;
        }
    }

    fn controlled_observations(&self) -> Vec<Observation> {
        let state = self.state.as_ref().expect("reset before observing");
        let mut out = Vec::with_capacity(self.controlled_total());
        for side in Side::BOTH {
            for &player in &self.slots[side.index()] {
                out.push(observe(
                    state,
                    side,
                    player,
                    self.options.representation,
                    self.options.render_size,
                ));
            }
        }
        out
    }

    /// Player index behind each controlled slot of `side`.
    pub fn slots(&self, side: Side) -> &[usize] {
        &self.slots[side.index()]
    }
}
