//! Acceptance suite: one PASS / FAIL / NOT RUN line per criterion.
//!
//! Runs without the libtest harness so every line reaches stdout. The
//! process exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::thread;
use std::time::Instant;

use pitch_core::bot::{bot_action, decision_rng, BotParams};
use pitch_core::engine::offside_check;
use pitch_core::env::{EnvOptions, Environment};
use pitch_core::harness::{record_episode, run_benchmark, run_eval, Controller, Replay, Verdict};
use pitch_core::observation::{to_float115, to_smm, world_to_grid, Representation, SMM_COLS, SMM_PLANES, SMM_ROWS};
use pitch_core::rewards::{checkpoint_step, checkpoint_thresholds, scoring_reward, tenths_to_reward, CheckpointTracker, RewardKind};
use pitch_core::scenario::{builtin_names, BENCHMARK_NAMES};
use pitch_core::{
    builtin, Action, DeterministicRng, EndReason, Event, GameState, PlayerRef, Role, ScenarioConfig, Side, Vec2,
    ACTION_COUNT,
};

const DETERMINISM_FRAMES: usize = 3000;
const DETERMINISM_CHECK_EVERY: usize = 100;
const DETERMINISM_BUDGET_SECS: f64 = 10.0;
const BENCHMARK_EPISODE_FRAMES: usize = 3000;
const ACADEMY_MAX_FRAMES: usize = 400;
const CHECKPOINT_GRID: usize = 100;
const FLOAT115_LEN: usize = 115;
const EVAL_EPISODES: usize = 20;
const EVAL_SEED: u64 = 0;
const SIGN_TEST_ALPHA: f64 = 0.05;
const MIRROR_MATCH_MAX_ABS_MEAN: f64 = 1.0;
const EVAL_BUDGET_SECS: f64 = 300.0;
const THROUGHPUT_MIN_CORES: usize = 4;
const THROUGHPUT_STEPS_PER_ENV: u64 = 2000;
const THROUGHPUT_RATE_REL_TOL: f64 = 1e-9;
const REPLAY_EPISODES: usize = 10;
const REPLAY_SINGLE_MUTATIONS: usize = 10;

enum Outcome {
    Pass(String),
    NotRun(String),
}

type Criterion = fn() -> Result<Outcome, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 8] = [
        ("determinism", determinism),
        ("checkpoint reward", checkpoint_reward),
        ("episode length", episode_length),
        ("observation contracts", observation_contracts),
        ("offside", offside),
        ("difficulty ordering", difficulty_ordering),
        ("throughput", throughput),
        ("replay integrity", replay_integrity),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(Outcome::Pass(detail)) => println!("PASS    {name}: {detail} [{secs:.1}s]"),
            Ok(Outcome::NotRun(detail)) => println!("NOT RUN {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL    {name}: {detail} [{secs:.1}s]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn scenario(name: &str) -> Result<ScenarioConfig, String> {
    builtin(name).map_err(|e| e.to_string())
}

fn env_for(config: ScenarioConfig, options: EnvOptions) -> Result<Environment, String> {
    Environment::new(config, options).map_err(|e| e.to_string())
}

fn random_actions(rng: &mut DeterministicRng, n: usize) -> Vec<Action> {
    (0..n).map(|_| Action::ALL[(rng.next_u64() % ACTION_COUNT as u64) as usize]).collect()
}

fn scripted(frame: usize) -> Action {
    Action::ALL[(frame * 7 + frame / 13) % ACTION_COUNT]
}

/// Per-frame state digests of one scripted episode.
fn scripted_digests(config: &ScenarioConfig, seed: u64) -> Result<Vec<u64>, String> {
    let mut env = env_for(config.clone(), EnvOptions { seed, representation: Representation::Raw, ..Default::default() })?;
    env.reset().map_err(|e| e.to_string())?;
    let mut digests = Vec::new();
    while digests.len() < DETERMINISM_FRAMES && !env.is_done() {
        let actions = vec![scripted(digests.len()); env.controlled_total()];
        env.step(&actions).map_err(|e| e.to_string())?;
        digests.push(env.state().expect("stepped").digest());
    }
    Ok(digests)
}

fn determinism() -> Result<Outcome, String> {
    let start = Instant::now();
    let mut config = scenario("11_vs_11_medium")?;
    config.stochastic = false;
    let a = scripted_digests(&config, 1)?;
    let b = scripted_digests(&config, 2)?;
    ensure!(a.len() == DETERMINISM_FRAMES, "deterministic run lasted {} frames", a.len());
    for f in (DETERMINISM_CHECK_EVERY..=DETERMINISM_FRAMES).step_by(DETERMINISM_CHECK_EVERY) {
        ensure!(a[f - 1] == b[f - 1], "deterministic digests differ at frame {f}");
    }

    config.stochastic = true;
    let s1 = scripted_digests(&config, 7)?;
    let s2 = scripted_digests(&config, 7)?;
    let s3 = scripted_digests(&config, 8)?;
    ensure!(s1 == s2, "stochastic runs with equal seeds differ");
    let diverged = s1.iter().zip(&s3).position(|(x, y)| x != y);
    let Some(at) = diverged else {
        return Err("stochastic runs with seeds 7 and 8 never diverge".into());
    };
    ensure!(at + 1 < DETERMINISM_FRAMES, "seeds 7 and 8 diverge only at frame {}", at + 1);
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < DETERMINISM_BUDGET_SECS, "took {secs:.2}s, budget {DETERMINISM_BUDGET_SECS}s");
    Ok(Outcome::Pass(format!(
        "{} checkpoints identical in deterministic mode, equal seeds identical, seeds 7/8 diverge at frame {}",
        DETERMINISM_FRAMES / DETERMINISM_CHECK_EVERY,
        at + 1
    )))
}

/// Regions a fresh tracker would collect at distance `d`, counted with
/// integer-scaled thresholds `9 d <= 8.91 - 0.8 i`.
fn oracle_regions(d: f64) -> u32 {
    (0..10).filter(|&i| 9.0 * d <= 8.91 - 0.8 * i as f64).count() as u32
}

fn checkpoint_reward() -> Result<Outcome, String> {
    let thresholds = checkpoint_thresholds();
    ensure!((thresholds[0] - 0.99).abs() < 1e-12 && (thresholds[9] - 0.19).abs() < 1e-12, "thresholds {thresholds:?}");

    let base = GameState::reset(&scenario("11_vs_11_medium")?, 0).map_err(|e| e.to_string())?;
    let mut cells = 0;
    for side in [Side::Left, Side::Right] {
        for i in 0..CHECKPOINT_GRID {
            for j in 0..CHECKPOINT_GRID {
                let x = (i as f64 + 0.5) / CHECKPOINT_GRID as f64;
                let y = -0.42 + 0.84 * (j as f64 + 0.5) / CHECKPOINT_GRID as f64;
                let mut state = base.clone();
                state.ball.position = side.frame(Vec2::new(x, y));
                state.ball.owned_by = Some(PlayerRef::new(side, 9));
                let expected = oracle_regions(((1.0 - x).powi(2) + y * y).sqrt());
                for already in [0, 3, 7, 10] {
                    let tracker = CheckpointTracker { collected: already, exhausted: already == 10 };
                    let (delta, next) = checkpoint_step(tracker, &state, side, &[]);
                    let want = expected.saturating_sub(already);
                    ensure!(
                        delta == want as f64 / 10.0 && next.collected == expected.max(already),
                        "{side:?} ({x}, {y}) with {already} collected: paid {delta}, expected {want} tenths"
                    );
                }
                let (other, _) = checkpoint_step(CheckpointTracker::default(), &state, side.other(), &[]);
                ensure!(other == 0.0, "paid the non-owning side");
                cells += 1;
            }
        }
    }

    let mut scored_fresh = 0;
    let mut goals_after_exhaustion = 0;
    let runs: [(&str, Side, u64); 6] = [
        ("11_vs_11_easy", Side::Left, 0),
        ("11_vs_11_easy", Side::Left, 1),
        ("11_vs_11_easy", Side::Right, 2),
        ("empty_goal", Side::Left, 3),
        ("run_to_score", Side::Left, 4),
        ("run_to_score_with_keeper", Side::Left, 5),
    ];
    for (name, side, seed) in runs {
        let (fresh, late) = checkpoint_trajectory(name, side, seed)?;
        scored_fresh += fresh;
        goals_after_exhaustion += late;
    }
    ensure!(scored_fresh > 0, "no trajectory scored with checkpoints outstanding");
    ensure!(goals_after_exhaustion > 0, "no goal scored after exhaustion");
    Ok(Outcome::Pass(format!(
        "{cells} grid cells match the oracle with prefix collection; {scored_fresh} scoring trajectories total 1.0, \
         {goals_after_exhaustion} later goals paid 0"
    )))
}

/// Plays one episode with the controlled player on `side` driven by a
/// strong bot, checking the environment's checkpoint reward step by step.
/// Returns (trajectories that scored while unexhausted, goals after exhaustion).
fn checkpoint_trajectory(name: &str, side: Side, seed: u64) -> Result<(u32, u32), String> {
    let (left, right) = match side {
        Side::Left => (Some(1), Some(0)),
        Side::Right => (Some(0), Some(1)),
    };
    let options = EnvOptions {
        reward: RewardKind::Checkpoints,
        seed,
        controlled_left: left,
        controlled_right: right,
        ..Default::default()
    };
    let mut env = env_for(scenario(name)?, options)?;
    env.reset().map_err(|e| e.to_string())?;
    let params = BotParams::new(0.95).map_err(|e| e.to_string())?;
    let mut tracker = CheckpointTracker::default();
    let mut total = 0;
    let mut fresh = 0;
    let mut late = 0;
    while !env.is_done() {
        let state = env.state().expect("reset");
        let idx = env.slots(side)[0];
        let action = bot_action(state, side, idx, &params, &mut decision_rng(state, side, idx));
        let action = if side == Side::Left { action } else { action.mirrored() };
        let step = env.step(&[action]).map_err(|e| e.to_string())?;
        let was_exhausted = tracker.exhausted;
        let tenths = tracker.step_tenths(env.state().expect("stepped"), side, &step.info.events);
        total += tenths;
        let expected = scoring_reward(&step.info.events, side) as f64 + tenths_to_reward(tenths);
        ensure!(
            step.rewards[0] == expected,
            "{name} frame {}: reward {} but scoring plus checkpoints is {expected}",
            step.info.frame,
            step.rewards[0]
        );
        ensure!(total <= 10, "{name}: collected {total} tenths");
        if step.info.events.contains(&Event::Goal(side)) {
            if was_exhausted {
                ensure!(tenths == 0, "{name}: goal after exhaustion paid {tenths} tenths");
                late += 1;
            } else {
                ensure!(total == 10, "{name}: scoring trajectory totals {total} tenths");
                fresh += 1;
            }
        }
    }
    Ok((fresh, late))
}

fn run_random_episode(config: &ScenarioConfig, seed: u64) -> Result<(usize, Option<EndReason>), String> {
    let mut env = env_for(config.clone(), EnvOptions { seed, ..Default::default() })?;
    env.reset().map_err(|e| e.to_string())?;
    let mut rng = DeterministicRng::new(seed ^ 0xA11CE);
    let mut steps = 0;
    loop {
        let actions = random_actions(&mut rng, env.controlled_total());
        let r = env.step(&actions).map_err(|e| e.to_string())?;
        steps += 1;
        if r.done {
            return Ok((steps, r.info.end_reason));
        }
        ensure!(steps <= 10 * BENCHMARK_EPISODE_FRAMES, "{} runs past {steps} steps", config.name);
    }
}

fn episode_length() -> Result<Outcome, String> {
    let mut benchmarks: Vec<&str> = BENCHMARK_NAMES.to_vec();
    benchmarks.push("11_vs_11_stochastic");
    for name in &benchmarks {
        let (steps, reason) = run_random_episode(&scenario(name)?, 11)?;
        ensure!(
            steps == BENCHMARK_EPISODE_FRAMES && reason == Some(EndReason::Time),
            "{name} ended after {steps} steps ({reason:?})"
        );
    }
    let mut academies = 0;
    let mut longest = 0;
    for name in builtin_names() {
        if benchmarks.contains(&name) {
            continue;
        }
        let config = scenario(name)?;
        let limit = if config.lazy_opponents { BENCHMARK_EPISODE_FRAMES } else { ACADEMY_MAX_FRAMES };
        for seed in 0..3 {
            let (steps, _) = run_random_episode(&config, seed)?;
            ensure!(steps <= limit, "{name} seed {seed} ran {steps} steps, limit {limit}");
            if !config.lazy_opponents {
                longest = longest.max(steps);
            }
        }
        academies += 1;
    }
    Ok(Outcome::Pass(format!(
        "{} benchmark names end at exactly {BENCHMARK_EPISODE_FRAMES} by time; {academies} academy scenarios \
         within limits (longest non-lazy {longest} <= {ACADEMY_MAX_FRAMES}, lazy opponents <= {BENCHMARK_EPISODE_FRAMES})",
        benchmarks.len()
    )))
}

fn one_hot(slice: &[f64]) -> bool {
    slice.iter().all(|&v| v == 0.0 || v == 1.0) && slice.iter().sum::<f64>() == 1.0
}

fn sampled_states() -> Result<Vec<GameState>, String> {
    let mut states = Vec::new();
    for (name, seed) in [("11_vs_11_hard", 5), ("11_vs_11_easy", 6)] {
        let options = EnvOptions {
            seed,
            representation: Representation::Raw,
            controlled_left: Some(0),
            controlled_right: Some(0),
            ..Default::default()
        };
        let mut env = env_for(scenario(name)?, options)?;
        env.reset().map_err(|e| e.to_string())?;
        while !env.is_done() {
            env.step(&[]).map_err(|e| e.to_string())?;
            let state = env.state().expect("stepped");
            if state.frame % 25 == 0 {
                states.push(state.clone());
            }
        }
    }
    for name in ["empty_goal", "3_vs_1_with_keeper", "corner", "counterattack_hard"] {
        states.push(GameState::reset(&scenario(name)?, 1).map_err(|e| e.to_string())?);
    }
    Ok(states)
}

fn observation_contracts() -> Result<Outcome, String> {
    let corners = [
        (Vec2::new(-1.0, -0.42), (0, 0)),
        (Vec2::new(1.0, -0.42), (0, SMM_COLS - 1)),
        (Vec2::new(-1.0, 0.42), (SMM_ROWS - 1, 0)),
        (Vec2::new(1.0, 0.42), (SMM_ROWS - 1, SMM_COLS - 1)),
        (Vec2::new(0.0, 0.0), (36, 48)),
    ];
    for (p, cell) in corners {
        ensure!(world_to_grid(p) == cell, "world_to_grid({p:?}) = {:?}, expected {cell:?}", world_to_grid(p));
    }

    let states = sampled_states()?;
    for s in &states {
        ensure!(s.mirrored().mirrored() == *s, "double mirror changes frame {}", s.frame);
        for side in [Side::Left, Side::Right] {
            let f = to_float115(s, side);
            let v = f.as_slice();
            ensure!(v.len() == FLOAT115_LEN, "float115 length {}", v.len());
            ensure!(
                one_hot(&v[94..97]) && one_hot(&v[97..108]) && one_hot(&v[108..115]),
                "float115 one-hot blocks broken at frame {}",
                s.frame
            );
            ensure!(v.iter().all(|x| x.is_finite()), "non-finite float115 value");
            let mirrored = to_float115(&s.mirrored(), side.other());
            ensure!(f.to_le_bytes() == mirrored.to_le_bytes(), "float115 mirror identity fails at frame {}", s.frame);

            let smm = to_smm(s, side);
            let bytes = smm.as_bytes();
            ensure!(bytes.len() == SMM_PLANES * SMM_ROWS * SMM_COLS, "smm has {} bytes", bytes.len());
            ensure!(bytes.iter().all(|&b| b <= 1), "smm not binary");
            ensure!(smm.plane_sum(2) == 1, "ball plane sums to {}", smm.plane_sum(2));
            ensure!(smm.plane_sum(3) == 1, "active plane sums to {}", smm.plane_sum(3));
            let on_pitch = s.team(side).iter().filter(|p| !p.sent_off).count();
            ensure!((1..=on_pitch).contains(&smm.plane_sum(0)), "own plane sums to {}", smm.plane_sum(0));
            ensure!(smm == to_smm(&s.mirrored(), side.other()), "smm mirror identity fails at frame {}", s.frame);
        }
    }
    Ok(Outcome::Pass(format!(
        "{} sampled states: float115 length and one-hots, binary SMM with one ball cell, mirror identities; \
         grid corners exact",
        states.len()
    )))
}

struct OffsideCase {
    attack: Side,
    ball: f64,
    attackers: &'static [f64],
    defenders: &'static [f64],
    sent_off: &'static [f64],
    flagged: &'static [usize],
}

const fn case(
    attack: Side,
    ball: f64,
    attackers: &'static [f64],
    defenders: &'static [f64],
    flagged: &'static [usize],
) -> OffsideCase {
    OffsideCase { attack, ball, attackers, defenders, sent_off: &[], flagged }
}

use Side::{Left as L, Right as R};

/// Hand-labelled positions. Attacker indices in `flagged` count receivers
/// only (the passer stands on the ball).
const OFFSIDE_CASES: [OffsideCase; 50] = [
    case(L, -0.2, &[-0.1], &[-0.5, 0.9], &[]),
    case(L, 0.1, &[0.5], &[0.9, 0.4], &[0]),
    case(L, 0.1, &[0.3], &[0.9, 0.4], &[]),
    case(L, 0.8, &[0.7], &[0.95, 0.5], &[]),
    case(L, 0.2, &[0.4], &[0.95, 0.4], &[]),
    case(L, 0.4, &[0.4], &[0.95, 0.1], &[]),
    case(L, 0.0, &[0.2, 0.6], &[0.95, 0.5], &[1]),
    case(L, 0.0, &[0.6, 0.2], &[0.95, 0.5], &[0]),
    case(L, -0.3, &[0.6, 0.7, 0.2], &[0.95, 0.65, 0.3], &[1]),
    case(L, 0.5, &[0.55], &[0.95, 0.52], &[0]),
    case(L, 0.5, &[0.45], &[0.95, 0.3], &[]),
    case(L, 0.3, &[0.8], &[0.95], &[0]),
    OffsideCase { attack: L, ball: 0.3, attackers: &[0.8], defenders: &[], sent_off: &[0.5], flagged: &[0] },
    case(L, -0.5, &[0.05], &[0.95, -0.2], &[0]),
    case(L, -0.5, &[-0.05], &[0.95, -0.2], &[]),
    case(L, 0.2, &[0.9], &[0.95, 0.92], &[]),
    case(L, 0.2, &[0.93], &[0.95, 0.92], &[0]),
    case(L, 0.2, &[0.97], &[0.95, 0.92], &[0]),
    case(L, 0.6, &[0.7, 0.65, 0.3, 0.8], &[0.95, 0.75, 0.6, 0.2], &[3]),
    case(L, 0.0, &[0.3, 0.31, 0.32], &[0.95, 0.305], &[1, 2]),
    case(L, 0.1, &[0.5, 0.6], &[0.95, 0.7, 0.65], &[]),
    case(L, 0.1, &[0.5, 0.6], &[0.7, 0.95, 0.4], &[]),
    case(L, 0.1, &[0.5, 0.75], &[0.7, 0.95, 0.4], &[1]),
    case(L, 0.0, &[0.01], &[0.95, -0.9], &[0]),
    case(L, 0.0, &[0.0], &[0.95, -0.9], &[]),
    case(L, 0.9, &[0.95], &[1.0, 0.98], &[]),
    case(L, 0.9, &[0.99], &[1.0, 0.98], &[0]),
    case(L, -0.9, &[0.1, 0.2, 0.3, 0.4, 0.5], &[0.95, 0.25], &[2, 3, 4]),
    case(L, 0.35, &[0.1, 0.2, 0.3, 0.4, 0.5], &[0.95, 0.25], &[3, 4]),
    case(L, 0.0, &[0.5], &[0.3, 0.2], &[0]),
    case(R, 0.2, &[0.1], &[0.5, -0.9], &[]),
    case(R, -0.1, &[-0.5], &[-0.9, -0.4], &[0]),
    case(R, -0.1, &[-0.3], &[-0.9, -0.4], &[]),
    case(R, -0.8, &[-0.7], &[-0.95, -0.5], &[]),
    case(R, -0.2, &[-0.4], &[-0.95, -0.4], &[]),
    case(R, 0.3, &[-0.05, 0.05], &[-0.95, 0.2], &[0]),
    case(R, -0.3, &[-0.8], &[-0.95], &[0]),
    OffsideCase { attack: R, ball: -0.3, attackers: &[-0.8], defenders: &[], sent_off: &[-0.5], flagged: &[0] },
    case(R, 0.0, &[-0.3, -0.6, -0.2], &[-0.95, -0.5, -0.1], &[1]),
    case(R, -0.6, &[-0.7, -0.8, -0.5], &[-0.95, -0.75, -0.6], &[1]),
    case(R, -0.5, &[-0.55], &[-0.95, -0.52], &[0]),
    case(R, -0.9, &[-0.99], &[-1.0, -0.98], &[0]),
    case(R, -0.9, &[-0.95], &[-1.0, -0.98], &[]),
    case(R, 0.5, &[-0.1, -0.2, -0.3], &[-0.95, -0.15], &[1, 2]),
    case(R, -0.25, &[-0.1, -0.2, -0.3], &[-0.95, -0.15], &[2]),
    OffsideCase { attack: L, ball: 0.1, attackers: &[0.6], defenders: &[0.95], sent_off: &[0.7], flagged: &[0] },
    case(L, 0.2, &[0.6, 0.61], &[0.95, 0.6, 0.61], &[]),
    case(L, 0.2, &[0.62], &[0.95, 0.6, 0.61], &[0]),
    case(R, 0.0, &[-0.61], &[-0.95, -0.6, -0.61], &[]),
    case(R, 0.0, &[-0.62, -0.01], &[-0.95, -0.6, -0.61], &[0]),
];

fn offside_flags(c: &OffsideCase) -> Result<Vec<usize>, String> {
    let mut attacking = vec![(Role::Forward, Vec2::new(c.ball, 0.0))];
    attacking.extend(c.attackers.iter().enumerate().map(|(k, &x)| (Role::Forward, Vec2::new(x, -0.3 + 0.08 * k as f64))));
    let mut defending: Vec<(Role, Vec2)> = c
        .defenders
        .iter()
        .chain(c.sent_off)
        .enumerate()
        .map(|(k, &x)| (Role::Defender, Vec2::new(x, 0.35 - 0.08 * k as f64)))
        .collect();
    if defending.is_empty() {
        defending.push((Role::Defender, Vec2::new(0.0, 0.4)));
    }
    let (left, right) = match c.attack {
        Side::Left => (attacking, defending),
        Side::Right => (defending, attacking),
    };
    let config = ScenarioConfig {
        left_placements: left.clone(),
        right_placements: right.clone(),
        ball_start: Vec2::new(c.ball, 0.0),
        controlled_left: 0,
        ..Default::default()
    };
    let mut state = GameState::reset(&config, 0).map_err(|e| e.to_string())?;
    for (side, placements) in [(Side::Left, &left), (Side::Right, &right)] {
        for (i, (_, p)) in placements.iter().enumerate() {
            state.teams[side.index()][i].position = *p;
        }
    }
    state.ball.position = Vec2::new(c.ball, 0.0);
    for k in 0..c.sent_off.len() {
        state.teams[c.attack.other().index()][c.defenders.len() + k].sent_off = true;
    }
    Ok(offside_check(&state, PlayerRef::new(c.attack, 0))
        .iter()
        .map(|r| {
            assert_eq!(r.side, c.attack);
            r.index - 1
        })
        .collect())
}

fn offside() -> Result<Outcome, String> {
    for (i, c) in OFFSIDE_CASES.iter().enumerate() {
        let mut got = offside_flags(c)?;
        got.sort_unstable();
        ensure!(got == c.flagged, "fixture {i}: flagged {got:?}, expected {:?}", c.flagged);
    }
    Ok(Outcome::Pass(format!("{} hand-labelled fixtures match", OFFSIDE_CASES.len())))
}

/// One-sided exact binomial sign test: P(X >= wins) for X ~ Bin(n, 1/2).
fn sign_test_p(wins: u64, n: u64) -> f64 {
    let mut p = 0.0;
    let mut coef = 1.0;
    for k in 0..=n {
        if k >= wins {
            p += coef;
        }
        coef = coef * (n - k) as f64 / (k + 1) as f64;
    }
    p / 2f64.powi(n as i32)
}

fn difficulty_ordering() -> Result<Outcome, String> {
    let start = Instant::now();
    let config = scenario("11_vs_11_medium")?;
    let strong = run_eval(Controller::Bot(0.95), Controller::Bot(0.05), EVAL_EPISODES, &config, EVAL_SEED)
        .map_err(|e| e.to_string())?;
    let wins = strong.goal_differences.iter().filter(|&&d| d > 0).count() as u64;
    let decided = strong.goal_differences.iter().filter(|&&d| d != 0).count() as u64;
    let p = sign_test_p(wins, decided);
    ensure!(strong.mean > 0.0 && p < SIGN_TEST_ALPHA, "bot:0.95 vs bot:0.05 {strong}, sign test p = {p:.3e}");
    let even = run_eval(Controller::Bot(0.6), Controller::Bot(0.6), EVAL_EPISODES, &config, EVAL_SEED)
        .map_err(|e| e.to_string())?;
    ensure!(even.mean.abs() <= MIRROR_MATCH_MAX_ABS_MEAN, "bot:0.6 vs bot:0.6 {even}");
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < EVAL_BUDGET_SECS, "took {secs:.1}s, budget {EVAL_BUDGET_SECS}s");
    Ok(Outcome::Pass(format!(
        "bot:0.95 vs bot:0.05 {strong} ({wins}/{decided} won, p = {p:.2e}); bot:0.6 vs bot:0.6 {even}"
    )))
}

fn throughput() -> Result<Outcome, String> {
    let config = scenario("11_vs_11_medium")?;
    let mut rows = Vec::new();
    for n in [1, 2, 4] {
        let row = run_benchmark(n, THROUGHPUT_STEPS_PER_ENV, Representation::Raw, &config, 0).map_err(|e| e.to_string())?;
        ensure!(row.n_envs == n && row.steps == n as u64 * THROUGHPUT_STEPS_PER_ENV, "row accounting {row:?}");
        let rate = row.steps as f64 / row.seconds;
        ensure!((row.steps_per_sec - rate).abs() <= THROUGHPUT_RATE_REL_TOL * rate, "steps_per_sec {row:?}");
        ensure!(
            (row.steps_per_day - row.steps_per_sec * 86_400.0).abs() <= THROUGHPUT_RATE_REL_TOL * row.steps_per_day,
            "steps_per_day {row:?}"
        );
        rows.push(row);
    }
    let summary: Vec<String> =
        rows.iter().map(|r| format!("n={} {:.0} steps/s ({:.2e} steps/day)", r.n_envs, r.steps_per_sec, r.steps_per_day)).collect();
    let summary = summary.join(", ");
    let cores = thread::available_parallelism().map_or(1, |n| n.get());
    if cores < THROUGHPUT_MIN_CORES {
        return Ok(Outcome::NotRun(format!(
            "precondition unmet: {cores} core(s) available, scaling needs {THROUGHPUT_MIN_CORES}; measured {summary}"
        )));
    }
    ensure!(
        rows.windows(2).all(|w| w[1].steps_per_sec > w[0].steps_per_sec),
        "throughput does not increase with environments: {summary}"
    );
    Ok(Outcome::Pass(summary))
}

/// Byte offsets of every recorded action in a serialized replay.
fn action_offsets(bytes: &[u8]) -> Vec<usize> {
    let u32_at = |p: usize| u32::from_le_bytes(bytes[p..p + 4].try_into().unwrap()) as usize;
    let mut pos = 6;
    pos += 4 + u32_at(pos);
    let blocks = u32_at(pos);
    pos += 4;
    let mut offsets = Vec::new();
    for _ in 0..blocks {
        let count = u32_at(pos);
        let width = u16::from_le_bytes([bytes[pos + 4], bytes[pos + 5]]) as usize;
        pos += 6;
        offsets.extend(pos..pos + count * width);
        pos += count * width + 20;
    }
    assert_eq!(pos, bytes.len());
    offsets
}

fn detected(bytes: &[u8]) -> bool {
    match Replay::from_bytes(bytes) {
        Err(_) => true,
        Ok(replay) => !matches!(verify_or_err(&replay), Ok(Verdict::Ok)),
    }
}

fn verify_or_err(replay: &Replay) -> Result<Verdict, String> {
    pitch_core::harness::verify_replay(replay).map_err(|e| e.to_string())
}

fn replay_integrity() -> Result<Outcome, String> {
    let names = [
        "11_vs_11_easy",
        "11_vs_11_hard",
        "empty_goal",
        "run_to_score_with_keeper",
        "3_vs_1_with_keeper",
        "corner",
        "counterattack_easy",
        "pass_and_shoot_with_keeper",
        "11_vs_11_medium",
        "empty_goal_close",
    ];
    let mut mutations = 0;
    for (i, name) in names.iter().enumerate().take(REPLAY_EPISODES) {
        let mut config = scenario(name)?;
        config.stochastic = i % 2 == 0;
        let seed = 1000 + i as u64;
        let mut rng = DeterministicRng::new(seed);
        let replay = record_episode(config, EnvOptions { seed, ..Default::default() }, &mut |env| {
            random_actions(&mut rng, env.controlled_total())
        })
        .map_err(|e| e.to_string())?;
        let bytes = replay.to_bytes();
        let loaded = Replay::from_bytes(&bytes).map_err(|e| e.to_string())?;
        ensure!(loaded == replay, "{name}: serialization round trip differs");
        ensure!(verify_or_err(&loaded)? == Verdict::Ok, "{name}: clean replay does not verify");

        let offsets = action_offsets(&bytes);
        let mut pick = DeterministicRng::new(seed ^ 0xF11B);
        let mut mutate = |bytes: &mut Vec<u8>, count: usize| {
            for _ in 0..count {
                let at = offsets[(pick.next_u64() % offsets.len() as u64) as usize];
                let shift = 1 + pick.next_u64() % (ACTION_COUNT as u64 - 1);
                bytes[at] = ((bytes[at] as u64 + shift) % ACTION_COUNT as u64) as u8;
            }
        };
        for _ in 0..REPLAY_SINGLE_MUTATIONS {
            let mut tampered = bytes.clone();
            mutate(&mut tampered, 1);
            ensure!(detected(&tampered), "{name}: single action change not detected");
            mutations += 1;
        }
        let mut tampered = bytes.clone();
        mutate(&mut tampered, 3);
        ensure!(tampered == bytes || detected(&tampered), "{name}: three action changes not detected");
        mutations += 1;
        let mut tampered = bytes.clone();
        tampered[offsets[offsets.len() / 2]] = ACTION_COUNT as u8;
        ensure!(Replay::from_bytes(&tampered).is_err(), "{name}: out-of-range action byte loads");
        mutations += 1;
    }
    Ok(Outcome::Pass(format!(
        "{REPLAY_EPISODES} episodes verify in both modes; {mutations} action-byte mutations all detected"
    )))
}
