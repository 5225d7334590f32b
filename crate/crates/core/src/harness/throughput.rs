//! Steps-per-second measurement over independent environments, one per
//! worker thread.

use std::sync::mpsc;
use std::time::Instant;

use crate::action::{Action, ACTION_COUNT};
use crate::env::{EnvOptions, Environment};
use crate::error::EnvError;
use crate::observation::Representation;
use crate::rng::{split_seed, DeterministicRng};
use crate::scenario::ScenarioConfig;

pub const CSV_HEADER: &str = "n_envs,steps,seconds,steps_per_sec,steps_per_day";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThroughputRow {
    pub n_envs: usize,
    pub steps: u64,
    pub seconds: f64,
    pub steps_per_sec: f64,
    pub steps_per_day: f64,
}

impl ThroughputRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{:.6},{:.1},{:.0}",
            self.n_envs, self.steps, self.seconds, self.steps_per_sec, self.steps_per_day
        )
    }
}

/// Runs `n_envs` environments for `steps_per_env` random-action steps
/// each, resetting finished episodes, and times the whole batch.
pub fn run_benchmark(
    n_envs: usize,
    steps_per_env: u64,
    representation: Representation,
    scenario: &ScenarioConfig,
    seed: u64,
) -> Result<ThroughputRow, EnvError> {
    assert!(n_envs >= 1, "need at least one environment");
    let options = EnvOptions { representation, ..Default::default() };
    let mut envs = Vec::with_capacity(n_envs);
    for i in 0..n_envs {
        let mut env = Environment::new(
            scenario.clone(),
            EnvOptions { seed: split_seed(seed, i as u64), ..options.clone() },
        )?;
        env.reset()?;
        envs.push(env);
    }

    let (tx, rx) = mpsc::channel();
    let start = Instant::now();
    std::thread::scope(|scope| {
        for (i, mut env) in envs.into_iter().enumerate() {
            let tx = tx.clone();
            scope.spawn(move || {
                let _ = tx.send(drive(&mut env, steps_per_env, split_seed(seed ^ 0xBE4C, i as u64)));
            });
        }
    });
    let seconds = start.elapsed().as_secs_f64();
    drop(tx);
    let mut steps = 0;
    for r in rx {
        steps += r?;
    }
    let steps_per_sec = steps as f64 / seconds.max(f64::MIN_POSITIVE);
    Ok(ThroughputRow { n_envs, steps, seconds, steps_per_sec, steps_per_day: steps_per_sec * 86_400.0 })
}

fn drive(env: &mut Environment, steps: u64, seed: u64) -> Result<u64, EnvError> {
    let mut rng = DeterministicRng::new(seed);
    let n = env.controlled_total();
    let mut actions = vec![Action::Idle; n];
    for _ in 0..steps {
        for a in &mut actions {
            *a = Action::from_index((rng.next_u64() % ACTION_COUNT as u64) as u8).expect("in range");
        }
        if env.step(&actions)?.done {
            env.reset()?;
        }
    }
    Ok(steps)
}
