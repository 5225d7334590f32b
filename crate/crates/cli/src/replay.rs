use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Subcommand, ValueEnum};
use pitch_core::env::{load_scenario, EnvOptions, Environment};
use pitch_core::harness::{record_episode, verify_replay, Replay, Verdict};
use pitch_core::rng::DeterministicRng;
use pitch_core::{Action, ACTION_COUNT};

#[derive(clap::Args)]
pub struct Args {
    #[command(subcommand)]
    command: ReplayCommand,
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Random,
    Idle,
}

#[derive(Subcommand)]
enum ReplayCommand {
    /// Play one episode and write it to a replay file.
    Record {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value = "11_vs_11_medium")]
        scenario: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Actions for the controlled players.
        #[arg(long, value_enum, default_value = "random")]
        policy: Source,
    },
    /// Re-simulate a replay file and compare its state digests.
    Verify {
        #[arg(long)]
        file: PathBuf,
        /// Expected scenario name; checked against the file header.
        #[arg(long)]
        scenario: Option<String>,
        /// Expected seed; checked against the file header.
        #[arg(long)]
        seed: Option<u64>,
    },
}

pub fn run(args: Args) -> Result<()> {
    match args.command {
        ReplayCommand::Record { file, scenario, seed, policy } => {
            let cfg = load_scenario(&scenario)?;
            let mut rng = DeterministicRng::new(seed ^ 0x5EC0);
            let mut source = |env: &Environment| -> Vec<Action> {
                (0..env.controlled_total())
                    .map(|_| match policy {
                        Source::Random => {
                            Action::from_index((rng.next_u64() % ACTION_COUNT as u64) as u8).expect("in range")
                        }
                        Source::Idle => Action::Idle,
                    })
                    .collect()
            };
            let replay = record_episode(cfg, EnvOptions { seed, ..Default::default() }, &mut source)?;
            replay.save(&file)?;
            println!(
                "recorded {} frames, {} checkpoints to {}",
                replay.frames.len(),
                replay.checkpoints.len(),
                file.display()
            );
            Ok(())
        }
        ReplayCommand::Verify { file, scenario, seed } => {
            let replay = Replay::load(&file)?;
            if let Some(name) = scenario {
                if name != replay.header.scenario_name {
                    bail!("replay is for scenario {}, not {name}", replay.header.scenario_name);
                }
            }
            if let Some(seed) = seed {
                if seed != replay.header.seed {
                    bail!("replay was recorded with seed {}, not {seed}", replay.header.seed);
                }
            }
            match verify_replay(&replay)? {
                Verdict::Ok => {
                    println!("ok: {} frames, {} checkpoints", replay.frames.len(), replay.checkpoints.len());
                    Ok(())
                }
                Verdict::Mismatch { frame } => bail!("mismatch at frame {frame}"),
            }
        }
    }
}
