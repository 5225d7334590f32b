use anyhow::{ensure, Result};
use pitch_core::env::load_scenario;
use pitch_core::harness::{run_eval, Controller};

#[derive(clap::Args)]
pub struct Args {
    /// Controller: bot:<θ>, idle or random.
    #[arg(long)]
    left: Controller,
    #[arg(long)]
    right: Controller,
    #[arg(long, default_value_t = 10)]
    episodes: usize,
    #[arg(long, default_value = "11_vs_11_medium")]
    scenario: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

pub fn run(args: Args) -> Result<()> {
    ensure!(args.episodes >= 1, "--episodes must be at least 1");
    let cfg = load_scenario(&args.scenario)?;
    let report = run_eval(args.left, args.right, args.episodes, &cfg, args.seed)?;
    println!("{} vs {} on {}: {report}", args.left, args.right, cfg.name);
    let diffs: Vec<String> = report.goal_differences.iter().map(i64::to_string).collect();
    println!("goal differences: {}", diffs.join(" "));
    Ok(())
}
