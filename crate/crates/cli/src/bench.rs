use anyhow::{ensure, Result};
use clap::ValueEnum;
use pitch_core::env::load_scenario;
use pitch_core::harness::{run_benchmark, ThroughputRow, CSV_HEADER};
use pitch_core::observation::Representation;

#[derive(Clone, Copy, ValueEnum)]
pub enum Output {
    Csv,
    Table,
}

#[derive(clap::Args)]
pub struct Args {
    /// Concurrent environment counts, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    envs: Vec<usize>,
    /// Steps per environment.
    #[arg(long, default_value_t = 1000)]
    steps: u64,
    /// raw, float115, smm or pixels.
    #[arg(long, default_value = "raw")]
    repr: Representation,
    #[arg(long, default_value = "11_vs_11_medium")]
    scenario: String,
    #[arg(long, value_enum, default_value = "csv")]
    out: Output,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

pub fn run(args: Args) -> Result<()> {
    ensure!(args.envs.iter().all(|&n| n >= 1), "--envs values must be at least 1");
    let cfg = load_scenario(&args.scenario)?;
    let mut rows = Vec::new();
    for &n in &args.envs {
        rows.push(run_benchmark(n, args.steps, args.repr, &cfg, args.seed)?);
    }
    print!("{}", render(&rows, args.out));
    Ok(())
}

fn render(rows: &[ThroughputRow], out: Output) -> String {
    let mut s = String::new();
    match out {
        Output::Csv => {
            s.push_str(CSV_HEADER);
            s.push('\n');
            for r in rows {
                s.push_str(&r.to_csv());
                s.push('\n');
            }
        }
        Output::Table => {
            s.push_str(&format!("{:>6} {:>10} {:>9} {:>12} {:>14}\n", "envs", "steps", "seconds", "steps/s", "steps/day"));
            for r in rows {
                s.push_str(&format!(
                    "{:>6} {:>10} {:>9.3} {:>12.0} {:>14.3e}\n",
                    r.n_envs, r.steps, r.seconds, r.steps_per_sec, r.steps_per_day
                ));
            }
        }
    }
    s
}
