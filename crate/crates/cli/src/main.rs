use anyhow::Result;
use clap::{Parser, Subcommand};

mod bench;
mod eval;
mod replay;
mod serve;

#[derive(Parser)]
#[command(name = "pitch", version, about = "Football RL environment harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Measure environment steps per second at several concurrency levels.
    Bench(bench::Args),
    /// Play one team controller against another and report goal difference.
    Eval(eval::Args),
    /// Record or verify replay files.
    Replay(replay::Args),
    /// Serve live or replayed games to a browser viewer over WebSocket.
    Serve(serve::Args),
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Bench(a) => bench::run(a),
        Command::Eval(a) => eval::run(a),
        Command::Replay(a) => replay::run(a),
        Command::Serve(a) => serve::run(a),
    }
}
