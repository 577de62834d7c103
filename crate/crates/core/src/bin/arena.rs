use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use planet_wars::arena::{bench_copy, bench_gravity, bench_next_state, run_league, BenchOp, LeagueConfig, Replay};
use planet_wars::{GameParameters, Result};

#[derive(Parser)]
#[command(name = "arena", about = "Planet Wars leagues, benchmarks and replays")]
struct Cli {
    /// Game parameters as a JSON file (defaults otherwise).
    #[arg(long, global = true)]
    params: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Round-robin league between agents.
    League {
        /// Comma-separated agent identifiers, e.g. rhea:20:200,mcts:40:100,random
        #[arg(long, value_delimiter = ',', required = true)]
        agents: Vec<String>,
        /// Number of maps; seeds 0..maps.
        #[arg(long, default_value_t = 10)]
        maps: u64,
        #[arg(long, default_value_t = 2)]
        repeats: usize,
        #[arg(long, default_value_t = 2000)]
        tick_limit: u32,
        /// Play every repeat from the same side instead of alternating.
        #[arg(long)]
        no_swap: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Results JSON, rewritten after every game.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Directory for one replay file per game.
        #[arg(long)]
        replays: Option<PathBuf>,
    },
    /// Forward-model throughput.
    Bench {
        #[arg(long, default_value = "nextstate")]
        op: BenchOp,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, default_value_t = 5.0)]
        seconds: f64,
    },
    /// Re-simulate a replay file and check its recorded hashes.
    Replay {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn load_params(path: Option<&Path>) -> Result<GameParameters> {
    let Some(path) = path else { return Ok(GameParameters::default()) };
    let p: GameParameters = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    p.validate().map_err(planet_wars::Error::InvalidParameters)?;
    Ok(p)
}

fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let tmp = path.with_extension("partial");
    std::fs::write(&tmp, text)?;
    std::fs::rename(tmp, path)?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let params = load_params(cli.params.as_deref())?;
    match cli.command {
        Command::League { agents, maps, repeats, tick_limit, no_swap, threads, out, replays } => {
            let cfg = LeagueConfig {
                agents,
                map_seeds: (0..maps).collect(),
                repeats_per_map: repeats,
                swap_sides: !no_swap,
                tick_limit,
                threads,
            };
            if let Some(dir) = &replays {
                std::fs::create_dir_all(dir)?;
            }
            let total = cfg.total_games();
            let mut io_error = None;
            let result = run_league(&cfg, &params, |game, so_far| {
                let names = [&so_far.agents[game.sides[0]], &so_far.agents[game.sides[1]]];
                eprintln!(
                    "[{}/{total}] map {} repeat {}: {} vs {} -> {:?} after {} ticks ({:.1}s)",
                    so_far.games.len(),
                    game.map_seed,
                    game.repeat,
                    names[0],
                    names[1],
                    game.outcome,
                    game.ticks,
                    game.seconds
                );
                let persist = || -> Result<()> {
                    if let Some(path) = &out {
                        write_atomic(path, &serde_json::to_string_pretty(so_far)?)?;
                    }
                    if let (Some(dir), Some(replay)) = (&replays, &game.replay) {
                        let name = format!("map{}-r{}-{}-{}.json", game.map_seed, game.repeat, game.sides[0], game.sides[1]);
                        replay.save(dir.join(name))?;
                    }
                    Ok(())
                };
                if let Err(e) = persist() {
                    io_error.get_or_insert(e);
                }
            })?;
            if let Some(e) = io_error {
                return Err(e);
            }
            if let Some(path) = &out {
                write_atomic(path, &serde_json::to_string_pretty(&result)?)?;
            }
            print!("{}", result.table());
            println!("{:.1}s", result.seconds);
        }
        Command::Bench { op, threads, seconds } => {
            let report = match op {
                BenchOp::NextState => bench_next_state(&params, seconds, threads)?,
                BenchOp::Copy => bench_copy(&params, seconds, threads)?,
                BenchOp::Gravity => bench_gravity(&params, seconds)?,
            };
            println!("{}", serde_json::to_string(&report)?);
            println!(
                "{:<10} {:>2} thread(s) {:>12} ops {:>8.2}s {:>10.1} kop/s {:>10.1} ns/op",
                format!("{:?}", report.op),
                report.threads,
                report.operations,
                report.seconds,
                report.kops,
                report.nanos_per_op()
            );
        }
        Command::Replay { input } => {
            let replay = Replay::load(&input)?;
            let end = replay.simulate()?;
            println!(
                "{} vs {}: {:?} after {} ticks, final hash {} verified",
                replay.agents[0],
                replay.agents[1],
                end.is_terminal(),
                end.tick,
                end.state_hash()
            );
        }
    }
    Ok(())
}
