//! A small round-robin league. Pass `--full` for the three-agent,
//! sixty-game replication preset (a few minutes).

use planet_wars::arena::{run_league, LeagueConfig};
use planet_wars::GameParameters;

fn main() -> planet_wars::Result<()> {
    let cfg = if std::env::args().any(|a| a == "--full") {
        LeagueConfig::replication()
    } else {
        LeagueConfig {
            agents: vec!["rhea:10:100".into(), "mcts:20:50".into(), "heuristic".into(), "random".into()],
            map_seeds: (0..3).collect(),
            repeats_per_map: 2,
            swap_sides: true,
            tick_limit: 2000,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    };
    let total = cfg.total_games();
    let result = run_league(&cfg, &GameParameters::default(), |g, so_far| {
        eprint!("\r{}/{total} games, last: map {} {:?} in {} ticks   ", so_far.games.len(), g.map_seed, g.outcome, g.ticks);
    })?;
    eprintln!();
    print!("{}", result.table());
    println!("{:.1}s", result.seconds);
    Ok(())
}
