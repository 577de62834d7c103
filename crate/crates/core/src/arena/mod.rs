//! Reproducible experiments: matches, round-robin leagues, micro-benchmarks
//! and replay files.

pub mod bench;
pub mod league;
pub mod replay;
mod run;

pub use bench::{bench_copy, bench_gravity, bench_next_state, BenchOp, BenchReport};
pub use league::{run_league, GameRecord, LeagueConfig, LeagueResult};
pub use replay::{Replay, ReplayRecord, REPLAY_VERSION};
pub use run::{agent_seed, run_match, run_match_with_seeds, MatchResult};
