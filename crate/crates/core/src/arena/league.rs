//! Round-robin leagues: every unordered agent pair plays every map
//! `repeats_per_map` times, optionally alternating sides per repeat.
//!
//! Games run on a pool of worker threads; each game owns its state and
//! agents, and results flow through a channel to a single collector that
//! updates the tables and reports progress.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::agents::AgentSpec;
use crate::engine::Outcome;
use crate::error::{Error, Result};
use crate::map::Player;
use crate::params::GameParameters;

use super::replay::Replay;
use super::run::{agent_seed, run_match_with_seeds};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LeagueConfig {
    pub agents: Vec<String>,
    pub map_seeds: Vec<u64>,
    pub repeats_per_map: usize,
    pub swap_sides: bool,
    pub tick_limit: u32,
    /// Games played concurrently.
    #[serde(default = "one")]
    pub threads: usize,
}

fn one() -> usize {
    1
}

impl LeagueConfig {
    /// Three agents, ten maps (seeds 0-9), two repeats with side swap,
    /// 2000-tick limit: 60 games.
    pub fn replication() -> Self {
        Self {
            agents: vec!["rhea:20:200".into(), "mcts:40:100".into(), "random".into()],
            map_seeds: (0..10).collect(),
            repeats_per_map: 2,
            swap_sides: true,
            tick_limit: 2000,
            threads: 1,
        }
    }

    pub fn total_games(&self) -> usize {
        let k = self.agents.len();
        k * k.saturating_sub(1) / 2 * self.map_seeds.len() * self.repeats_per_map
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GameRecord {
    /// Agent indices into the league's agent list, as P1 and P2.
    pub sides: [usize; 2],
    pub map_seed: u64,
    pub repeat: usize,
    pub outcome: Outcome,
    pub ticks: u32,
    pub seconds: f64,
    #[serde(skip)]
    pub replay: Option<Replay>,
}

impl GameRecord {
    /// League index of the winning agent, if any.
    pub fn winner(&self) -> Option<usize> {
        self.outcome.winner().map(|p| self.sides[p.index()])
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LeagueResult {
    pub agents: Vec<String>,
    /// `win_matrix[row][col]`: games the row agent won against the column agent.
    pub win_matrix: Vec<Vec<u32>>,
    pub totals: Vec<u32>,
    pub draws: u32,
    pub games: Vec<GameRecord>,
    pub complete: bool,
    pub seconds: f64,
}

impl LeagueResult {
    fn empty(agents: &[String]) -> Self {
        let k = agents.len();
        Self {
            agents: agents.to_vec(),
            win_matrix: vec![vec![0; k]; k],
            totals: vec![0; k],
            draws: 0,
            games: Vec::new(),
            complete: false,
            seconds: 0.0,
        }
    }

    fn add(&mut self, g: GameRecord) {
        match g.winner() {
            Some(w) => {
                let loser = if g.sides[0] == w { g.sides[1] } else { g.sides[0] };
                self.win_matrix[w][loser] += 1;
                self.totals[w] += 1;
            }
            None => self.draws += 1,
        }
        self.games.push(g);
    }

    /// Wins of `a` against `b`.
    pub fn wins(&self, a: &str, b: &str) -> u32 {
        let i = self.agents.iter().position(|x| x == a);
        let j = self.agents.iter().position(|x| x == b);
        match (i, j) {
            (Some(i), Some(j)) => self.win_matrix[i][j],
            _ => 0,
        }
    }

    pub fn total_for(&self, a: &str) -> u32 {
        self.agents
            .iter()
            .position(|x| x == a)
            .map_or(0, |i| self.totals[i])
    }

    /// Aligned text table: row agent's wins against each column agent, then
    /// the row total.
    pub fn table(&self) -> String {
        let names: Vec<String> = self.agents.clone();
        let w = names.iter().map(|n| n.len()).max().unwrap_or(4).max(4) + 2;
        let mut out = String::new();
        let _ = write!(out, "{:<w$}", "");
        for n in &names {
            let _ = write!(out, "{n:>w$}");
        }
        let _ = writeln!(out, "{:>w$}", "Wins");
        for (i, n) in names.iter().enumerate() {
            let _ = write!(out, "{n:<w$}");
            for j in 0..names.len() {
                if i == j {
                    let _ = write!(out, "{:>w$}", "-");
                } else {
                    let _ = write!(out, "{:>w$}", self.win_matrix[i][j]);
                }
            }
            let _ = writeln!(out, "{:>w$}", self.totals[i]);
        }
        let _ = writeln!(out, "draws: {}  games: {}", self.draws, self.games.len());
        out
    }
}

struct Job {
    sides: [usize; 2],
    map_seed: u64,
    repeat: usize,
    salt: u64,
}

fn schedule(cfg: &LeagueConfig) -> Vec<Job> {
    let k = cfg.agents.len();
    let mut jobs = Vec::with_capacity(cfg.total_games());
    for i in 0..k {
        for j in i + 1..k {
            for &map_seed in &cfg.map_seeds {
                for repeat in 0..cfg.repeats_per_map {
                    let sides = if cfg.swap_sides && repeat % 2 == 1 { [j, i] } else { [i, j] };
                    let salt = ((i * k + j) as u64) << 32 | repeat as u64;
                    jobs.push(Job { sides, map_seed, repeat, salt });
                }
            }
        }
    }
    jobs
}

/// Plays the whole league. `on_game` sees each finished game and the running
/// tallies, in completion order; use it to persist partial results.
pub fn run_league(
    cfg: &LeagueConfig,
    params: &GameParameters,
    mut on_game: impl FnMut(&GameRecord, &LeagueResult),
) -> Result<LeagueResult> {
    if cfg.agents.len() < 2 {
        return Err(Error::Config(format!(
            "a league needs at least two agents, got {:?}",
            cfg.agents
        )));
    }
    for a in &cfg.agents {
        a.parse::<AgentSpec>()?;
    }
    params.validate().map_err(Error::InvalidParameters)?;

    let started = Instant::now();
    let jobs = schedule(cfg);
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<Result<GameRecord>>();
    let mut result = LeagueResult::empty(&cfg.agents);
    let workers = cfg.threads.clamp(1, jobs.len().max(1));

    let mut first_error = None;
    std::thread::scope(|scope| {
        for _ in 0..workers {
            let tx = tx.clone();
            let jobs = &jobs;
            let next = &next;
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(job) = jobs.get(i) else { break };
                let t0 = Instant::now();
                let a1 = &cfg.agents[job.sides[0]];
                let a2 = &cfg.agents[job.sides[1]];
                let seeds = [
                    agent_seed(job.map_seed, job.salt, Player::One),
                    agent_seed(job.map_seed, job.salt, Player::Two),
                ];
                let record = run_match_with_seeds(a1, a2, params, job.map_seed, cfg.tick_limit, seeds).map(|m| GameRecord {
                    sides: job.sides,
                    map_seed: job.map_seed,
                    repeat: job.repeat,
                    outcome: m.outcome,
                    ticks: m.ticks,
                    seconds: t0.elapsed().as_secs_f64(),
                    replay: Some(m.replay),
                });
                let failed = record.is_err();
                if tx.send(record).is_err() || failed {
                    break;
                }
            });
        }
        drop(tx);
        for record in rx {
            match record {
                Ok(g) => {
                    result.add(g);
                    result.seconds = started.elapsed().as_secs_f64();
                    on_game(result.games.last().expect("just added"), &result);
                }
                Err(e) => {
                    next.store(usize::MAX / 2, Ordering::Relaxed);
                    first_error.get_or_insert(e);
                }
            }
        }
    });

    if let Some(e) = first_error {
        return Err(e);
    }
    result.complete = true;
    result.seconds = started.elapsed().as_secs_f64();
    Ok(result)
}
