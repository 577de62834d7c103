//! Throughput of the engine's key operations.
//!
//! Each worker thread owns an independent game; after a warm-up the worker
//! runs the operation until both the time budget and the minimum operation
//! count are met. Throughput is total operations over the slowest worker's
//! elapsed monotonic time.

use std::hint::black_box;
use std::str::FromStr;
use std::sync::Barrier;
use std::time::{Duration, Instant};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::agents::random_action;
use crate::engine::GameState;
use crate::error::{Error, Result};
use crate::gravity::GravityField;
use crate::map::Player;
use crate::params::GameParameters;

/// Minimum operations per measurement for the per-tick operations.
pub const MIN_OPS: u64 = 1_000_000;

const WARMUP_OPS: u64 = 20_000;
const CHUNK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchOp {
    NextState,
    Copy,
    Gravity,
}

impl FromStr for BenchOp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nextstate" | "next-state" | "next_state" => Ok(BenchOp::NextState),
            "copy" => Ok(BenchOp::Copy),
            "gravity" | "gf" => Ok(BenchOp::Gravity),
            _ => Err(Error::Config(format!("unknown benchmark op {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchReport {
    pub op: BenchOp,
    pub threads: usize,
    pub operations: u64,
    pub seconds: f64,
    pub kops: f64,
}

impl BenchReport {
    /// Nanoseconds per operation per thread.
    pub fn nanos_per_op(&self) -> f64 {
        self.seconds * 1e9 * self.threads as f64 / self.operations as f64
    }
}

/// Runs the closure built by `setup(thread_index)` on each thread; calling it
/// with `n` performs exactly `n` operations. Returns (total ops, slowest elapsed).
fn run_threads<S>(threads: usize, seconds: f64, min_ops: u64, warmup: u64, setup: S) -> (u64, Duration)
where
    S: Fn(usize) -> Box<dyn FnMut(u64) + Send> + Sync,
{
    let threads = threads.max(1);
    let budget = Duration::from_secs_f64(seconds.max(0.0));
    let barrier = Barrier::new(threads);
    let results: Vec<(u64, Duration)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let barrier = &barrier;
                let setup = &setup;
                scope.spawn(move || {
                    let mut work = setup(t);
                    work(warmup);
                    barrier.wait();
                    let start = Instant::now();
                    let mut ops = 0;
                    loop {
                        work(CHUNK.min(min_ops.max(1)));
                        ops += CHUNK.min(min_ops.max(1));
                        let elapsed = start.elapsed();
                        if elapsed >= budget && ops * threads as u64 >= min_ops {
                            return (ops, elapsed);
                        }
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("bench worker panicked")).collect()
    });
    let ops = results.iter().map(|r| r.0).sum();
    let slowest = results.iter().map(|r| r.1).max().unwrap_or_default();
    (ops, slowest)
}

fn report(op: BenchOp, threads: usize, ops: u64, elapsed: Duration) -> BenchReport {
    let seconds = elapsed.as_secs_f64();
    BenchReport {
        op,
        threads: threads.max(1),
        operations: ops,
        seconds,
        kops: ops as f64 / seconds / 1000.0,
    }
}

/// A game a few hundred ticks into random play, with transporters in flight.
pub fn midgame_state(params: &GameParameters, seed: u64) -> Result<GameState> {
    let mut s = GameState::new_game(params.clone(), seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        if s.is_terminal().is_some() {
            break;
        }
        let a1 = random_action(&s, Player::One, &mut rng);
        let a2 = random_action(&s, Player::Two, &mut rng);
        s.step(a1, a2);
    }
    Ok(s)
}

/// `nextState` with random legal actions for both players; a game that ends
/// restarts from its initial state.
pub fn bench_next_state(params: &GameParameters, seconds: f64, threads: usize) -> Result<BenchReport> {
    bench_next_state_with(params, seconds, threads, MIN_OPS)
}

pub fn bench_next_state_with(params: &GameParameters, seconds: f64, threads: usize, min_ops: u64) -> Result<BenchReport> {
    let initial: Vec<GameState> = (0..threads.max(1))
        .map(|t| GameState::new_game(params.clone(), t as u64 + 1))
        .collect::<Result<_>>()?;
    let (ops, elapsed) = run_threads(
        threads,
        seconds,
        min_ops,
        WARMUP_OPS,
        |t| {
            let start = initial[t].clone();
            let mut state = start.clone();
            let mut rng = ChaCha8Rng::seed_from_u64(t as u64);
            Box::new(move |n| {
                for _ in 0..n {
                    if state.is_terminal().is_some() {
                        state = start.clone();
                    }
                    let a1 = random_action(&state, Player::One, &mut rng);
                    let a2 = random_action(&state, Player::Two, &mut rng);
                    black_box(state.step(a1, a2));
                }
            })
        },
    );
    Ok(report(BenchOp::NextState, threads, ops, elapsed))
}

/// `copyState` of a mid-game state.
pub fn bench_copy(params: &GameParameters, seconds: f64, threads: usize) -> Result<BenchReport> {
    let states: Vec<GameState> = (0..threads.max(1))
        .map(|t| midgame_state(params, t as u64 + 1))
        .collect::<Result<_>>()?;
    let (ops, elapsed) = run_threads(
        threads,
        seconds,
        MIN_OPS,
        WARMUP_OPS,
        |t| {
            let state = states[t].clone();
            Box::new(move |n| {
                for _ in 0..n {
                    black_box(black_box(&state).clone());
                }
            })
        },
    );
    Ok(report(BenchOp::Copy, threads, ops, elapsed))
}

/// Full gravity-field computations on the map from seed 1.
pub fn bench_gravity(params: &GameParameters, seconds: f64) -> Result<BenchReport> {
    let state = GameState::new_game(params.clone(), 1)?;
    let planets = state.planets.clone();
    let budget = Duration::from_secs_f64(seconds.max(0.0));
    black_box(GravityField::compute(&planets, params));
    let start = Instant::now();
    let mut ops = 0u64;
    while ops < 3 || start.elapsed() < budget {
        black_box(GravityField::compute(black_box(&planets), params));
        ops += 1;
    }
    Ok(report(BenchOp::Gravity, 1, ops, start.elapsed()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ops() {
        assert_eq!("nextstate".parse::<BenchOp>().unwrap(), BenchOp::NextState);
        assert_eq!("copy".parse::<BenchOp>().unwrap(), BenchOp::Copy);
        assert_eq!("gravity".parse::<BenchOp>().unwrap(), BenchOp::Gravity);
        assert!("nope".parse::<BenchOp>().is_err());
    }

    #[test]
    fn short_runs_report_positive_rates() {
        let p = GameParameters::default();
        let r = bench_next_state_with(&p, 0.0, 1, 10_000).unwrap();
        assert!(r.operations >= 10_000 && r.kops > 0.0);
        let g = bench_gravity(&p, 0.0).unwrap();
        assert_eq!(g.operations, 3);
    }
}
