use crate::agents::AgentSpec;
use crate::engine::{GameState, Outcome};
use crate::error::Result;
use crate::gravity;
use crate::map::Player;
use crate::params::GameParameters;

use super::replay::{Replay, ReplayRecord};

#[derive(Debug, Clone)]
pub struct MatchResult {
    pub outcome: Outcome,
    pub ticks: u32,
    pub replay: Replay,
    /// Gravity fields computed on this thread while the match ran.
    pub gravity_computations: u64,
    /// Forward-model ticks consumed by each side's planning.
    pub planning_ticks: [u64; 2],
}

/// Seed for one side's agent, derived from the map seed and a salt.
pub fn agent_seed(map_seed: u64, salt: u64, player: Player) -> u64 {
    let mut x = map_seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(salt.wrapping_mul(0xBF58_476D_1CE4_E5B9))
        .wrapping_add(player.index() as u64 + 1);
    x ^= x >> 31;
    x = x.wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 29)
}

/// Plays one game between two agent identifiers on the map from `map_seed`.
pub fn run_match(a1: &str, a2: &str, params: &GameParameters, map_seed: u64, tick_limit: u32) -> Result<MatchResult> {
    run_match_with_seeds(
        a1,
        a2,
        params,
        map_seed,
        tick_limit,
        [agent_seed(map_seed, 0, Player::One), agent_seed(map_seed, 0, Player::Two)],
    )
}

pub fn run_match_with_seeds(
    a1: &str,
    a2: &str,
    params: &GameParameters,
    map_seed: u64,
    tick_limit: u32,
    agent_seeds: [u64; 2],
) -> Result<MatchResult> {
    let specs = [a1.parse::<AgentSpec>()?, a2.parse::<AgentSpec>()?];
    let mut params = params.clone();
    params.max_ticks = tick_limit;

    let before = gravity::computations_on_this_thread();
    let mut state = GameState::new_game(params.clone(), map_seed)?;
    let mut agents = [specs[0].build(agent_seeds[0]), specs[1].build(agent_seeds[1])];
    let mut records = Vec::with_capacity(tick_limit as usize);

    let outcome = loop {
        if let Some(o) = state.is_terminal() {
            break o;
        }
        let tick = state.tick;
        let act1 = agents[0].act(&state, Player::One);
        let act2 = agents[1].act(&state, Player::Two);
        state.step(act1, act2);
        records.push(ReplayRecord {
            tick,
            a1: act1,
            a2: act2,
            hash: None,
        });
    };

    let replay = Replay::new(
        map_seed,
        params,
        state.actuators,
        [specs[0].to_string(), specs[1].to_string()],
        records,
        Some(outcome),
        state.state_hash(),
    );
    Ok(MatchResult {
        outcome,
        ticks: state.tick,
        replay,
        gravity_computations: gravity::computations_on_this_thread() - before,
        planning_ticks: [agents[0].forward_ticks(), agents[1].forward_ticks()],
    })
}
