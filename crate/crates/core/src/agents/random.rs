use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::actuators::{legal_action_count, nth_legal_action};
use crate::engine::{Action, GameState};
use crate::map::Player;

use super::Agent;

/// Uniform over the legal actions.
#[inline]
pub fn random_action<R: Rng>(state: &GameState, player: Player, rng: &mut R) -> Action {
    let n = legal_action_count(state, player);
    if n <= 1 {
        return Action::NoOp;
    }
    nth_legal_action(state, player, rng.gen_range(0..n))
}

pub struct RandomAgent {
    rng: ChaCha8Rng,
}

impl RandomAgent {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl Agent for RandomAgent {
    fn act(&mut self, state: &GameState, player: Player) -> Action {
        random_action(state, player, &mut self.rng)
    }
}
