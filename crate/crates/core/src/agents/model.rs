use rand::Rng;

use crate::actuators::{for_each_legal, ActuatorKind};
use crate::engine::GameState;
use crate::map::Player;

use super::random::random_action;

/// Added to (or subtracted from) the score of a rollout that ends the game.
pub const TERMINAL_BONUS: f64 = 1000.0;

/// What a planner needs from a game: indexed actions for the planning
/// player, a stochastic one-tick advance, and an evaluation.
pub trait PlanningModel: Clone {
    /// Size of the planning player's action space.
    fn action_count(&self) -> usize;

    /// Legal action indices in the current state.
    fn legal(&self, out: &mut Vec<usize>);

    /// Applies `action` for the planning player and advances one tick.
    fn advance<R: Rng>(&mut self, action: usize, rng: &mut R);

    fn is_terminal(&self) -> bool;

    /// Value from the planning player's point of view.
    fn evaluate(&self) -> f64;
}

/// A private copy of the game seen from one player, with the opponent
/// modelled as a uniform random agent.
#[derive(Debug, Clone)]
pub struct PlanetWarsModel {
    pub state: GameState,
    pub player: Player,
    kind: ActuatorKind,
}

impl PlanetWarsModel {
    pub fn new(state: GameState, player: Player) -> Self {
        let kind = state.actuators[player.index()];
        Self { state, player, kind }
    }
}

impl PlanningModel for PlanetWarsModel {
    fn action_count(&self) -> usize {
        self.kind.action_space(self.state.planets.len())
    }

    fn legal(&self, out: &mut Vec<usize>) {
        out.clear();
        let n = self.state.planets.len();
        let kind = self.kind;
        for_each_legal(&self.state, self.player, |a| {
            if let Some(i) = kind.index_of(a, n) {
                out.push(i);
            }
            true
        });
    }

    fn advance<R: Rng>(&mut self, action: usize, rng: &mut R) {
        let mine = self.kind.action_at(action, self.state.planets.len());
        let theirs = random_action(&self.state, self.player.opponent(), rng);
        match self.player {
            Player::One => self.state.step(mine, theirs),
            Player::Two => self.state.step(theirs, mine),
        };
    }

    fn is_terminal(&self) -> bool {
        self.state.is_terminal().is_some()
    }

    fn evaluate(&self) -> f64 {
        let score = self.state.score(self.player);
        match self.state.is_terminal().map(|o| o.winner()) {
            Some(Some(w)) if w == self.player => score + TERMINAL_BONUS,
            Some(Some(_)) => score - TERMINAL_BONUS,
            _ => score,
        }
    }
}
