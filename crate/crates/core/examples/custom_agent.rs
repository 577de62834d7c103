//! Plug a hand-written agent into the harness and play it against the
//! built-in heuristic.

use planet_wars::agents::heuristic_action;
use planet_wars::{Action, Agent, GameParameters, GameState, Owner, Player};

/// Waits until the home planet is strong, then attacks the nearest
/// planet it does not own.
struct Turtle {
    threshold: f64,
}

impl Agent for Turtle {
    fn act(&mut self, state: &GameState, player: Player) -> Action {
        if let Some(src) = state.pending_source[player.index()] {
            let from = state.planets[src].position;
            let target = state
                .planets
                .iter()
                .filter(|p| !p.owner.is(player))
                .min_by(|a, b| from.distance(a.position).total_cmp(&from.distance(b.position)));
            return target.map_or(Action::NoOp, |p| Action::SelectPlanet { planet: p.id });
        }
        state
            .planets
            .iter()
            .filter(|p| p.owner.is(player) && p.ships >= self.threshold && p.transporter.is_docked())
            .max_by(|a, b| a.ships.total_cmp(&b.ships))
            .map_or(Action::NoOp, |p| Action::SelectPlanet { planet: p.id })
    }
}

fn main() -> planet_wars::Result<()> {
    for threshold in [20.0, 80.0, 150.0] {
        let mut turtle = Turtle { threshold };
        let mut game = GameState::new_game(GameParameters::default(), 11)?;
        while game.is_terminal().is_none() {
            let a1 = turtle.act(&game, Player::One);
            let a2 = heuristic_action(&game, Player::Two);
            game.step(a1, a2);
        }
        let neutral = game.planets.iter().filter(|p| p.owner == Owner::Neutral).count();
        println!(
            "threshold {threshold:>5}: {:?} at tick {:>4}, score {:+8.1}, {neutral} planets still neutral",
            game.is_terminal().unwrap(),
            game.tick,
            game.score(Player::One)
        );
    }
    Ok(())
}
