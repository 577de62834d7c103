//! Build a game, play a few ticks by hand, then let two heuristics finish it.

use planet_wars::agents::heuristic_action;
use planet_wars::{Action, GameParameters, GameState, Player};

fn main() -> planet_wars::Result<()> {
    let mut game = GameState::new_game(GameParameters::default(), 7)?;
    println!("{} planets on a {}x{} map", game.num_planets(), game.params().map_width, game.params().map_height);
    for p in game.planets.iter().take(4) {
        println!(
            "  planet {:>2} at ({:>5.1}, {:>5.1}) r={:>4.1} growth={:.3} {:?} {:.0} ships",
            p.id, p.position.x, p.position.y, p.radius, p.growth_rate, p.owner, p.ships
        );
    }

    // Source-target: pick our home, then a target. Half the ships fly.
    game.step(Action::SelectPlanet { planet: 0 }, Action::NoOp);
    game.step(Action::SelectPlanet { planet: 4 }, Action::NoOp);
    let t = &game.planets[0].transporter;
    println!("tick {}: {:.1} ships in flight at ({:.1}, {:.1})", game.tick, t.payload, t.position.x, t.position.y);

    // Copies are cheap and independent.
    let mut lookahead = game.clone();
    for _ in 0..50 {
        lookahead.step(Action::NoOp, Action::NoOp);
    }
    println!("lookahead at tick {} scores {:+.1}; original still at tick {}", lookahead.tick, lookahead.score(Player::One), game.tick);

    while game.is_terminal().is_none() {
        let a1 = heuristic_action(&game, Player::One);
        let a2 = heuristic_action(&game, Player::Two);
        game.step(a1, a2);
    }
    println!(
        "{:?} at tick {}: P1 {:.1} ships on {} planets, P2 {:.1} ships on {} planets",
        game.is_terminal().unwrap(),
        game.tick,
        game.total_ships(Player::One),
        game.owned_planets(Player::One),
        game.total_ships(Player::Two),
        game.owned_planets(Player::Two),
    );
    println!("state hash {}", game.state_hash());
    Ok(())
}
