//! The same game seen through each actuator: action-space size, legal moves
//! at the start, and how one launch is spelled.

use planet_wars::actuators::legal_actions;
use planet_wars::{Action, ActuatorKind, GameParameters, GameState, Player};

fn main() -> planet_wars::Result<()> {
    let params = GameParameters { num_planets: 10, ..Default::default() };
    for kind in [ActuatorKind::SourceTarget, ActuatorKind::Slingshot, ActuatorKind::PairedSourceTarget] {
        let mut game = GameState::new_game_with(params.clone(), 1, [kind, kind])?;
        let legal = legal_actions(&game, Player::One);
        println!("{kind:?}: {} actions, {} legal at the start", kind.action_space(10), legal.len());

        let plan: &[Action] = match kind {
            ActuatorKind::SourceTarget => &[Action::SelectPlanet { planet: 0 }, Action::SelectPlanet { planet: 3 }],
            ActuatorKind::Slingshot => &[Action::Press { planet: 0 }, Action::NoOp, Action::NoOp, Action::Release],
            ActuatorKind::PairedSourceTarget => &[Action::Launch { source: 0, target: 3 }],
        };
        for &a in plan {
            game.step(a, Action::NoOp);
        }
        let t = &game.planets[0].transporter;
        println!("  after {:?}: {:.1} ships in flight", plan, t.payload);
    }

    // Anything outside the legal set does exactly what NoOp does.
    let game = GameState::new_game(params, 1)?;
    let bogus = game.next_state(Action::SelectPlanet { planet: 1 }, Action::NoOp);
    let idle = game.next_state(Action::NoOp, Action::NoOp);
    println!("selecting the enemy home == NoOp: {}", bogus == idle);
    Ok(())
}
