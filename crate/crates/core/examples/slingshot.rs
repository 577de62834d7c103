//! The slingshot actuator: hold a press to load ships, release to fire along
//! the planet's rotating turret.

use planet_wars::{Action, ActuatorKind, GameParameters, GameState, Player};

fn main() -> planet_wars::Result<()> {
    let params = GameParameters::default();
    let mut game = GameState::new_game_with(params, 5, [ActuatorKind::Slingshot, ActuatorKind::SourceTarget])?;
    println!("P1 action space: {} (one press per planet, release, noop)", game.actuators[0].action_space(game.num_planets()));

    let home = 0;
    println!("start: {:.1} ships, turret at {:.2} rad", game.planets[home].ships, game.planets[home].turret_angle);
    game.step(Action::Press { planet: home }, Action::NoOp);
    for _ in 0..29 {
        // holding the press: NoOp keeps loading
        game.step(Action::NoOp, Action::NoOp);
    }
    let p = &game.planets[home];
    println!(
        "after 30 ticks held: payload {:.1}, planet {:.1}, turret at {:.2} rad",
        p.transporter.payload, p.ships, p.turret_angle
    );

    game.step(Action::Release, Action::NoOp);
    let t = &game.planets[home].transporter;
    println!(
        "released: velocity ({:.2}, {:.2}) along the turret, {:.1} ships aboard",
        t.velocity.x, t.velocity.y, t.payload
    );

    let mut ticks = 0;
    while game.planets[home].transporter.in_transit() && ticks < 1000 {
        game.step(Action::NoOp, Action::NoOp);
        ticks += 1;
    }
    let owned: Vec<usize> = game.planets.iter().filter(|p| p.owner.is(Player::One)).map(|p| p.id).collect();
    println!("flight over after {ticks} ticks; P1 now owns planets {owned:?}");
    Ok(())
}
