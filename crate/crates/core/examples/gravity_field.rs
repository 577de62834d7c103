//! Draw the gravity field as arrows, then fly the same launch with and
//! without gravity and compare where the transporter ends up.

use planet_wars::{Action, GameParameters, GameState, Vec2};

fn arrow(v: Vec2) -> char {
    if v.length() < 1e-4 {
        return '.';
    }
    let a = v.y.atan2(v.x).to_degrees().rem_euclid(360.0);
    ['→', '↘', '↓', '↙', '←', '↖', '↑', '↗'][((a + 22.5) / 45.0) as usize % 8]
}

fn flight(g: f64) -> Vec<Vec2> {
    let params = GameParameters { gravitational_constant: g, ..Default::default() };
    let mut game = GameState::new_game(params, 3).unwrap();
    game.step(Action::SelectPlanet { planet: 0 }, Action::NoOp);
    game.step(Action::SelectPlanet { planet: 1 }, Action::NoOp);
    let mut path = Vec::new();
    while game.planets[0].transporter.in_transit() {
        path.push(game.planets[0].transporter.position);
        game.step(Action::NoOp, Action::NoOp);
    }
    path
}

fn main() {
    let game = GameState::new_game(GameParameters::default(), 3).unwrap();
    let field = game.gravity().expect("new games carry their field");
    let (cols, rows) = field.dimensions();
    println!("field: {cols}x{rows} cells of {} px", field.cell_size());

    let coarse = field.downsample(20);
    for (r, row) in coarse.iter().enumerate() {
        let line: String = row
            .iter()
            .enumerate()
            .map(|(c, &v)| {
                let centre = Vec2::new((c as f64 + 0.5) * 20.0, (r as f64 + 0.5) * 20.0);
                match game.planets.iter().find(|p| p.contains(centre)) {
                    Some(p) if p.id < 2 => 'H',
                    Some(_) => 'O',
                    None => arrow(v),
                }
            })
            .collect();
        println!("  {line}");
    }

    let curved = flight(0.05);
    let straight = flight(0.0);
    let end = |p: &[Vec2]| *p.last().unwrap();
    println!(
        "launched from home 0 at home 1: {} ticks with gravity ending at ({:.0}, {:.0}); {} ticks without, ending at ({:.0}, {:.0})",
        curved.len(),
        end(&curved).x,
        end(&curved).y,
        straight.len(),
        end(&straight).x,
        end(&straight).y
    );
}
