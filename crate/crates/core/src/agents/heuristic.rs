use crate::engine::{Action, GameState};
use crate::map::Player;

use super::Agent;

/// Deterministic greedy policy over the source-target actuator.
///
/// With no pending source, selects the owned planet holding the most ships if
/// its transporter is docked. With a pending source, targets the non-owned
/// planet with the smallest expected garrison on arrival:
/// `ships + growthRate * distance / launchSpeed`.
pub fn heuristic_action(state: &GameState, player: Player) -> Action {
    match state.pending_source[player.index()] {
        None => {
            let strongest = state
                .planets
                .iter()
                .filter(|p| p.owner.is(player))
                .fold(None, |best: Option<&crate::map::Planet>, p| match best {
                    Some(b) if b.ships >= p.ships => Some(b),
                    _ => Some(p),
                });
            match strongest {
                Some(p) if p.transporter.is_docked() => Action::SelectPlanet { planet: p.id },
                _ => Action::NoOp,
            }
        }
        Some(source) => {
            let from = state.planets[source].position;
            let speed = state.parameters.ship_launch_speed.max(f64::MIN_POSITIVE);
            let mut best: Option<(f64, usize)> = None;
            for p in &state.planets {
                if p.id == source || p.owner.is(player) {
                    continue;
                }
                let travel = from.distance(p.position) / speed;
                let cost = p.ships + p.growth_rate * travel;
                if best.is_none_or(|(c, _)| cost < c) {
                    best = Some((cost, p.id));
                }
            }
            match best {
                Some((_, planet)) => Action::SelectPlanet { planet },
                None => Action::NoOp,
            }
        }
    }
}

pub struct HeuristicAgent;

impl Agent for HeuristicAgent {
    fn act(&mut self, state: &GameState, player: Player) -> Action {
        heuristic_action(state, player)
    }
}
