//! Rolling-horizon evolution and MCTS against the random agent, and a peek
//! inside one MCTS decision.

use planet_wars::agents::{MctsPlanner, PlanetWarsModel};
use planet_wars::arena::run_match;
use planet_wars::{AgentBudget, GameParameters, GameState, Player};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> planet_wars::Result<()> {
    let params = GameParameters::default();
    for (a1, a2) in [("rhea:20:200", "random"), ("mcts:40:100", "random"), ("rhea:20:200", "mcts:40:100")] {
        let m = run_match(a1, a2, &params, 3, 2000)?;
        println!(
            "{a1:>12} vs {a2:<12} {:?} after {:>4} ticks, forward-model ticks per side {:?}",
            m.outcome, m.ticks, m.planning_ticks
        );
    }

    let state = GameState::new_game(params, 3)?;
    let mut planner = MctsPlanner::new(AgentBudget { iterations: 200, horizon: 50 });
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let best = planner.plan(&PlanetWarsModel::new(state.clone(), Player::One), &mut rng);
    let kind = state.actuators[0];
    println!("MCTS at the start chose {:?} ({} forward ticks)", kind.action_at(best, state.num_planets()), planner.ticks());
    for (i, visits) in planner.root_visits() {
        println!("  {:?}: {visits} visits", kind.action_at(i, state.num_planets()));
    }
    Ok(())
}
