//! Rolling horizon evolution: a (1+1) evolution strategy over fixed-length
//! action sequences, re-planned every move from the shifted incumbent.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::engine::{Action, GameState};
use crate::map::Player;

use super::model::{PlanetWarsModel, PlanningModel};
use super::{Agent, AgentBudget};

#[derive(Debug, Clone)]
pub struct RheaPlanner {
    budget: AgentBudget,
    incumbent: Vec<usize>,
    ticks: u64,
}

impl RheaPlanner {
    pub fn new(budget: AgentBudget) -> Self {
        assert!(budget.horizon >= 1, "horizon must be at least 1");
        Self {
            budget,
            incumbent: Vec::new(),
            ticks: 0,
        }
    }

    /// Total forward-model ticks simulated so far.
    pub fn ticks(&self) -> u64 {
        self.ticks
    }

    /// The current best sequence (after the last `plan`).
    pub fn incumbent(&self) -> &[usize] {
        &self.incumbent
    }

    /// Evolves the sequence for one move and returns its first gene.
    pub fn plan<M: PlanningModel, R: Rng>(&mut self, root: &M, rng: &mut R) -> usize {
        let count = root.action_count().max(1);
        let len = self.budget.horizon;

        if self.incumbent.len() != len || self.incumbent.iter().any(|&g| g >= count) {
            self.incumbent = (0..len).map(|_| rng.gen_range(0..count)).collect();
        } else {
            self.incumbent.rotate_left(1);
            self.incumbent[len - 1] = rng.gen_range(0..count);
        }

        // Every candidate this move faces the same opponent random stream, so
        // fitness differences come from the sequences rather than the dice.
        let opponent_seed: u64 = rng.gen();
        let incumbent = self.incumbent.clone();
        let mut best = self.evaluate(root, &incumbent, opponent_seed);
        let mut mutant = incumbent;
        for _ in 0..self.budget.iterations {
            mutant.copy_from_slice(&self.incumbent);
            mutate(&mut mutant, count, rng);
            let fitness = self.evaluate(root, &mutant, opponent_seed);
            if fitness >= best {
                best = fitness;
                self.incumbent.copy_from_slice(&mutant);
            }
        }
        self.incumbent[0]
    }

    fn evaluate<M: PlanningModel>(&mut self, root: &M, genes: &[usize], opponent_seed: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(opponent_seed);
        let mut m = root.clone();
        for &g in genes {
            if m.is_terminal() {
                break;
            }
            m.advance(g, &mut rng);
            self.ticks += 1;
        }
        m.evaluate()
    }
}

/// Per-gene mutation with probability 1/len; at least one gene always changes.
fn mutate<R: Rng>(genes: &mut [usize], count: usize, rng: &mut R) {
    let len = genes.len();
    let rate = 1.0 / len as f64;
    let mut changed = false;
    for g in genes.iter_mut() {
        if rng.gen_bool(rate) {
            *g = different_value(*g, count, rng);
            changed = true;
        }
    }
    if !changed {
        let i = rng.gen_range(0..len);
        genes[i] = different_value(genes[i], count, rng);
    }
}

#[inline]
fn different_value<R: Rng>(current: usize, count: usize, rng: &mut R) -> usize {
    if count <= 1 {
        return current;
    }
    let v = rng.gen_range(0..count - 1);
    if v >= current {
        v + 1
    } else {
        v
    }
}

pub struct RheaAgent {
    planner: RheaPlanner,
    rng: ChaCha8Rng,
}

impl RheaAgent {
    pub fn new(budget: AgentBudget, seed: u64) -> Self {
        Self {
            planner: RheaPlanner::new(budget),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Agent for RheaAgent {
    fn act(&mut self, state: &GameState, player: Player) -> Action {
        let model = PlanetWarsModel::new(state.clone(), player);
        let index = self.planner.plan(&model, &mut self.rng);
        state.actuators[player.index()].action_at(index, state.planets.len())
    }

    fn forward_ticks(&self) -> u64 {
        self.planner.ticks()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::GameParameters;

    /// Deterministic model: value is the sum of chosen action values.
    #[derive(Clone)]
    struct Bandit {
        values: Vec<f64>,
        total: f64,
    }

    impl PlanningModel for Bandit {
        fn action_count(&self) -> usize {
            self.values.len()
        }
        fn legal(&self, out: &mut Vec<usize>) {
            out.clear();
            out.extend(0..self.values.len());
        }
        fn advance<R: Rng>(&mut self, action: usize, _: &mut R) {
            self.total += self.values[action];
        }
        fn is_terminal(&self) -> bool {
            false
        }
        fn evaluate(&self) -> f64 {
            self.total
        }
    }

    #[test]
    fn horizon_one_finds_dominating_action() {
        let model = Bandit { values: vec![0.0, 1.0], total: 0.0 };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let mut planner = RheaPlanner::new(AgentBudget { iterations: 50, horizon: 1 });
            assert_eq!(planner.plan(&model, &mut rng), 1);
        }
    }

    #[test]
    fn consumes_iterations_times_horizon() {
        let s = GameState::new_game(GameParameters::default(), 3).unwrap();
        let budget = AgentBudget { iterations: 20, horizon: 200 };
        let mut agent = RheaAgent::new(budget, 9);
        let before = agent.forward_ticks();
        agent.act(&s, Player::One);
        let used = agent.forward_ticks() - before;
        let target = budget.ticks_per_move() as i64;
        assert!((used as i64 - target).abs() <= budget.horizon as i64, "{used}");
    }

    #[test]
    fn deterministic_given_seed() {
        let s = GameState::new_game(GameParameters::default(), 3).unwrap();
        let run = || {
            let mut a = RheaAgent::new(AgentBudget { iterations: 5, horizon: 30 }, 1);
            let mut st = s.clone();
            (0..10)
                .map(|_| {
                    let act = a.act(&st, Player::One);
                    st.step(act, Action::NoOp);
                    act
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn mutation_changes_at_least_one_gene() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..200 {
            let orig: Vec<usize> = (0..50).map(|_| rng.gen_range(0..21)).collect();
            let mut g = orig.clone();
            mutate(&mut g, 21, &mut rng);
            assert!(g.iter().zip(&orig).any(|(a, b)| a != b));
            assert!(g.iter().all(|&x| x < 21));
        }
    }
}
