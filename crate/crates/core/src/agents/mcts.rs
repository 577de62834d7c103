//! Open-loop UCT. Tree edges are action indices; states are re-simulated from
//! the root on every iteration, so the tree stores statistics only.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::engine::{Action, GameState};
use crate::map::Player;

use super::model::{PlanetWarsModel, PlanningModel};
use super::{Agent, AgentBudget};

/// UCB1 exploration constant.
pub const EXPLORATION: f64 = std::f64::consts::SQRT_2;

#[derive(Debug, Clone, Default)]
struct Node {
    children: Vec<(usize, usize)>,
    visits: u32,
    total: f64,
}

#[derive(Debug, Clone)]
pub struct MctsPlanner {
    budget: AgentBudget,
    nodes: Vec<Node>,
    ticks: u64,
    low: f64,
    high: f64,
}

impl MctsPlanner {
    pub fn new(budget: AgentBudget) -> Self {
        Self {
            budget,
            nodes: Vec::new(),
            ticks: 0,
            low: f64::INFINITY,
            high: f64::NEG_INFINITY,
        }
    }

    pub fn ticks(&self) -> u64 {
        self.ticks
    }

    /// Visit counts of the root's children from the last search.
    pub fn root_visits(&self) -> Vec<(usize, u32)> {
        match self.nodes.first() {
            Some(root) => root
                .children
                .iter()
                .map(|&(a, id)| (a, self.nodes[id].visits))
                .collect(),
            None => Vec::new(),
        }
    }

    pub fn plan<M: PlanningModel, R: Rng>(&mut self, root: &M, rng: &mut R) -> usize {
        self.nodes.clear();
        self.nodes.push(Node::default());
        self.low = f64::INFINITY;
        self.high = f64::NEG_INFINITY;

        let mut legal = Vec::new();
        let mut untried = Vec::new();
        let mut path = Vec::with_capacity(self.budget.horizon + 1);

        for _ in 0..self.budget.iterations {
            let mut model = root.clone();
            let mut node = 0;
            let mut depth = 0;
            path.clear();
            path.push(0);

            // Selection and expansion of at most one node.
            while depth < self.budget.horizon && !model.is_terminal() {
                model.legal(&mut legal);
                if legal.is_empty() {
                    break;
                }
                untried.clear();
                untried.extend(
                    legal
                        .iter()
                        .copied()
                        .filter(|a| !self.nodes[node].children.iter().any(|c| c.0 == *a)),
                );
                if let Some(&action) = untried.choose(rng) {
                    let child = self.nodes.len();
                    self.nodes.push(Node::default());
                    self.nodes[node].children.push((action, child));
                    model.advance(action, rng);
                    self.ticks += 1;
                    depth += 1;
                    path.push(child);
                    break;
                }
                let (action, child) = self.select(node, &legal, rng);
                model.advance(action, rng);
                self.ticks += 1;
                depth += 1;
                path.push(child);
                node = child;
            }

            // Uniform random rollout to the horizon.
            while depth < self.budget.horizon && !model.is_terminal() {
                model.legal(&mut legal);
                let action = legal.choose(rng).copied().unwrap_or(0);
                model.advance(action, rng);
                self.ticks += 1;
                depth += 1;
            }

            let value = model.evaluate();
            self.low = self.low.min(value);
            self.high = self.high.max(value);
            for &id in &path {
                let n = &mut self.nodes[id];
                n.visits += 1;
                n.total += value;
            }
        }

        let root_node = &self.nodes[0];
        let mut best: Option<(u32, f64, usize)> = None;
        for &(action, id) in &root_node.children {
            let n = &self.nodes[id];
            let mean = n.total / n.visits.max(1) as f64;
            if best.is_none_or(|(v, m, _)| n.visits > v || (n.visits == v && mean > m)) {
                best = Some((n.visits, mean, action));
            }
        }
        match best {
            Some((_, _, action)) => action,
            None => {
                root.legal(&mut legal);
                legal.first().copied().unwrap_or(0)
            }
        }
    }

    /// UCB1 over the children whose actions are legal now; values are
    /// normalized by the running min/max of this search. Ties are broken
    /// uniformly at random.
    fn select<R: Rng>(&self, node: usize, legal: &[usize], rng: &mut R) -> (usize, usize) {
        let parent = &self.nodes[node];
        let ln_n = (parent.visits.max(1) as f64).ln();
        let span = self.high - self.low;
        let mut best_value = f64::NEG_INFINITY;
        let mut ties: Vec<(usize, usize)> = Vec::new();
        for &(action, id) in &parent.children {
            if !legal.contains(&action) {
                continue;
            }
            let child = &self.nodes[id];
            let visits = child.visits.max(1) as f64;
            let mean = child.total / visits;
            let q = if span > 0.0 { (mean - self.low) / span } else { 0.5 };
            let ucb = q + EXPLORATION * (ln_n / visits).sqrt();
            if ucb > best_value {
                best_value = ucb;
                ties.clear();
                ties.push((action, id));
            } else if ucb == best_value {
                ties.push((action, id));
            }
        }
        *ties.choose(rng).expect("at least one legal child")
    }
}

pub struct MctsAgent {
    planner: MctsPlanner,
    rng: ChaCha8Rng,
}

impl MctsAgent {
    pub fn new(budget: AgentBudget, seed: u64) -> Self {
        Self {
            planner: MctsPlanner::new(budget),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Agent for MctsAgent {
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

    /// Two arms with fixed payoffs; the game lasts one tick.
    #[derive(Clone)]
    struct TwoArms {
        payoff: [f64; 2],
        pulled: Option<usize>,
    }

    impl PlanningModel for TwoArms {
        fn action_count(&self) -> usize {
            2
        }
        fn legal(&self, out: &mut Vec<usize>) {
            out.clear();
            out.extend([0, 1]);
        }
        fn advance<R: Rng>(&mut self, action: usize, _: &mut R) {
            self.pulled = Some(action);
        }
        fn is_terminal(&self) -> bool {
            self.pulled.is_some()
        }
        fn evaluate(&self) -> f64 {
            self.pulled.map_or(0.0, |a| self.payoff[a])
        }
    }

    #[test]
    fn bandit_prefers_better_arm() {
        let model = TwoArms { payoff: [1.0, 0.0], pulled: None };
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut planner = MctsPlanner::new(AgentBudget { iterations: 40, horizon: 1 });
        assert_eq!(planner.plan(&model, &mut rng), 0);
        let visits = planner.root_visits();
        let of = |a| visits.iter().find(|v| v.0 == a).unwrap().1;
        assert!(of(0) > of(1), "{visits:?}");
        assert_eq!(of(0) + of(1), 40);
    }

    #[test]
    fn single_legal_action_returned() {
        #[derive(Clone)]
        struct One;
        impl PlanningModel for One {
            fn action_count(&self) -> usize {
                5
            }
            fn legal(&self, out: &mut Vec<usize>) {
                out.clear();
                out.push(3);
            }
            fn advance<R: Rng>(&mut self, _: usize, _: &mut R) {}
            fn is_terminal(&self) -> bool {
                false
            }
            fn evaluate(&self) -> f64 {
                0.0
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for iterations in [1, 7, 50] {
            let mut planner = MctsPlanner::new(AgentBudget { iterations, horizon: 10 });
            assert_eq!(planner.plan(&One, &mut rng), 3);
        }
    }

    #[test]
    fn budget_accounting() {
        let s = GameState::new_game(GameParameters::default(), 3).unwrap();
        let budget = AgentBudget { iterations: 40, horizon: 100 };
        let mut agent = MctsAgent::new(budget, 2);
        agent.act(&s, Player::Two);
        let used = agent.forward_ticks() as i64;
        assert!((used - 4000).abs() <= 100, "{used}");
    }
}
