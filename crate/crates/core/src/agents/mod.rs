//! AI players over the fully observable forward model.
//!
//! Agents are named by string identifiers: `random`, `heuristic`,
//! `rhea:ITER:HORIZON` and `mcts:ITER:HORIZON`. Planners only ever mutate
//! private copies of the state they are given.

mod heuristic;
mod mcts;
mod model;
mod random;
mod rhea;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::engine::{Action, GameState};
use crate::error::Error;
use crate::map::Player;

pub use heuristic::{heuristic_action, HeuristicAgent};
pub use mcts::{MctsAgent, MctsPlanner, EXPLORATION};
pub use model::{PlanetWarsModel, PlanningModel, TERMINAL_BONUS};
pub use random::{random_action, RandomAgent};
pub use rhea::{RheaAgent, RheaPlanner};

pub trait Agent: Send {
    fn act(&mut self, state: &GameState, player: Player) -> Action;

    /// Forward-model ticks consumed so far by this agent's planning.
    fn forward_ticks(&self) -> u64 {
        0
    }
}

/// Iterations per move and ticks per evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgentBudget {
    pub iterations: usize,
    pub horizon: usize,
}

impl AgentBudget {
    pub fn ticks_per_move(self) -> usize {
        self.iterations * self.horizon
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgentSpec {
    Random,
    Heuristic,
    Rhea(AgentBudget),
    Mcts(AgentBudget),
}

impl AgentSpec {
    /// Identifiers understood by [`AgentSpec::from_str`], with the settings
    /// used by the league replication preset.
    pub fn catalogue() -> Vec<String> {
        ["random", "heuristic", "rhea:20:200", "mcts:40:100"]
            .into_iter()
            .map(String::from)
            .collect()
    }

    pub fn build(self, seed: u64) -> Box<dyn Agent> {
        match self {
            AgentSpec::Random => Box::new(RandomAgent::new(seed)),
            AgentSpec::Heuristic => Box::new(HeuristicAgent),
            AgentSpec::Rhea(b) => Box::new(RheaAgent::new(b, seed)),
            AgentSpec::Mcts(b) => Box::new(MctsAgent::new(b, seed)),
        }
    }
}

impl fmt::Display for AgentSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AgentSpec::Random => f.write_str("random"),
            AgentSpec::Heuristic => f.write_str("heuristic"),
            AgentSpec::Rhea(b) => write!(f, "rhea:{}:{}", b.iterations, b.horizon),
            AgentSpec::Mcts(b) => write!(f, "mcts:{}:{}", b.iterations, b.horizon),
        }
    }
}

impl FromStr for AgentSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let unknown = || Error::UnknownAgent(s.to_string());
        let parts: Vec<&str> = s.trim().split(':').collect();
        let budget = |parts: &[&str]| -> Result<AgentBudget, Error> {
            match parts {
                [iter, horizon] => {
                    let iterations: usize = iter.parse().map_err(|_| unknown())?;
                    let horizon: usize = horizon.parse().map_err(|_| unknown())?;
                    if iterations == 0 || horizon == 0 {
                        return Err(unknown());
                    }
                    Ok(AgentBudget { iterations, horizon })
                }
                _ => Err(unknown()),
            }
        };
        match parts.as_slice() {
            ["random"] => Ok(AgentSpec::Random),
            ["heuristic"] => Ok(AgentSpec::Heuristic),
            ["rhea", rest @ ..] => Ok(AgentSpec::Rhea(budget(rest)?)),
            ["mcts", rest @ ..] => Ok(AgentSpec::Mcts(budget(rest)?)),
            _ => Err(unknown()),
        }
    }
}
