//! Planet Wars as a research platform: a fast, copyable, fully parameterized
//! forward model with pluggable actuators, planning agents, and harnesses for
//! leagues, micro-benchmarks and deterministic replays.
//!
//! ```
//! use planet_wars::{Action, GameParameters, GameState, Player};
//!
//! let mut game = GameState::new_game(GameParameters::default(), 7).unwrap();
//! game.step(Action::SelectPlanet { planet: 0 }, Action::NoOp);
//! game.step(Action::SelectPlanet { planet: 4 }, Action::NoOp);
//! assert!(game.planets[0].transporter.in_transit());
//! assert_eq!(game.score(Player::One), -game.score(Player::Two));
//! ```

pub mod actuators;
pub mod agents;
pub mod arena;
pub mod engine;
pub mod error;
pub mod geometry;
pub mod gravity;
pub mod map;
pub mod params;
pub mod spatial;

pub use actuators::{action_space, legal_actions, ActuatorKind};
pub use agents::{Agent, AgentBudget, AgentSpec};
pub use engine::{Action, GameState, Outcome, StepEvents, Transporter, TransporterStatus};
pub use error::{Error, Result};
pub use geometry::Vec2;
pub use gravity::GravityField;
pub use map::{generate_map, Owner, Planet, Player};
pub use params::GameParameters;
