//! Replay files: the seed, parameters and per-tick action pairs of a game,
//! optionally with the state hash after every tick.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::actuators::ActuatorKind;
use crate::engine::{Action, GameState, Outcome};
use crate::error::{Error, Result};
use crate::params::GameParameters;

pub const REPLAY_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplayRecord {
    pub tick: u32,
    pub a1: Action,
    pub a2: Action,
    /// State hash after this tick, when recorded.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hash: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Replay {
    pub version: u32,
    pub seed: u64,
    pub parameters: GameParameters,
    pub actuators: [ActuatorKind; 2],
    #[serde(default)]
    pub agents: [String; 2],
    pub records: Vec<ReplayRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcome: Option<Outcome>,
    pub final_hash: String,
}

#[derive(Deserialize)]
struct VersionProbe {
    version: u32,
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::ReplayParse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

impl Replay {
    pub fn new(
        seed: u64,
        parameters: GameParameters,
        actuators: [ActuatorKind; 2],
        agents: [String; 2],
        records: Vec<ReplayRecord>,
        outcome: Option<Outcome>,
        final_hash: String,
    ) -> Self {
        Self {
            version: REPLAY_VERSION,
            seed,
            parameters,
            actuators,
            agents,
            records,
            outcome,
            final_hash,
        }
    }

    pub fn initial_state(&self) -> Result<GameState> {
        GameState::new_game_with(self.parameters.clone(), self.seed, self.actuators)
    }

    /// Re-simulates every record, checking recorded hashes on the way and the
    /// final hash at the end. Returns the final state.
    pub fn simulate(&self) -> Result<GameState> {
        let mut state = self.initial_state()?;
        for r in &self.records {
            state.step(r.a1, r.a2);
            if let Some(recorded) = &r.hash {
                let simulated = state.state_hash();
                if &simulated != recorded {
                    return Err(Error::ReplayDiverged {
                        tick: r.tick,
                        recorded: recorded.clone(),
                        simulated,
                    });
                }
            }
        }
        let simulated = state.state_hash();
        if simulated != self.final_hash {
            return Err(Error::ReplayDiverged {
                tick: state.tick,
                recorded: self.final_hash.clone(),
                simulated,
            });
        }
        Ok(state)
    }

    /// Stores the per-tick state hash in every record.
    pub fn record_hashes(&mut self) -> Result<()> {
        let mut state = self.initial_state()?;
        for r in &mut self.records {
            state.step(r.a1, r.a2);
            r.hash = Some(state.state_hash());
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let probe: VersionProbe = serde_json::from_str(text).map_err(parse_error)?;
        if probe.version != REPLAY_VERSION {
            return Err(Error::ReplayVersion {
                found: probe.version,
                expected: REPLAY_VERSION,
            });
        }
        serde_json::from_str(text).map_err(parse_error)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }
}
