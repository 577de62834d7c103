use thiserror::Error;

use crate::params::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {}", join(.0))]
    InvalidParameters(Vec<Violation>),

    #[error("map infeasible: placed {placed} of {requested} planets before giving up")]
    MapInfeasible { placed: usize, requested: usize },

    #[error("unknown agent identifier {0:?}")]
    UnknownAgent(String),

    #[error("replay parse error at line {line}, column {column}: {message}")]
    ReplayParse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("replay version {found} is not supported (expected {expected})")]
    ReplayVersion { found: u32, expected: u32 },

    #[error("replay diverged at tick {tick}: recorded hash {recorded}, simulated {simulated}")]
    ReplayDiverged {
        tick: u32,
        recorded: String,
        simulated: String,
    },

    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
