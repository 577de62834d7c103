//! A session owns one authoritative game. [`SessionCore`] holds the rules
//! (input latch, seat checks, logging) and is driven synchronously;
//! [`spawn`] wraps it in a paced tokio task.

use std::sync::Arc;
use std::time::Duration;

use planet_wars::arena::{Replay, ReplayRecord};
use planet_wars::params::Violation;
use planet_wars::{Action, ActuatorKind, AgentSpec, GameParameters, GameState, Outcome, Player};
use serde::{Deserialize, Serialize};
use serde_json::json;
use tokio::sync::{broadcast, mpsc, oneshot, watch};
use tokio::time::{Instant, MissedTickBehavior};

use crate::ai::AiWorker;

pub const DEFAULT_TICK_RATE: f64 = 30.0;
pub const DEFAULT_GRACE_MS: u64 = 5000;
const GRAVITY_PREVIEW_COLS: usize = 64;

/// Body of `POST /sessions`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SessionConfig {
    #[serde(default)]
    pub parameters: GameParameters,
    #[serde(default)]
    pub seed: u64,
    /// Seat played by the human; `None` for AI-vs-AI.
    #[serde(default)]
    pub human_side: Option<Player>,
    pub ai_opponent: String,
    #[serde(default = "default_tick_rate")]
    pub tick_rate: f64,
    /// Defaults to slingshot for the human seat, source-target for AI seats.
    #[serde(default)]
    pub actuators: Option<[ActuatorKind; 2]>,
    /// Per-move AI wall-clock cap; defaults to one tick period.
    #[serde(default)]
    pub ai_move_cap_ms: Option<f64>,
    #[serde(default = "default_grace")]
    pub disconnect_grace_ms: u64,
}

fn default_tick_rate() -> f64 {
    DEFAULT_TICK_RATE
}

fn default_grace() -> u64 {
    DEFAULT_GRACE_MS
}

impl SessionConfig {
    pub fn new(ai_opponent: impl Into<String>) -> Self {
        Self {
            parameters: GameParameters::default(),
            seed: 0,
            human_side: Some(Player::One),
            ai_opponent: ai_opponent.into(),
            tick_rate: DEFAULT_TICK_RATE,
            actuators: None,
            ai_move_cap_ms: None,
            disconnect_grace_ms: DEFAULT_GRACE_MS,
        }
    }

    pub fn period(&self) -> Duration {
        Duration::from_secs_f64(1.0 / self.tick_rate)
    }

    pub fn ai_cap(&self) -> Duration {
        self.ai_move_cap_ms
            .map(|ms| Duration::from_secs_f64(ms.max(0.0) / 1000.0))
            .unwrap_or_else(|| self.period())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CreateError {
    #[error("invalid parameters")]
    InvalidParameters(Vec<Violation>),
    #[error("unknown agent identifier {0:?}")]
    UnknownAgent(String),
    #[error("tick rate must be positive and finite, got {0}")]
    TickRate(f64),
    #[error(transparent)]
    Game(#[from] planet_wars::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SessionStatus {
    Lobby,
    Running,
    Paused,
    Finished,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize)]
#[serde(tag = "reason", rename_all = "camelCase")]
pub enum InputError {
    #[error("session is finished")]
    Finished,
    #[error("session is not running")]
    NotRunning,
    #[error("seat {0:?} is not played by a human in this session")]
    WrongSeat(Player),
    #[error("spectators cannot send input")]
    Spectator,
    #[error("session closed")]
    Closed,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ControlError {
    #[error("session is finished")]
    Finished,
    #[error("session closed")]
    Closed,
}

/// Snapshot served by `GET /sessions/:id`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionInfo {
    pub id: String,
    pub status: SessionStatus,
    pub tick: u32,
    pub human_player: Option<Player>,
    pub ai_opponent: String,
    pub tick_rate: f64,
    pub outcome: Option<Outcome>,
    pub hash: String,
    /// AI moves replaced by NoOp for missing the wall-clock cap.
    pub late_ai_moves: u64,
}

/// Session rules without timing.
pub struct SessionCore {
    id: String,
    config: SessionConfig,
    state: GameState,
    status: SessionStatus,
    latch: [Action; 2],
    log: Vec<ReplayRecord>,
    late_ai_moves: u64,
}

impl SessionCore {
    pub fn new(id: impl Into<String>, config: SessionConfig) -> Result<Self, CreateError> {
        if !(config.tick_rate.is_finite() && config.tick_rate > 0.0) {
            return Err(CreateError::TickRate(config.tick_rate));
        }
        config.parameters.validate().map_err(CreateError::InvalidParameters)?;
        config
            .ai_opponent
            .parse::<AgentSpec>()
            .map_err(|_| CreateError::UnknownAgent(config.ai_opponent.clone()))?;
        let actuators = config.actuators.unwrap_or_else(|| {
            let seat = |p| {
                if config.human_side == Some(p) {
                    ActuatorKind::Slingshot
                } else {
                    ActuatorKind::SourceTarget
                }
            };
            [seat(Player::One), seat(Player::Two)]
        });
        let state = GameState::new_game_with(config.parameters.clone(), config.seed, actuators)?;
        Ok(Self {
            id: id.into(),
            config,
            state,
            status: SessionStatus::Lobby,
            latch: [Action::NoOp; 2],
            log: Vec::new(),
            late_ai_moves: 0,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn config(&self) -> &SessionConfig {
        &self.config
    }

    pub fn state(&self) -> &GameState {
        &self.state
    }

    pub fn status(&self) -> SessionStatus {
        self.status
    }

    pub fn human(&self) -> Option<Player> {
        self.config.human_side
    }

    pub fn ai_seats(&self) -> Vec<Player> {
        [Player::One, Player::Two].into_iter().filter(|&p| Some(p) != self.config.human_side).collect()
    }

    pub fn start(&mut self) -> Result<(), ControlError> {
        match self.status {
            SessionStatus::Finished => Err(ControlError::Finished),
            _ => {
                self.status = SessionStatus::Running;
                Ok(())
            }
        }
    }

    pub fn pause(&mut self) -> Result<(), ControlError> {
        match self.status {
            SessionStatus::Finished => Err(ControlError::Finished),
            SessionStatus::Running => {
                self.status = SessionStatus::Paused;
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Stores the human's action for the next tick, replacing any earlier one.
    pub fn submit_input(&mut self, player: Player, action: Action) -> Result<(), InputError> {
        if self.status == SessionStatus::Finished {
            return Err(InputError::Finished);
        }
        if self.config.human_side != Some(player) {
            return Err(InputError::WrongSeat(player));
        }
        if self.status != SessionStatus::Running {
            return Err(InputError::NotRunning);
        }
        self.latch[player.index()] = action;
        Ok(())
    }

    /// Advances one tick. `ai` supplies the AI seats' actions (`None` counts
    /// as a late move and plays NoOp); the human seat plays its latch.
    pub fn tick(&mut self, ai: [Option<Action>; 2]) -> bool {
        if self.status != SessionStatus::Running {
            return false;
        }
        let mut actions = [Action::NoOp; 2];
        for p in [Player::One, Player::Two] {
            let i = p.index();
            actions[i] = if self.config.human_side == Some(p) {
                std::mem::replace(&mut self.latch[i], Action::NoOp)
            } else {
                ai[i].unwrap_or_else(|| {
                    self.late_ai_moves += 1;
                    tracing::warn!(session = %self.id, tick = self.state.tick, seat = ?p, "AI move missed its deadline, playing NoOp");
                    Action::NoOp
                })
            };
        }
        self.state.step(actions[0], actions[1]);
        self.log.push(ReplayRecord {
            tick: self.state.tick,
            a1: actions[0],
            a2: actions[1],
            hash: Some(self.state.state_hash()),
        });
        if self.state.is_terminal().is_some() {
            self.status = SessionStatus::Finished;
        }
        true
    }

    pub fn info(&self) -> SessionInfo {
        SessionInfo {
            id: self.id.clone(),
            status: self.status,
            tick: self.state.tick,
            human_player: self.config.human_side,
            ai_opponent: self.config.ai_opponent.clone(),
            tick_rate: self.config.tick_rate,
            outcome: self.state.is_terminal(),
            hash: self.state.state_hash(),
            late_ai_moves: self.late_ai_moves,
        }
    }

    pub fn frame(&self) -> String {
        let hash = self.log.last().and_then(|r| r.hash.clone()).unwrap_or_else(|| self.state.state_hash());
        json!({
            "type": "frame",
            "tick": self.state.tick,
            "hash": hash,
            "status": self.status,
            "state": &self.state,
        })
        .to_string()
    }

    pub fn result(&self) -> String {
        json!({
            "type": "result",
            "tick": self.state.tick,
            "outcome": self.state.is_terminal(),
            "score": [self.state.score(Player::One), self.state.score(Player::Two)],
            "hash": self.state.state_hash(),
        })
        .to_string()
    }

    /// Field averaged into roughly `GRAVITY_PREVIEW_COLS` columns.
    pub fn gravity_preview(&self) -> String {
        let Some(field) = self.state.gravity() else {
            return json!({ "type": "gravity", "grid": [] }).to_string();
        };
        let (cols, _) = field.dimensions();
        let factor = cols.div_ceil(GRAVITY_PREVIEW_COLS).max(1);
        let grid: Vec<Vec<[f64; 2]>> = field
            .downsample(factor)
            .into_iter()
            .map(|row| row.into_iter().map(|v| [v.x, v.y]).collect())
            .collect();
        json!({
            "type": "gravity",
            "cellSize": field.cell_size() * factor as f64,
            "rows": grid.len(),
            "cols": grid.first().map_or(0, Vec::len),
            "grid": grid,
        })
        .to_string()
    }

    /// Everything needed to reproduce this session offline.
    pub fn replay(&self) -> Replay {
        let human = "human".to_string();
        let name = |p| if self.config.human_side == Some(p) { human.clone() } else { self.config.ai_opponent.clone() };
        Replay::new(
            self.config.seed,
            self.config.parameters.clone(),
            self.state.actuators,
            [name(Player::One), name(Player::Two)],
            self.log.clone(),
            self.state.is_terminal(),
            self.state.state_hash(),
        )
    }
}

enum Command {
    Start(oneshot::Sender<Result<SessionInfo, ControlError>>),
    Pause(oneshot::Sender<Result<SessionInfo, ControlError>>),
    Input(Player, Action, oneshot::Sender<Result<u32, InputError>>),
    Replay(oneshot::Sender<Replay>),
    HumanConnected,
    HumanDisconnected,
    Close,
}

/// Cheap, cloneable access to a running session task.
#[derive(Clone)]
pub struct SessionHandle {
    id: Arc<str>,
    token: Option<Arc<str>>,
    human: Option<Player>,
    commands: mpsc::UnboundedSender<Command>,
    frames: broadcast::Sender<Arc<str>>,
    info: watch::Receiver<SessionInfo>,
    latest: watch::Receiver<Arc<str>>,
    gravity: Arc<str>,
}

impl SessionHandle {
    pub fn id(&self) -> &str {
        &self.id
    }

    /// Secret that authenticates the human seat on the WebSocket.
    pub fn human_token(&self) -> Option<&str> {
        self.token.as_deref()
    }

    pub fn human(&self) -> Option<Player> {
        self.human
    }

    pub fn info(&self) -> SessionInfo {
        self.info.borrow().clone()
    }

    pub fn watch_info(&self) -> watch::Receiver<SessionInfo> {
        self.info.clone()
    }

    /// The most recent frame, available from creation on.
    pub fn latest_frame(&self) -> Arc<str> {
        self.latest.borrow().clone()
    }

    pub fn gravity_preview(&self) -> Arc<str> {
        self.gravity.clone()
    }

    /// Frames and result messages from now on.
    pub fn subscribe(&self) -> broadcast::Receiver<Arc<str>> {
        self.frames.subscribe()
    }

    async fn ask<T>(&self, make: impl FnOnce(oneshot::Sender<T>) -> Command) -> Option<T> {
        let (tx, rx) = oneshot::channel();
        self.commands.send(make(tx)).ok()?;
        rx.await.ok()
    }

    pub async fn start(&self) -> Result<SessionInfo, ControlError> {
        self.ask(Command::Start).await.unwrap_or(Err(ControlError::Closed))
    }

    pub async fn pause(&self) -> Result<SessionInfo, ControlError> {
        self.ask(Command::Pause).await.unwrap_or(Err(ControlError::Closed))
    }

    /// Latches `action` for `player`; returns the tick it will be applied on.
    pub async fn submit_input(&self, player: Player, action: Action) -> Result<u32, InputError> {
        self.ask(|tx| Command::Input(player, action, tx)).await.unwrap_or(Err(InputError::Closed))
    }

    pub async fn replay(&self) -> Option<Replay> {
        self.ask(Command::Replay).await
    }

    pub(crate) fn human_connected(&self) {
        let _ = self.commands.send(Command::HumanConnected);
    }

    pub(crate) fn human_disconnected(&self) {
        let _ = self.commands.send(Command::HumanDisconnected);
    }

    /// Stops the session task.
    pub fn close(&self) {
        let _ = self.commands.send(Command::Close);
    }

    pub fn is_closed(&self) -> bool {
        self.commands.is_closed()
    }
}

fn random_token() -> String {
    format!("{:032x}", rand::random::<u128>())
}

/// Validates `config`, builds the game and starts the session task in Lobby.
pub fn spawn(config: SessionConfig) -> Result<SessionHandle, CreateError> {
    let id = format!("{:016x}", rand::random::<u64>());
    let core = SessionCore::new(id.clone(), config)?;
    let (commands, rx) = mpsc::unbounded_channel();
    let (frames, _) = broadcast::channel(256);
    let (info_tx, info) = watch::channel(core.info());
    let (latest_tx, latest) = watch::channel(Arc::from(core.frame()));
    let handle = SessionHandle {
        id: id.into(),
        token: core.human().map(|_| random_token().into()),
        human: core.human(),
        commands,
        frames: frames.clone(),
        info,
        latest,
        gravity: core.gravity_preview().into(),
    };
    tokio::spawn(run(core, rx, frames, info_tx, latest_tx));
    Ok(handle)
}

async fn run(
    mut core: SessionCore,
    mut commands: mpsc::UnboundedReceiver<Command>,
    frames: broadcast::Sender<Arc<str>>,
    info: watch::Sender<SessionInfo>,
    latest: watch::Sender<Arc<str>>,
) {
    let period = core.config().period();
    let grace = Duration::from_millis(core.config().disconnect_grace_ms);
    let spec: AgentSpec = core.config().ai_opponent.parse().expect("validated at creation");
    let seed = core.config().seed;
    let mut workers: [Option<AiWorker>; 2] = [None, None];
    for p in core.ai_seats() {
        let agent_seed = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(p.index() as u64 + 1);
        workers[p.index()] = Some(AiWorker::spawn(spec.build(agent_seed), p, core.config().ai_cap()));
    }
    let mut ticker = tokio::time::interval(period);
    ticker.set_missed_tick_behavior(MissedTickBehavior::Skip);
    let mut humans_connected = 0usize;
    let mut pause_at: Option<Instant> = None;

    let publish = |core: &SessionCore| {
        info.send_replace(core.info());
    };

    loop {
        let running = core.status() == SessionStatus::Running;
        let grace_deadline = pause_at.unwrap_or_else(Instant::now);
        tokio::select! {
            cmd = commands.recv() => {
                let Some(cmd) = cmd else { break };
                match cmd {
                    Command::Start(reply) => {
                        let was_running = running;
                        let r = core.start().map(|_| core.info());
                        if r.is_ok() && !was_running {
                            ticker.reset();
                            for w in workers.iter_mut().flatten() {
                                w.request(core.state());
                            }
                            let _ = frames.send(status_message(SessionStatus::Running));
                        }
                        publish(&core);
                        let _ = reply.send(r);
                    }
                    Command::Pause(reply) => {
                        let r = core.pause().map(|_| core.info());
                        if r.is_ok() && running {
                            let _ = frames.send(status_message(SessionStatus::Paused));
                        }
                        publish(&core);
                        let _ = reply.send(r);
                    }
                    Command::Input(player, action, reply) => {
                        let _ = reply.send(core.submit_input(player, action).map(|_| core.state().tick + 1));
                    }
                    Command::Replay(reply) => {
                        let _ = reply.send(core.replay());
                    }
                    Command::HumanConnected => {
                        humans_connected += 1;
                        pause_at = None;
                    }
                    Command::HumanDisconnected => {
                        humans_connected = humans_connected.saturating_sub(1);
                        if humans_connected == 0 {
                            pause_at = Some(Instant::now() + grace);
                        }
                    }
                    Command::Close => break,
                }
            }
            _ = ticker.tick(), if running => {
                let mut ai = [None, None];
                for (i, w) in workers.iter_mut().enumerate() {
                    if let Some(w) = w {
                        ai[i] = w.take(core.state().tick);
                    }
                }
                core.tick(ai);
                let frame: Arc<str> = core.frame().into();
                latest.send_replace(frame.clone());
                let _ = frames.send(frame);
                if core.status() == SessionStatus::Finished {
                    let _ = frames.send(core.result().into());
                } else {
                    for w in workers.iter_mut().flatten() {
                        w.request(core.state());
                    }
                }
                publish(&core);
            }
            _ = tokio::time::sleep_until(grace_deadline), if pause_at.is_some() => {
                pause_at = None;
                if core.pause().is_ok() && running {
                    tracing::info!(session = core.id(), "human disconnected, pausing");
                    let _ = frames.send(status_message(SessionStatus::Paused));
                }
                publish(&core);
            }
        }
    }
}

fn status_message(status: SessionStatus) -> Arc<str> {
    json!({ "type": "status", "status": status }).to_string().into()
}
