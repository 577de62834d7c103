//! AI moves are computed on a dedicated thread so a slow planner can never
//! stall the tick loop. The request for tick `t` is sent right after tick
//! `t` is produced; at the next boundary the reply is used only if it is for
//! that tick and stayed within the cap.

use std::sync::mpsc as std_mpsc;
use std::time::{Duration, Instant};

use planet_wars::{Action, Agent, GameState, Player};
use tokio::sync::mpsc;

struct Reply {
    tick: u32,
    action: Action,
    elapsed: Duration,
}

pub(crate) struct AiWorker {
    requests: std_mpsc::Sender<GameState>,
    replies: mpsc::UnboundedReceiver<Reply>,
    cap: Duration,
    busy: bool,
    ready: Option<Reply>,
}

impl AiWorker {
    pub(crate) fn spawn(mut agent: Box<dyn Agent>, player: Player, cap: Duration) -> Self {
        let (requests, inbox) = std_mpsc::channel::<GameState>();
        let (outbox, replies) = mpsc::unbounded_channel();
        std::thread::Builder::new()
            .name(format!("ai-{player:?}"))
            .spawn(move || {
                for state in inbox {
                    let t = Instant::now();
                    let action = agent.act(&state, player);
                    let reply = Reply { tick: state.tick, action, elapsed: t.elapsed() };
                    if outbox.send(reply).is_err() {
                        break;
                    }
                }
            })
            .expect("spawn AI thread");
        Self { requests, replies, cap, busy: false, ready: None }
    }

    fn drain(&mut self) {
        while let Ok(r) = self.replies.try_recv() {
            self.busy = false;
            self.ready = Some(r);
        }
    }

    /// Asks for a move on `state` unless the previous request is still running.
    pub(crate) fn request(&mut self, state: &GameState) {
        self.drain();
        if self.busy || self.ready.as_ref().is_some_and(|r| r.tick == state.tick) {
            return;
        }
        if self.requests.send(state.clone()).is_ok() {
            self.busy = true;
        }
    }

    /// The move for `tick`, if it arrived in time.
    pub(crate) fn take(&mut self, tick: u32) -> Option<Action> {
        self.drain();
        match self.ready.take() {
            Some(r) if r.tick == tick && r.elapsed <= self.cap => Some(r.action),
            _ => None,
        }
    }
}
