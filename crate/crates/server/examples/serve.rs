//! Run the session server.
//!
//! ```text
//! cargo run -p planet-wars-server --example serve -- 127.0.0.1:8080
//! curl -XPOST localhost:8080/sessions -d '{"aiOpponent":"heuristic","humanSide":"player1","seed":7}'
//! ```
//!
//! With `--demo` it also starts an AI-vs-AI session and logs its progress.

use std::net::SocketAddr;

use planet_wars_server::{router, AppState, SessionConfig, SessionStatus};
use tracing_subscriber::EnvFilter;

#[tokio::main]
async fn main() -> std::io::Result<()> {
    tracing_subscriber::fmt()
        .with_env_filter(EnvFilter::try_from_default_env().unwrap_or_else(|_| EnvFilter::new("info")))
        .init();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let addr: SocketAddr = args
        .iter()
        .find(|a| !a.starts_with("--"))
        .map(|a| a.parse().expect("address like 127.0.0.1:8080"))
        .unwrap_or_else(|| "127.0.0.1:8080".parse().unwrap());

    let app = AppState::new();
    if args.iter().any(|a| a == "--demo") {
        let mut cfg = SessionConfig::new("rhea:5:50");
        cfg.human_side = None;
        cfg.tick_rate = 60.0;
        let session = app.create(cfg).expect("valid demo config");
        tracing::info!(id = session.id(), "demo session; watch it at /sessions/{}/ws", session.id());
        session.start().await.expect("fresh session starts");
        let mut info = session.watch_info();
        tokio::spawn(async move {
            while info.changed().await.is_ok() {
                let i = info.borrow_and_update().clone();
                if i.tick.is_multiple_of(300) || i.status == SessionStatus::Finished {
                    tracing::info!(tick = i.tick, status = ?i.status, outcome = ?i.outcome, late_ai_moves = i.late_ai_moves, "demo");
                }
                if i.status == SessionStatus::Finished {
                    break;
                }
            }
        });
    }

    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(app)).await
}
