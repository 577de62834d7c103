//! Real-time Planet Wars sessions. Each session runs its own paced tick loop
//! and streams full-state JSON frames to WebSocket subscribers; a human seat
//! feeds actions through a latch that the next tick consumes.
//!
//! ```no_run
//! # async fn demo() -> std::io::Result<()> {
//! let app = planet_wars_server::router(planet_wars_server::AppState::new());
//! let listener = tokio::net::TcpListener::bind("127.0.0.1:8080").await?;
//! axum::serve(listener, app).await
//! # }
//! ```

mod ai;
pub mod api;
pub mod session;

pub use api::{router, AppState};
pub use session::{
    spawn, ControlError, CreateError, InputError, SessionConfig, SessionCore, SessionHandle, SessionInfo, SessionStatus,
};
