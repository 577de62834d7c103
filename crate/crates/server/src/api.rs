use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use axum::body::Bytes;
use axum::extract::ws::{Message, WebSocket, WebSocketUpgrade};
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use futures_util::{SinkExt, StreamExt};
use planet_wars::{Action, AgentSpec, Player};
use serde::Deserialize;
use serde_json::{json, Value};
use tokio::sync::broadcast::error::RecvError;

use crate::session::{self, ControlError, CreateError, InputError, SessionConfig, SessionHandle};

/// Registry of live sessions shared by all handlers.
#[derive(Clone, Default)]
pub struct AppState {
    sessions: Arc<RwLock<HashMap<String, SessionHandle>>>,
}

impl AppState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn create(&self, config: SessionConfig) -> Result<SessionHandle, CreateError> {
        let handle = session::spawn(config)?;
        self.sessions.write().unwrap().insert(handle.id().to_string(), handle.clone());
        Ok(handle)
    }

    pub fn get(&self, id: &str) -> Option<SessionHandle> {
        self.sessions.read().unwrap().get(id).cloned()
    }

    pub fn remove(&self, id: &str) -> Option<SessionHandle> {
        let h = self.sessions.write().unwrap().remove(id)?;
        h.close();
        Some(h)
    }

    pub fn len(&self) -> usize {
        self.sessions.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/agents", get(agents))
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(status).delete(delete))
        .route("/sessions/{id}/start", post(start))
        .route("/sessions/{id}/pause", post(pause))
        .route("/sessions/{id}/replay", get(replay))
        .route("/sessions/{id}/ws", get(ws))
        .with_state(state)
}

fn error(code: StatusCode, body: Value) -> Response {
    (code, Json(body)).into_response()
}

fn not_found(id: &str) -> Response {
    error(StatusCode::NOT_FOUND, json!({ "error": format!("no session {id:?}") }))
}

async fn agents() -> Json<Vec<String>> {
    Json(AgentSpec::catalogue())
}

async fn create(State(app): State<AppState>, body: Bytes) -> Response {
    let config: SessionConfig = match serde_json::from_slice(&body) {
        Ok(c) => c,
        Err(e) => return error(StatusCode::BAD_REQUEST, json!({ "error": e.to_string() })),
    };
    match app.create(config) {
        Ok(h) => (
            StatusCode::CREATED,
            Json(json!({ "id": h.id(), "humanToken": h.human_token(), "status": h.info().status })),
        )
            .into_response(),
        Err(CreateError::InvalidParameters(v)) => error(
            StatusCode::UNPROCESSABLE_ENTITY,
            json!({ "error": "invalid parameters", "violations": v }),
        ),
        Err(e) => error(StatusCode::BAD_REQUEST, json!({ "error": e.to_string() })),
    }
}

async fn status(State(app): State<AppState>, Path(id): Path<String>) -> Response {
    match app.get(&id) {
        Some(h) => Json(h.info()).into_response(),
        None => not_found(&id),
    }
}

async fn delete(State(app): State<AppState>, Path(id): Path<String>) -> Response {
    match app.remove(&id) {
        Some(_) => StatusCode::NO_CONTENT.into_response(),
        None => not_found(&id),
    }
}

fn control(r: Result<session::SessionInfo, ControlError>) -> Response {
    match r {
        Ok(info) => Json(info).into_response(),
        Err(e) => error(StatusCode::CONFLICT, json!({ "error": e.to_string() })),
    }
}

async fn start(State(app): State<AppState>, Path(id): Path<String>) -> Response {
    match app.get(&id) {
        Some(h) => control(h.start().await),
        None => not_found(&id),
    }
}

async fn pause(State(app): State<AppState>, Path(id): Path<String>) -> Response {
    match app.get(&id) {
        Some(h) => control(h.pause().await),
        None => not_found(&id),
    }
}

async fn replay(State(app): State<AppState>, Path(id): Path<String>) -> Response {
    match app.get(&id) {
        Some(h) => match h.replay().await {
            Some(r) => Json(r).into_response(),
            None => error(StatusCode::GONE, json!({ "error": "session closed" })),
        },
        None => not_found(&id),
    }
}

#[derive(Deserialize)]
struct WsQuery {
    token: Option<String>,
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum ClientMessage {
    Input { action: Action },
}

async fn ws(
    State(app): State<AppState>,
    Path(id): Path<String>,
    Query(q): Query<WsQuery>,
    upgrade: WebSocketUpgrade,
) -> Response {
    let Some(h) = app.get(&id) else { return not_found(&id) };
    let seat = match (&q.token, h.human_token()) {
        (None, _) => None,
        (Some(given), Some(expected)) if given == expected => h.human(),
        _ => return error(StatusCode::FORBIDDEN, json!({ "error": "bad seat token" })),
    };
    upgrade.on_upgrade(move |socket| connection(socket, h, seat))
}

/// One client. `seat` is the authenticated human seat, `None` for spectators.
async fn connection(socket: WebSocket, h: SessionHandle, seat: Option<Player>) {
    let (mut tx, mut rx) = socket.split();
    let mut frames = h.subscribe();
    if seat.is_some() {
        h.human_connected();
    }
    let hello = [h.gravity_preview(), h.latest_frame()];
    let mut ok = true;
    for m in hello {
        ok &= tx.send(Message::Text(m.as_ref().into())).await.is_ok();
    }

    while ok {
        tokio::select! {
            frame = frames.recv() => match frame {
                Ok(f) => ok = tx.send(Message::Text(f.as_ref().into())).await.is_ok(),
                Err(RecvError::Lagged(_)) => {}
                Err(RecvError::Closed) => break,
            },
            msg = rx.next() => {
                let text = match msg {
                    Some(Ok(Message::Text(t))) => t,
                    Some(Ok(Message::Close(_))) | None | Some(Err(_)) => break,
                    Some(Ok(_)) => continue,
                };
                let reply = match serde_json::from_str::<ClientMessage>(&text) {
                    Err(e) => json!({ "type": "error", "reason": "badMessage", "detail": e.to_string() }),
                    Ok(ClientMessage::Input { action }) => {
                        let r = match seat {
                            Some(p) => h.submit_input(p, action).await,
                            None => Err(InputError::Spectator),
                        };
                        match r {
                            Ok(tick) => json!({ "type": "ack", "tick": tick }),
                            Err(e) => {
                                let mut v = serde_json::to_value(&e).unwrap_or(Value::Null);
                                v["type"] = "error".into();
                                v["detail"] = e.to_string().into();
                                v
                            }
                        }
                    }
                };
                ok = tx.send(Message::Text(reply.to_string().into())).await.is_ok();
            }
        }
    }
    if seat.is_some() {
        h.human_disconnected();
    }
}
