#![allow(dead_code)]

use std::time::Duration;

use futures_util::{SinkExt, StreamExt};
use planet_wars_server::{router, AppState};
use serde_json::{json, Value};
use tokio::net::TcpStream;
use tokio_tungstenite::tungstenite::Message;
use tokio_tungstenite::{MaybeTlsStream, WebSocketStream};

pub type Ws = WebSocketStream<MaybeTlsStream<TcpStream>>;

pub struct Server {
    pub base: String,
    pub app: AppState,
    pub http: reqwest::Client,
}

pub async fn server() -> Server {
    let app = AppState::new();
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    let routes = router(app.clone());
    tokio::spawn(async move { axum::serve(listener, routes).await.unwrap() });
    Server { base: format!("http://{addr}"), app, http: reqwest::Client::new() }
}

impl Server {
    pub async fn post(&self, path: &str, body: Value) -> (u16, Value) {
        let r = self.http.post(format!("{}{path}", self.base)).json(&body).send().await.unwrap();
        let code = r.status().as_u16();
        (code, r.json().await.unwrap_or(Value::Null))
    }

    pub async fn get(&self, path: &str) -> (u16, Value) {
        let r = self.http.get(format!("{}{path}", self.base)).send().await.unwrap();
        let code = r.status().as_u16();
        (code, r.json().await.unwrap_or(Value::Null))
    }

    /// Creates a session and returns (id, human token).
    pub async fn create(&self, body: Value) -> (String, Option<String>) {
        let (code, v) = self.post("/sessions", body).await;
        assert_eq!(code, 201, "{v}");
        (v["id"].as_str().unwrap().to_string(), v["humanToken"].as_str().map(String::from))
    }

    pub async fn connect(&self, id: &str, token: Option<&str>) -> Ws {
        let ws_base = self.base.replace("http://", "ws://");
        let url = match token {
            Some(t) => format!("{ws_base}/sessions/{id}/ws?token={t}"),
            None => format!("{ws_base}/sessions/{id}/ws"),
        };
        tokio_tungstenite::connect_async(url).await.unwrap().0
    }
}

pub fn config(ai: &str, human: Option<&str>, tick_rate: f64) -> Value {
    json!({ "seed": 7, "humanSide": human, "aiOpponent": ai, "tickRate": tick_rate })
}

pub async fn next_json(ws: &mut Ws) -> Value {
    loop {
        let msg = tokio::time::timeout(Duration::from_secs(10), ws.next())
            .await
            .expect("message within 10s")
            .expect("socket open")
            .unwrap();
        if let Message::Text(t) = msg {
            return serde_json::from_str(&t).unwrap();
        }
    }
}

/// Skips messages until one of the given type arrives.
pub async fn next_of(ws: &mut Ws, kind: &str) -> Value {
    loop {
        let v = next_json(ws).await;
        if v["type"] == kind {
            return v;
        }
    }
}

pub async fn send(ws: &mut Ws, v: Value) {
    ws.send(Message::Text(v.to_string().into())).await.unwrap();
}
