use std::io::{BufRead, BufReader};
use std::process::{Child, Command, Stdio};
use std::time::Duration;

use futures::{SinkExt, StreamExt};
use serde_json::Value;
use tokio_tungstenite::tungstenite::Message;

struct Server {
    child: Child,
    addr: String,
}

impl Drop for Server {
    fn drop(&mut self) {
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

fn start(extra: &[&str]) -> Server {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pitch"))
        .args(["serve", "--port", "0"])
        .args(extra)
        .stdout(Stdio::piped())
        .spawn()
        .expect("server starts");
    let mut line = String::new();
    BufReader::new(child.stdout.take().unwrap()).read_line(&mut line).unwrap();
    let addr = line.trim().strip_prefix("listening on http://").expect("address line").to_string();
    Server { child, addr }
}

type Socket = tokio_tungstenite::WebSocketStream<tokio_tungstenite::MaybeTlsStream<tokio::net::TcpStream>>;

async fn connect(server: &Server) -> Socket {
    let (ws, _) = tokio_tungstenite::connect_async(format!("ws://{}/ws", server.addr)).await.unwrap();
    ws
}

async fn next_json(ws: &mut Socket) -> Value {
    loop {
        let msg = tokio::time::timeout(Duration::from_secs(5), ws.next()).await.expect("message in time");
        if let Message::Text(t) = msg.unwrap().unwrap() {
            return serde_json::from_str(&t).unwrap();
        }
    }
}

async fn next_of(ws: &mut Socket, t: &str) -> Value {
    loop {
        let v = next_json(ws).await;
        if v["t"] == t {
            return v;
        }
    }
}

async fn send(ws: &mut Socket, text: &str) {
    ws.send(Message::Text(text.into())).await.unwrap();
}

#[tokio::test]
async fn static_page_is_served() {
    let server = start(&[]);
    let mut stream = tokio::net::TcpStream::connect(&server.addr).await.unwrap();
    use tokio::io::{AsyncReadExt, AsyncWriteExt};
    stream.write_all(b"GET / HTTP/1.1\r\nHost: x\r\nConnection: close\r\n\r\n").await.unwrap();
    let mut body = String::new();
    stream.read_to_string(&mut body).await.unwrap();
    assert!(body.starts_with("HTTP/1.1 200"));
    assert!(body.contains("/ws"));
}

#[tokio::test]
async fn live_states_stream_at_ten_hertz() {
    let server = start(&["--scenario", "11_vs_11_easy"]);
    let mut ws = connect(&server).await;
    let config = next_json(&mut ws).await;
    assert_eq!(config["t"], "config");
    assert_eq!(config["mode"], "live");
    assert_eq!(config["actions"].as_array().unwrap().len(), 19);
    let first = next_of(&mut ws, "state").await;
    assert_eq!(first["frame"], 0);
    let start = std::time::Instant::now();
    let mut frames = vec![];
    for _ in 0..5 {
        frames.push(next_of(&mut ws, "state").await["frame"].as_u64().unwrap());
    }
    let elapsed = start.elapsed();
    assert_eq!(frames, vec![1, 2, 3, 4, 5]);
    assert!(elapsed >= Duration::from_millis(350), "{elapsed:?}");
    assert!(elapsed < Duration::from_millis(1500), "{elapsed:?}");
}

#[tokio::test]
async fn arrow_press_and_release_reach_sticky_flags() {
    let server = start(&["--scenario", "11_vs_11_easy", "--human-side", "left"]);
    let mut ws = connect(&server).await;
    let config = next_json(&mut ws).await;
    assert_eq!(config["human_side"], "left");
    let state = next_of(&mut ws, "state").await;
    let active = state["players"]
        .as_array()
        .unwrap()
        .iter()
        .position(|p| p["side"] == "left" && p["active"] == true)
        .unwrap();

    send(&mut ws, r#"{"t":"input","action":"Right","press":true}"#).await;
    let mut moving = false;
    for _ in 0..5 {
        let s = next_of(&mut ws, "state").await;
        if s["players"][active]["direction"] == "Right" {
            moving = true;
            break;
        }
    }
    assert!(moving, "Right press should set the sticky direction");

    send(&mut ws, r#"{"t":"input","action":"Right","press":false}"#).await;
    send(&mut ws, r#"{"t":"input","action":"StopMoving","press":true}"#).await;
    let mut stopped = false;
    for _ in 0..5 {
        let s = next_of(&mut ws, "state").await;
        if s["players"][active]["direction"].is_null() {
            stopped = true;
            break;
        }
    }
    assert!(stopped, "StopMoving should clear the sticky direction");
}

#[tokio::test]
async fn replay_pause_seek_and_resume() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ep.mprp");
    let status = Command::new(env!("CARGO_BIN_EXE_pitch"))
        .args(["replay", "record", "--file", file.to_str().unwrap(), "--scenario", "empty_goal", "--seed", "1"])
        .stdout(Stdio::null())
        .status()
        .unwrap();
    assert!(status.success());

    let server = start(&["--replay", file.to_str().unwrap(), "--speed", "4"]);
    let mut ws = connect(&server).await;
    let config = next_json(&mut ws).await;
    assert_eq!(config["mode"], "replay");
    let total = config["frames"].as_u64().unwrap();
    let initial = next_of(&mut ws, "state").await;

    send(&mut ws, r#"{"t":"ctl","cmd":"pause"}"#).await;
    let ack = next_of(&mut ws, "ack").await;
    assert_eq!(ack["cmd"], "pause");

    send(&mut ws, r#"{"t":"ctl","cmd":"seek","frame":0}"#).await;
    assert_eq!(next_of(&mut ws, "ack").await["frame"], 0);
    let at_zero = next_json(&mut ws).await;
    assert_eq!(at_zero["t"], "state");
    assert_eq!(at_zero, initial);

    send(&mut ws, r#"{"t":"ctl","cmd":"seek","frame":999999}"#).await;
    assert_eq!(next_of(&mut ws, "ack").await["frame"], total);
    assert_eq!(next_json(&mut ws).await["frame"], total);

    send(&mut ws, r#"{"t":"ctl","cmd":"seek","frame":0}"#).await;
    next_of(&mut ws, "ack").await;
    send(&mut ws, r#"{"t":"ctl","cmd":"resume"}"#).await;
    let mut last = 0;
    for _ in 0..3 {
        let f = next_of(&mut ws, "state").await["frame"].as_u64().unwrap();
        assert!(f > last || last == 0);
        last = f;
    }
    assert!(last >= 1);
}

#[tokio::test]
async fn malformed_messages_get_errors() {
    let server = start(&[]);
    let mut ws = connect(&server).await;
    next_json(&mut ws).await;
    send(&mut ws, "not json").await;
    assert_eq!(next_of(&mut ws, "error").await["t"], "error");
    send(&mut ws, r#"{"t":"input","action":"Right","press":true}"#).await;
    assert!(next_of(&mut ws, "error").await["message"].as_str().unwrap().contains("no human side"));
}
