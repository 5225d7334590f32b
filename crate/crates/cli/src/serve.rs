use std::collections::VecDeque;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use anyhow::{Context, Result};
use axum::extract::ws::{Message, WebSocket, WebSocketUpgrade};
use axum::extract::State;
use axum::response::{Html, IntoResponse};
use axum::routing::get;
use axum::Router;
use clap::ValueEnum;
use pitch_core::env::{load_scenario, EnvOptions, Environment};
use pitch_core::harness::Replay;
use pitch_core::{Action, GameState, ScenarioConfig, Side};
use serde::Deserialize;
use serde_json::{json, Value};

const INDEX_HTML: &str = include_str!("../static/index.html");
pub const FRAME_PERIOD: Duration = Duration::from_millis(100);

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq, Debug)]
pub enum HumanSide {
    Left,
    Right,
}

impl HumanSide {
    fn side(self) -> Side {
        match self {
            HumanSide::Left => Side::Left,
            HumanSide::Right => Side::Right,
        }
    }
}

#[derive(clap::Args)]
pub struct Args {
    /// Port to listen on (0 picks a free one).
    #[arg(long, default_value_t = 8080)]
    port: u16,
    #[arg(long, default_value = "11_vs_11_medium")]
    scenario: String,
    /// Side played from the keyboard; bots play both sides when absent.
    #[arg(long, value_enum)]
    human_side: Option<HumanSide>,
    /// Serve a recorded replay instead of a live game.
    #[arg(long)]
    replay: Option<PathBuf>,
    /// Replay playback speed multiplier, 0.5 to 4.
    #[arg(long, default_value_t = 1.0)]
    speed: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum Source {
    Live { config: ScenarioConfig, human: Option<Side>, seed: u64 },
    Replay(Arc<Replay>),
}

struct Shared {
    source: Source,
    period: Duration,
}

pub fn run(args: Args) -> Result<()> {
    let source = match &args.replay {
        Some(path) => Source::Replay(Arc::new(Replay::load(path)?)),
        None => Source::Live {
            config: load_scenario(&args.scenario)?,
            human: args.human_side.map(HumanSide::side),
            seed: args.seed,
        },
    };
    let speed = args.speed.clamp(0.5, 4.0);
    let period = match source {
        Source::Replay(_) => FRAME_PERIOD.div_f64(speed),
        Source::Live { .. } => FRAME_PERIOD,
    };
    let shared = Arc::new(Shared { source, period });
    let app = Router::new()
        .route("/", get(index))
        .route("/ws", get(upgrade))
        .with_state(shared);
    let rt = tokio::runtime::Runtime::new()?;
    rt.block_on(async move {
        let listener = tokio::net::TcpListener::bind(SocketAddr::from(([127, 0, 0, 1], args.port)))
            .await
            .with_context(|| format!("binding port {}", args.port))?;
        println!("listening on http://{}", listener.local_addr()?);
        axum::serve(listener, app).await?;
        Ok(())
    })
}

async fn index() -> Html<&'static str> {
    Html(INDEX_HTML)
}

async fn upgrade(ws: WebSocketUpgrade, State(shared): State<Arc<Shared>>) -> impl IntoResponse {
    ws.on_upgrade(move |socket| session(socket, shared))
}

#[derive(Deserialize)]
#[serde(tag = "t", rename_all = "lowercase")]
enum ClientMessage {
    Input { action: String, press: bool },
    Ctl { cmd: String, frame: Option<u64> },
}

/// One connection's game: a live environment or a replay cursor.
struct Playback {
    env: Environment,
    human: Option<Side>,
    replay: Option<Arc<Replay>>,
    cursor: usize,
    inputs: VecDeque<Action>,
    episode: u64,
}

impl Playback {
    fn new(shared: &Shared) -> Result<Self> {
        match &shared.source {
            Source::Live { config, human, seed } => {
                let (l, r) = match human {
                    Some(Side::Left) => (1, 0),
                    Some(Side::Right) => (0, 1),
                    None => (0, 0),
                };
                let options = EnvOptions {
                    seed: *seed,
                    controlled_left: Some(l),
                    controlled_right: Some(r),
                    ..Default::default()
                };
                let mut env = Environment::new(config.clone(), options)?;
                env.reset()?;
                Ok(Self { env, human: *human, replay: None, cursor: 0, inputs: VecDeque::new(), episode: 0 })
            }
            Source::Replay(replay) => {
                let mut env = Environment::new(replay.header.config()?, replay.header.options())?;
                env.reset()?;
                Ok(Self {
                    env,
                    human: None,
                    replay: Some(replay.clone()),
                    cursor: 0,
                    inputs: VecDeque::new(),
                    episode: 0,
                })
            }
        }
    }

    fn state(&self) -> &GameState {
        self.env.state().expect("reset on creation")
    }

    fn config_message(&self) -> Value {
        let cfg = self.env.config();
        json!({
            "t": "config",
            "scenario": cfg.name,
            "mode": if self.replay.is_some() { "replay" } else { "live" },
            "human_side": self.human.map(Side::name),
            "frames": self.replay.as_ref().map(|r| r.frames.len()),
            "duration_frames": cfg.duration_frames,
            "pitch": { "half_length": pitch_core::geometry::PITCH_HALF_LENGTH, "half_width": pitch_core::geometry::PITCH_HALF_WIDTH },
            "actions": Action::ALL.iter().map(|a| a.name()).collect::<Vec<_>>(),
            "hz": 10,
        })
    }

    /// Advances one frame; `None` once a replay has ended.
    fn advance(&mut self) -> Result<Option<Value>> {
        if let Some(replay) = &self.replay {
            let Some(actions) = replay.frames.get(self.cursor) else { return Ok(None) };
            self.env.step(actions)?;
            self.cursor += 1;
            return Ok(Some(state_message(self.state())));
        }
        let actions = match self.human {
            Some(side) => {
                let a = self.inputs.pop_front().unwrap_or(Action::Idle);
                // keyboard directions are screen directions; the env expects the side's own frame
                vec![if side == Side::Right { a.mirrored() } else { a }]
            }
            None => Vec::new(),
        };
        if self.env.step(&actions)?.done {
            self.env.reset()?;
            self.episode += 1;
        }
        Ok(Some(state_message(self.state())))
    }

    fn seek(&mut self, frame: usize) -> Result<usize> {
        let replay = self.replay.clone().context("seek is only available in replay mode")?;
        let target = frame.min(replay.frames.len());
        self.env = Environment::new(replay.header.config()?, replay.header.options())?;
        self.env.reset()?;
        for actions in &replay.frames[..target] {
            self.env.step(actions)?;
        }
        self.cursor = target;
        Ok(target)
    }
}

fn state_message(s: &GameState) -> Value {
    let mut players = Vec::new();
    for side in Side::BOTH {
        for (i, p) in s.team(side).iter().enumerate() {
            players.push(json!({
                "side": side.name(),
                "index": i,
                "role": p.role.name(),
                "x": p.position.x,
                "y": p.position.y,
                "active": s.active(side) == i,
                "sent_off": p.sent_off,
                "direction": p.sticky.direction.map(|d| d.action().name()),
                "sprint": p.sticky.sprint,
                "dribble": p.sticky.dribble,
            }));
        }
    }
    json!({
        "t": "state",
        "frame": s.frame,
        "players": players,
        "ball": [s.ball.position.x, s.ball.position.y, s.ball.z],
        "score": s.score,
        "mode": s.mode.name(),
    })
}

async fn send(socket: &mut WebSocket, v: &Value) -> bool {
    socket.send(Message::Text(v.to_string().into())).await.is_ok()
}

async fn session(mut socket: WebSocket, shared: Arc<Shared>) {
    let mut play = match Playback::new(&shared) {
        Ok(p) => p,
        Err(e) => {
            let _ = send(&mut socket, &json!({"t": "error", "message": e.to_string()})).await;
            return;
        }
    };
    if !send(&mut socket, &play.config_message()).await || !send(&mut socket, &state_message(play.state())).await {
        return;
    }
    let mut ticker = tokio::time::interval(shared.period);
    ticker.tick().await;
    let mut paused = false;
    let mut ended = false;
    loop {
        tokio::select! {
            msg = socket.recv() => {
                let text = match msg {
                    Some(Ok(Message::Text(t))) => t,
                    Some(Ok(Message::Close(_))) | None | Some(Err(_)) => break,
                    Some(Ok(_)) => continue,
                };
                let reply = handle(&mut play, &text, &mut paused, &mut ended);
                for v in reply {
                    if !send(&mut socket, &v).await {
                        return;
                    }
                }
            }
            _ = ticker.tick() => {
                if paused || ended {
                    continue;
                }
                let msg = match play.advance() {
                    Ok(Some(m)) => m,
                    Ok(None) => {
                        ended = true;
                        json!({"t": "end", "frame": play.state().frame})
                    }
                    Err(e) => json!({"t": "error", "message": e.to_string()}),
                };
                if !send(&mut socket, &msg).await {
                    return;
                }
            }
        }
    }
}

fn handle(play: &mut Playback, text: &str, paused: &mut bool, ended: &mut bool) -> Vec<Value> {
    let error = |m: String| vec![json!({"t": "error", "message": m})];
    let msg: ClientMessage = match serde_json::from_str(text) {
        Ok(m) => m,
        Err(e) => return error(format!("bad message: {e}")),
    };
    match msg {
        ClientMessage::Input { action, press } => {
            let Ok(a) = action.parse::<Action>() else {
                return error(format!("unknown action {action:?}"));
            };
            if play.human.is_none() {
                return error("no human side in this session".into());
            }
            // releases carry no action of their own; the client sends the stop action
            if press {
                play.inputs.push_back(a);
            }
            Vec::new()
        }
        ClientMessage::Ctl { cmd, frame } => match cmd.as_str() {
            "pause" => {
                *paused = true;
                vec![json!({"t": "ack", "cmd": "pause", "frame": play.state().frame})]
            }
            "resume" => {
                *paused = false;
                vec![json!({"t": "ack", "cmd": "resume", "frame": play.state().frame})]
            }
            "seek" => match play.seek(frame.unwrap_or(0) as usize) {
                Ok(f) => {
                    *ended = false;
                    vec![json!({"t": "ack", "cmd": "seek", "frame": f}), state_message(play.state())]
                }
                Err(e) => error(e.to_string()),
            },
            other => error(format!("unknown command {other:?}")),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn live(human: Option<Side>) -> Playback {
        let shared = Shared {
            source: Source::Live { config: load_scenario("11_vs_11_easy").unwrap(), human, seed: 0 },
            period: FRAME_PERIOD,
        };
        Playback::new(&shared).unwrap()
    }

    #[test]
    fn state_message_shape() {
        let p = live(None);
        let m = state_message(p.state());
        assert_eq!(m["t"], "state");
        assert_eq!(m["players"].as_array().unwrap().len(), 22);
        assert_eq!(m["ball"].as_array().unwrap().len(), 3);
        assert_eq!(m["mode"], "kickoff");
    }

    #[test]
    fn press_queues_release_ignored() {
        let mut p = live(Some(Side::Left));
        let (mut paused, mut ended) = (false, false);
        assert!(handle(&mut p, r#"{"t":"input","action":"Right","press":true}"#, &mut paused, &mut ended).is_empty());
        assert!(handle(&mut p, r#"{"t":"input","action":"Right","press":false}"#, &mut paused, &mut ended).is_empty());
        assert_eq!(p.inputs.len(), 1);
        let bad = handle(&mut p, r#"{"t":"input","action":"Jump","press":true}"#, &mut paused, &mut ended);
        assert_eq!(bad[0]["t"], "error");
    }

    #[test]
    fn right_side_human_moves_in_screen_directions() {
        let mut p = live(Some(Side::Right));
        let idx = p.env.slots(Side::Right)[0];
        p.inputs.push_back(Action::Right);
        p.advance().unwrap();
        let dir = p.state().team(Side::Right)[idx].sticky.direction;
        assert_eq!(dir.map(|d| d.action()), Some(Action::Right));
    }

    #[test]
    fn seek_needs_replay_mode() {
        let mut p = live(None);
        let (mut paused, mut ended) = (false, false);
        let r = handle(&mut p, r#"{"t":"ctl","cmd":"seek","frame":0}"#, &mut paused, &mut ended);
        assert_eq!(r[0]["t"], "error");
        let r = handle(&mut p, r#"{"t":"ctl","cmd":"pause"}"#, &mut paused, &mut ended);
        assert_eq!(r[0]["t"], "ack");
        assert!(paused);
    }
}
