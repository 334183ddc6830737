//! Starts the WebSocket service on a free port, connects a client, and
//! feels a wave for half a second in real time.

use std::time::Instant;

use futures_util::{SinkExt, StreamExt};
use tacton::pattern::Pattern;
use tacton_gateway::{Envelope, Notice, Server, ServerMessage, SessionOptions, Shared};
use tokio_tungstenite::tungstenite::Message;

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    let server = Server::bind(
        "127.0.0.1:0".parse()?,
        Shared::default(),
        SessionOptions::default(),
        None,
    )
    .await?;
    let url = format!("ws://{}", server.local_addr()?);
    tokio::spawn(server.run());
    println!("service on {url}");

    let (mut ws, _) = tokio_tungstenite::connect_async(&url).await?;
    let mut session_id = String::new();
    let started = Instant::now();
    while let Some(msg) = ws.next().await {
        let Message::Text(text) = msg? else { continue };
        let env: Envelope<ServerMessage> = serde_json::from_str(&text)?;
        match env.message {
            ServerMessage::Control(Notice::Welcome { mazes, .. }) => {
                session_id = env.session_id.clone();
                println!("session {session_id}, {} mazes available", mazes.len());
                let play = format!(
                    r#"{{"v":1,"session_id":"{session_id}","seq":1,"type":"control","payload":{{"command":"play","tacton":"set9.E"}}}}"#
                );
                ws.send(Message::text(play)).await?;
            }
            ServerMessage::Frame(f) => {
                println!(
                    "+{:>4} ms wall, t={:>3}:\n{}",
                    started.elapsed().as_millis(),
                    f.t_ms,
                    Pattern::from_mask(f.pins)
                );
                if f.t_ms >= 500 {
                    let release = format!(
                        r#"{{"v":1,"session_id":"{session_id}","seq":2,"type":"control","payload":{{"command":"release"}}}}"#
                    );
                    ws.send(Message::text(release)).await?;
                }
            }
            ServerMessage::Control(Notice::PlaybackEnded { t_ms, reason, .. }) => {
                println!("playback ended at {t_ms} ms ({reason:?})");
                break;
            }
            other => println!("{other:?}"),
        }
    }
    ws.close(None).await?;
    Ok(())
}
