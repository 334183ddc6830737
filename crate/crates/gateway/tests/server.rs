use futures_util::{SinkExt, StreamExt};
use tacton::player::{presentation_schedule, VirtualRecorder, DEFAULT_CAP_MS};
use tacton::SetCatalog;
use tacton_gateway::protocol::PlaybackEnd;
use tacton_gateway::{Envelope, Notice, Server, ServerMessage, SessionOptions, Shared};
use tokio::net::TcpStream;
use tokio_tungstenite::tungstenite::Message;
use tokio_tungstenite::{MaybeTlsStream, WebSocketStream};

type Socket = WebSocketStream<MaybeTlsStream<TcpStream>>;

async fn start(virtual_time: bool) -> (String, tokio::task::JoinHandle<()>) {
    let options = SessionOptions {
        virtual_time,
        ..Default::default()
    };
    let server = Server::bind(
        "127.0.0.1:0".parse().unwrap(),
        Shared::default(),
        options,
        None,
    )
    .await
    .unwrap();
    let url = format!("ws://{}", server.local_addr().unwrap());
    let handle = tokio::spawn(async move {
        server.run().await.unwrap();
    });
    (url, handle)
}

async fn recv(ws: &mut Socket) -> Envelope<ServerMessage> {
    loop {
        match ws.next().await.unwrap().unwrap() {
            Message::Text(t) => return serde_json::from_str(&t).unwrap(),
            _ => continue,
        }
    }
}

async fn connect(url: &str) -> (Socket, String) {
    let (mut ws, _) = tokio_tungstenite::connect_async(url).await.unwrap();
    let welcome = recv(&mut ws).await;
    assert!(matches!(
        welcome.message,
        ServerMessage::Control(Notice::Welcome { .. })
    ));
    let id = welcome.session_id.clone();
    (ws, id)
}

async fn send(ws: &mut Socket, id: &str, seq: u64, payload: &str) {
    let text = format!(
        r#"{{"v":1,"session_id":"{id}","seq":{seq},"type":"control","payload":{payload}}}"#
    );
    ws.send(Message::text(text)).await.unwrap();
}

#[tokio::test]
async fn virtual_time_frames_reconstruct_recorder_dump() {
    let (url, server) = start(true).await;
    let (mut ws, id) = connect(&url).await;
    let catalog = SetCatalog::builtin();
    for (i, name) in [
        "set9.NE",
        "set3.W",
        "s3.S.small.slow",
        "set11prime.SE",
        "circuit.lamp",
    ]
    .iter()
    .enumerate()
    {
        send(
            &mut ws,
            &id,
            i as u64 + 1,
            &format!(r#"{{"command":"play","tacton":"{name}"}}"#),
        )
        .await;
        let mut wire = String::new();
        loop {
            let env = recv(&mut ws).await;
            match env.message {
                ServerMessage::Frame(f) => wire.push_str(&format!("{}\t{:04x}\n", f.t_ms, f.pins)),
                ServerMessage::Control(Notice::PlaybackEnded {
                    reason: PlaybackEnd::Capped,
                    ..
                }) => break,
                other => panic!("unexpected {other:?}"),
            }
        }
        let tacton = catalog.resolve(name).unwrap();
        let mut recorder = VirtualRecorder::new();
        for (t, p) in presentation_schedule(&tacton, DEFAULT_CAP_MS, DEFAULT_CAP_MS) {
            tacton::player::PinArrayDevice::present(&mut recorder, t, &p).unwrap();
        }
        assert_eq!(wire, recorder.dump().unwrap(), "{name}");
    }
    server.abort();
}

#[tokio::test]
async fn concurrent_sessions_have_independent_seq_streams() {
    let (url, server) = start(false).await;
    let (mut a, id_a) = connect(&url).await;
    let (mut b, id_b) = connect(&url).await;
    assert_ne!(id_a, id_b);
    for seq in 1..=5 {
        send(&mut a, &id_a, seq, r#"{"command":"ping"}"#).await;
    }
    send(&mut b, &id_b, 1, r#"{"command":"ping"}"#).await;
    let mut seqs_a = vec![];
    for _ in 0..5 {
        let env = recv(&mut a).await;
        assert_eq!(env.session_id, id_a);
        seqs_a.push(env.seq);
    }
    let env = recv(&mut b).await;
    assert_eq!((env.session_id.as_str(), env.seq), (id_b.as_str(), 2));
    assert_eq!(seqs_a, [2, 3, 4, 5, 6]);
    server.abort();
}

#[tokio::test]
async fn malformed_text_gets_error_and_session_survives() {
    let (url, server) = start(false).await;
    let (mut ws, id) = connect(&url).await;
    ws.send(Message::text("{oops")).await.unwrap();
    let env = recv(&mut ws).await;
    assert!(matches!(
        env.message,
        ServerMessage::Control(Notice::Error { .. })
    ));
    send(&mut ws, &id, 1, r#"{"command":"ping"}"#).await;
    assert_eq!(
        recv(&mut ws).await.message,
        ServerMessage::Control(Notice::Pong)
    );
    server.abort();
}

#[tokio::test]
async fn real_time_frames_are_paced() {
    let (url, server) = start(false).await;
    let (mut ws, id) = connect(&url).await;
    let started = std::time::Instant::now();
    send(&mut ws, &id, 1, r#"{"command":"play","tacton":"set3.N"}"#).await;
    let mut times = vec![];
    while times.len() < 5 {
        if let ServerMessage::Frame(f) = recv(&mut ws).await.message {
            times.push(f.t_ms);
        }
    }
    assert_eq!(times, [0, 100, 200, 300, 400]);
    assert!(started.elapsed() >= std::time::Duration::from_millis(400));
    send(&mut ws, &id, 2, r#"{"command":"release"}"#).await;
    loop {
        if let ServerMessage::Control(Notice::PlaybackEnded { reason, .. }) =
            recv(&mut ws).await.message
        {
            assert_eq!(reason, PlaybackEnd::Released);
            break;
        }
    }
    server.abort();
}

#[tokio::test]
async fn bind_failure_is_reported() {
    let holder = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = holder.local_addr().unwrap();
    assert!(
        Server::bind(addr, Shared::default(), SessionOptions::default(), None)
            .await
            .is_err()
    );
}

#[tokio::test]
async fn closed_session_writes_trial_log() {
    let dir = tempfile::tempdir().unwrap();
    let options = SessionOptions {
        virtual_time: true,
        ..Default::default()
    };
    let server = Server::bind(
        "127.0.0.1:0".parse().unwrap(),
        Shared::default(),
        options,
        Some(dir.path().into()),
    )
    .await
    .unwrap();
    let url = format!("ws://{}", server.local_addr().unwrap());
    let handle = tokio::spawn(async move { server.run().await.unwrap() });
    let (mut ws, id) = connect(&url).await;
    send(
        &mut ws,
        &id,
        1,
        r#"{"command":"start_block","space":"set4","trials":1}"#,
    )
    .await;
    send(&mut ws, &id, 2, r#"{"command":"next_trial"}"#).await;
    let answer = format!(
        r#"{{"v":1,"session_id":"{id}","seq":3,"type":"answer","payload":{{"trial":0,"response":"dir=N"}}}}"#
    );
    ws.send(Message::text(answer)).await.unwrap();
    loop {
        if let ServerMessage::Control(Notice::BlockComplete { .. }) = recv(&mut ws).await.message {
            break;
        }
    }
    ws.close(None).await.unwrap();
    let path = dir.path().join(format!("{id}.csv"));
    for _ in 0..100 {
        if path.exists() {
            break;
        }
        tokio::time::sleep(std::time::Duration::from_millis(20)).await;
    }
    let records = tacton::experiments::read_trial_log(std::fs::File::open(&path).unwrap()).unwrap();
    assert_eq!(records.len(), 1);
    assert_eq!(records[0].block, "set4");
    handle.abort();
}
