use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use futures_util::{SinkExt, StreamExt};
use tokio::net::{TcpListener, TcpStream};
use tokio_tungstenite::tungstenite::Message;

use crate::session::{Outbound, Session, SessionOptions, Shared};

/// A bound WebSocket listener; one [`Session`] per connection.
pub struct Server {
    listener: TcpListener,
    shared: Arc<Shared>,
    options: SessionOptions,
    log_dir: Option<PathBuf>,
    next_id: AtomicU64,
}

impl Server {
    pub async fn bind(
        addr: SocketAddr,
        shared: Shared,
        options: SessionOptions,
        log_dir: Option<PathBuf>,
    ) -> std::io::Result<Self> {
        Ok(Self {
            listener: TcpListener::bind(addr).await?,
            shared: Arc::new(shared),
            options,
            log_dir,
            next_id: AtomicU64::new(1),
        })
    }

    pub fn local_addr(&self) -> std::io::Result<SocketAddr> {
        self.listener.local_addr()
    }

    /// Accepts connections until the task is dropped.
    pub async fn run(self) -> std::io::Result<()> {
        let this = Arc::new(self);
        loop {
            let (stream, peer) = this.listener.accept().await?;
            let id = format!("s{}", this.next_id.fetch_add(1, Ordering::Relaxed));
            let session = Session::new(id, this.shared.clone(), this.options);
            let log_dir = this.log_dir.clone();
            tokio::spawn(async move {
                tracing::info!(%peer, session = session.id(), "connected");
                if let Err(e) = connection(stream, session, log_dir).await {
                    tracing::warn!(%peer, "connection ended: {e}");
                }
            });
        }
    }
}

async fn send_all<S>(sink: &mut S, messages: Vec<Outbound>) -> Result<(), S::Error>
where
    S: SinkExt<Message> + Unpin,
{
    for m in messages {
        sink.feed(Message::text(m.to_json())).await?;
    }
    sink.flush().await
}

async fn connection(
    stream: TcpStream,
    mut session: Session,
    log_dir: Option<PathBuf>,
) -> anyhow::Result<()> {
    let ws = tokio_tungstenite::accept_async(stream).await?;
    let (mut sink, mut source) = ws.split();
    let origin = Instant::now();
    let now = || origin.elapsed().as_millis() as u64;
    send_all(&mut sink, session.open()).await?;
    loop {
        let wait = session
            .next_deadline()
            .map(|t| Duration::from_millis(t.saturating_sub(now())));
        tokio::select! {
            incoming = source.next() => match incoming {
                Some(Ok(Message::Text(text))) => send_all(&mut sink, session.handle_text(&text, now())).await?,
                Some(Ok(Message::Binary(_))) => {
                    send_all(&mut sink, session.handle_text("<binary>", now())).await?
                }
                Some(Ok(Message::Close(_))) | None => break,
                Some(Ok(_)) => {}
                Some(Err(e)) => return Err(e.into()),
            },
            _ = tokio::time::sleep(wait.unwrap_or(Duration::MAX)), if wait.is_some() => {
                send_all(&mut sink, session.tick(now())).await?;
            }
        }
    }
    if let (Some(dir), false) = (log_dir, session.records().is_empty()) {
        std::fs::create_dir_all(&dir)?;
        let file = std::fs::File::create(dir.join(format!("{}.csv", session.id())))?;
        tacton::experiments::write_trial_log(file, session.records())?;
    }
    tracing::info!(session = session.id(), "closed");
    Ok(())
}
