//! Session service and command-line front end for the [`tacton`] engine.
//!
//! A client connects over WebSocket and gets one [`session::Session`]: it
//! can play catalog Tactons, run identification blocks, and explore mazes
//! and circuits. Pattern changes arrive as `frame` messages carrying the
//! 16-bit pin mask.

pub mod cli;
pub mod config;
pub mod protocol;
pub mod server;
pub mod session;
pub mod worlds;

pub use config::Config;
pub use protocol::{ClientMessage, Command, Envelope, Notice, ServerMessage, PROTOCOL_VERSION};
pub use server::Server;
pub use session::{Session, SessionOptions, Shared};
pub use worlds::Worlds;
