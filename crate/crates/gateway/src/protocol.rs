//! Wire messages. Every WebSocket text frame carries one JSON [`Envelope`]:
//!
//! ```json
//! {"v": 1, "type": "frame", "session_id": "s1", "seq": 7,
//!  "payload": {"stream": 2, "t_ms": 100, "pins": 15}}
//! ```

use serde::{Deserialize, Serialize};
use tacton::experiments::SessionReport;
use tacton::guidance::{Cell, MoveOutcome};
use tacton::pattern::{Pattern, PatternError};
use tacton::{CircuitComponentKind, Direction, ValueTuple};

pub const PROTOCOL_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<M> {
    pub v: u32,
    pub session_id: String,
    pub seq: u64,
    #[serde(flatten)]
    pub message: M,
}

impl<M: Serialize> Envelope<M> {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("envelope serializes")
    }
}

/// Messages the server sends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "payload", rename_all = "snake_case")]
pub enum ServerMessage {
    Frame(FramePayload),
    TrialStart(TrialStartPayload),
    TrialResult(TrialResultPayload),
    MazeState(MazeStatePayload),
    CircuitState(CircuitStatePayload),
    Control(Notice),
}

/// Messages the client sends.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "payload", rename_all = "snake_case")]
pub enum ClientMessage {
    Answer(AnswerPayload),
    Control(Command),
}

/// One pattern change. `t_ms` counts from the start of `stream`; each
/// new playback opens a new stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FramePayload {
    pub stream: u64,
    pub t_ms: u64,
    pub pins: u16,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialStartPayload {
    pub block: String,
    pub trial: usize,
    pub trials: usize,
    pub stream: u64,
    pub cap_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnswerPayload {
    pub trial: usize,
    pub response: ValueTuple,
    /// Used instead of the server clock in virtual-time mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub response_time_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialResultPayload {
    pub trial: usize,
    pub stimulus: ValueTuple,
    pub response: ValueTuple,
    pub correct: bool,
    pub response_time_ms: u64,
    pub exposure_ms: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveResult {
    Moved,
    Blocked,
    Exited,
}

impl From<MoveOutcome> for MoveResult {
    fn from(m: MoveOutcome) -> Self {
        match m {
            MoveOutcome::Moved => MoveResult::Moved,
            MoveOutcome::Blocked => MoveResult::Blocked,
            MoveOutcome::Exited => MoveResult::Exited,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MazeStatePayload {
    pub name: String,
    pub position: Cell,
    pub exit: Cell,
    pub steps: usize,
    pub blocked: usize,
    /// Direction cued on the pins; absent at the exit.
    pub cue: Option<Direction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub last_move: Option<MoveResult>,
    /// Full map, sent when a maze is loaded.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layout: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CircuitLevel {
    /// The component under the cursor.
    #[default]
    Local,
    /// The wires leaving the cursor.
    Global,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitStatePayload {
    pub name: String,
    pub node: usize,
    pub kind: CircuitComponentKind,
    pub x: i64,
    pub y: i64,
    pub available: Vec<Direction>,
    pub level: CircuitLevel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moved: Option<bool>,
}

/// Client requests, carried in `control` messages.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Command {
    /// Free exploration of a catalog Tacton, e.g. during training.
    Play {
        tacton: String,
    },
    /// Ends the current playback (key released).
    Release,
    StartBlock {
        space: String,
        #[serde(default)]
        trials: Option<usize>,
        #[serde(default)]
        seed: Option<u64>,
        #[serde(default)]
        participant: Option<String>,
    },
    NextTrial,
    LoadMaze {
        name: String,
        #[serde(default)]
        mirrored: bool,
    },
    MazeMove {
        direction: Direction,
    },
    LoadCircuit {
        name: String,
    },
    CircuitMove {
        direction: Direction,
    },
    CircuitLevel {
        level: CircuitLevel,
    },
    Report,
    Ping,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaybackEnd {
    Released,
    Capped,
    Replaced,
}

/// Server notices, carried in `control` messages.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum Notice {
    Welcome {
        version: u32,
        virtual_time: bool,
        spaces: Vec<String>,
        mazes: Vec<String>,
        circuits: Vec<String>,
    },
    Error {
        message: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        in_reply_to: Option<u64>,
    },
    PlaybackEnded {
        stream: u64,
        t_ms: u64,
        reason: PlaybackEnd,
    },
    BlockStarted {
        block: String,
        trials: usize,
        participant: String,
    },
    BlockComplete {
        report: SessionReport,
    },
    Report {
        report: Option<SessionReport>,
    },
    Pong,
}

/// Pin mask of a 4×4 pattern: bit `k` is the pin at row `k / 4`, column
/// `k % 4`.
pub fn encode_pins(pattern: &Pattern) -> Result<u16, PatternError> {
    pattern.to_mask()
}

pub fn decode_pins(mask: u16) -> Pattern {
    Pattern::from_mask(mask)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_wire_shape() {
        let env = Envelope {
            v: PROTOCOL_VERSION,
            session_id: "s1".into(),
            seq: 7,
            message: ServerMessage::Frame(FramePayload {
                stream: 2,
                t_ms: 100,
                pins: 15,
            }),
        };
        let json = env.to_json();
        assert_eq!(
            json,
            r#"{"v":1,"session_id":"s1","seq":7,"type":"frame","payload":{"stream":2,"t_ms":100,"pins":15}}"#
        );
        let back: Envelope<ServerMessage> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, env);
    }

    #[test]
    fn client_messages_parse() {
        let answer: Envelope<ClientMessage> = serde_json::from_str(
            r#"{"v":1,"session_id":"s1","seq":3,"type":"answer",
                "payload":{"trial":0,"response":"dir=N;size=large;speed=fast"}}"#,
        )
        .unwrap();
        assert!(matches!(
            answer.message,
            ClientMessage::Answer(AnswerPayload { trial: 0, .. })
        ));
        let play: Envelope<ClientMessage> = serde_json::from_str(
            r#"{"v":1,"session_id":"s1","seq":4,"type":"control","payload":{"command":"play","tacton":"set9.N"}}"#,
        )
        .unwrap();
        assert_eq!(
            play.message,
            ClientMessage::Control(Command::Play {
                tacton: "set9.N".into()
            })
        );
        let start: Envelope<ClientMessage> = serde_json::from_str(
            r#"{"v":1,"session_id":"s1","seq":5,"type":"control","payload":{"command":"start_block","space":"s3"}}"#,
        )
        .unwrap();
        assert!(matches!(
            start.message,
            ClientMessage::Control(Command::StartBlock { trials: None, .. })
        ));
    }

    #[test]
    fn server_only_types_are_not_client_messages() {
        let text = r#"{"v":1,"session_id":"s1","seq":1,"type":"frame","payload":{"stream":0,"t_ms":0,"pins":0}}"#;
        assert!(serde_json::from_str::<Envelope<ClientMessage>>(text).is_err());
    }

    #[test]
    fn pin_mask_bit_order() {
        let nw = decode_pins(1);
        assert!(nw.get(0, 0));
        assert_eq!(nw.count_up(), 1);
        assert!(decode_pins(1 << 7).get(1, 3));
        assert_eq!(
            encode_pins(&Pattern::from_text("oooo\n....\n....\n....").unwrap()).unwrap(),
            0x000f
        );
    }
}
