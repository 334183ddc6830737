//! One client session as a sans-IO state machine: feed it client text and
//! clock readings, send back whatever it returns.

use std::sync::Arc;

use tacton::experiments::{analyze, generate_trials, Block, SessionReport, TrialRecord};
use tacton::guidance::{CircuitWorld, Guide, MazeWorld, MoveOutcome};
use tacton::player::{
    PlaybackEvent, PlaybackSession, VirtualClock, VirtualRecorder, DEFAULT_CAP_MS,
};
use tacton::{SetCatalog, Tacton, TactonSpace, ValueTuple};

use crate::protocol::{
    AnswerPayload, CircuitLevel, CircuitStatePayload, ClientMessage, Command, Envelope,
    FramePayload, MazeStatePayload, MoveResult, Notice, PlaybackEnd, ServerMessage,
    TrialResultPayload, TrialStartPayload, PROTOCOL_VERSION,
};
use crate::worlds::Worlds;

pub type Outbound = Envelope<ServerMessage>;

/// Read-only state shared by every session.
#[derive(Debug, Clone)]
pub struct Shared {
    pub guide: Guide,
    pub worlds: Worlds,
}

impl Shared {
    pub fn new(guide: Guide, worlds: Worlds) -> Self {
        Self { guide, worlds }
    }

    pub fn catalog(&self) -> &SetCatalog {
        self.guide.catalog()
    }
}

impl Default for Shared {
    fn default() -> Self {
        Self::new(Guide::default(), Worlds::bundled())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SessionOptions {
    /// Stream each playback up to its cap at once instead of pacing it by
    /// the clock.
    pub virtual_time: bool,
    pub cap_ms: u64,
}

impl Default for SessionOptions {
    fn default() -> Self {
        Self {
            virtual_time: false,
            cap_ms: DEFAULT_CAP_MS,
        }
    }
}

struct Playback {
    stream: u64,
    player: PlaybackSession<VirtualRecorder, VirtualClock>,
}

struct Pending {
    trial: usize,
    stream: u64,
    started_at: u64,
    exposure_ms: Option<u64>,
}

struct BlockRun {
    name: String,
    participant: String,
    space: TactonSpace,
    stimuli: Vec<ValueTuple>,
    next: usize,
    pending: Option<Pending>,
    first_record: usize,
}

struct MazeRun {
    name: String,
    world: MazeWorld,
    steps: usize,
    blocked: usize,
}

struct CircuitRun {
    name: String,
    world: CircuitWorld,
    level: CircuitLevel,
}

pub struct Session {
    id: String,
    shared: Arc<Shared>,
    options: SessionOptions,
    seq: u64,
    last_client_seq: Option<u64>,
    clock: VirtualClock,
    virtual_now: u64,
    next_stream: u64,
    playback: Option<Playback>,
    block: Option<BlockRun>,
    records: Vec<TrialRecord>,
    maze: Option<MazeRun>,
    circuit: Option<CircuitRun>,
    out: Vec<Outbound>,
}

impl Session {
    pub fn new(id: impl Into<String>, shared: Arc<Shared>, options: SessionOptions) -> Self {
        Self {
            id: id.into(),
            shared,
            options,
            seq: 0,
            last_client_seq: None,
            clock: VirtualClock::new(),
            virtual_now: 0,
            next_stream: 0,
            playback: None,
            block: None,
            records: Vec::new(),
            maze: None,
            circuit: None,
            out: Vec::new(),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    /// Every trial answered so far, in order.
    pub fn records(&self) -> &[TrialRecord] {
        &self.records
    }

    pub fn report(&self) -> Option<SessionReport> {
        analyze(&self.records).ok()
    }

    /// The welcome notice; send it first.
    pub fn open(&mut self) -> Vec<Outbound> {
        let notice = Notice::Welcome {
            version: PROTOCOL_VERSION,
            virtual_time: self.options.virtual_time,
            spaces: vec!["s2".into(), "s3".into()],
            mazes: self.shared.worlds.maze_names(),
            circuits: self.shared.worlds.circuit_names(),
        };
        self.push(ServerMessage::Control(notice));
        self.take()
    }

    /// Handles one client text frame received at `now_ms`. Bad input never
    /// ends the session; it earns a control error.
    pub fn handle_text(&mut self, text: &str, now_ms: u64) -> Vec<Outbound> {
        match serde_json::from_str::<Envelope<ClientMessage>>(text) {
            Ok(envelope) => self.handle(envelope, now_ms),
            Err(e) => {
                self.error(format!("malformed message: {e}"), None);
                self.take()
            }
        }
    }

    pub fn handle(&mut self, envelope: Envelope<ClientMessage>, now_ms: u64) -> Vec<Outbound> {
        let now = self.now(now_ms);
        let seq = envelope.seq;
        if let Err(message) = self.check_envelope(&envelope) {
            self.error(message, Some(seq));
            return self.take();
        }
        self.last_client_seq = Some(seq);
        self.advance(now);
        let result = match envelope.message {
            ClientMessage::Answer(answer) => self.answer(answer, now),
            ClientMessage::Control(command) => self.command(command, now),
        };
        if let Err(message) = result {
            self.error(message, Some(seq));
        }
        self.take()
    }

    /// Advances playback to `now_ms`.
    pub fn tick(&mut self, now_ms: u64) -> Vec<Outbound> {
        let now = self.now(now_ms);
        self.advance(now);
        self.take()
    }

    /// Clock reading at which [`Session::tick`] has something to send.
    pub fn next_deadline(&self) -> Option<u64> {
        if self.options.virtual_time {
            return None;
        }
        self.playback
            .as_ref()
            .and_then(|p| p.player.next_deadline())
    }

    fn now(&self, now_ms: u64) -> u64 {
        if self.options.virtual_time {
            self.virtual_now
        } else {
            now_ms
        }
    }

    fn check_envelope(&self, envelope: &Envelope<ClientMessage>) -> Result<(), String> {
        if envelope.v != PROTOCOL_VERSION {
            return Err(format!("unsupported protocol version {}", envelope.v));
        }
        if envelope.session_id != self.id {
            return Err(format!("message for session {:?}", envelope.session_id));
        }
        if self
            .last_client_seq
            .is_some_and(|last| envelope.seq <= last)
        {
            return Err(format!(
                "seq {} is not above {}",
                envelope.seq,
                self.last_client_seq.unwrap_or(0)
            ));
        }
        Ok(())
    }

    fn command(&mut self, command: Command, now: u64) -> Result<(), String> {
        match command {
            Command::Ping => {
                self.push(ServerMessage::Control(Notice::Pong));
                Ok(())
            }
            Command::Report => {
                let report = self.report();
                self.push(ServerMessage::Control(Notice::Report { report }));
                Ok(())
            }
            Command::Release => {
                if self.playback.is_none() {
                    return Err("nothing is playing".into());
                }
                self.end_playback(now, PlaybackEnd::Released);
                Ok(())
            }
            Command::Play { tacton } => {
                self.refuse_during_trial()?;
                let t = self
                    .shared
                    .catalog()
                    .resolve(&tacton)
                    .map_err(|e| e.to_string())?;
                self.start_playback(t, now);
                Ok(())
            }
            Command::StartBlock {
                space,
                trials,
                seed,
                participant,
            } => self.start_block(&space, trials, seed.unwrap_or(0), participant),
            Command::NextTrial => self.next_trial(now),
            Command::LoadMaze { name, mirrored } => {
                self.refuse_during_trial()?;
                let world = self
                    .shared
                    .worlds
                    .maze(&name, mirrored)
                    .ok_or_else(|| format!("unknown maze {name:?}"))?;
                let name = if mirrored {
                    format!("{name}-mirror")
                } else {
                    name
                };
                self.maze = Some(MazeRun {
                    name,
                    world,
                    steps: 0,
                    blocked: 0,
                });
                self.send_maze(None, true, now);
                Ok(())
            }
            Command::MazeMove { direction } => {
                self.refuse_during_trial()?;
                if !direction.is_radial() {
                    return Err(format!("maze moves are N, E, S or W, not {direction}"));
                }
                let run = self.maze.as_mut().ok_or("no maze loaded")?;
                if run.world.at_exit() {
                    return Err("already at the exit".into());
                }
                let outcome = run.world.step(direction);
                if outcome == MoveOutcome::Blocked {
                    run.blocked += 1;
                } else {
                    run.steps += 1;
                }
                self.send_maze(Some(outcome), false, now);
                Ok(())
            }
            Command::LoadCircuit { name } => {
                self.refuse_during_trial()?;
                let world = self
                    .shared
                    .worlds
                    .circuit(&name)
                    .ok_or_else(|| format!("unknown circuit {name:?}"))?;
                self.circuit = Some(CircuitRun {
                    name,
                    world,
                    level: CircuitLevel::Local,
                });
                self.send_circuit(None, now)
            }
            Command::CircuitMove { direction } => {
                self.refuse_during_trial()?;
                let run = self.circuit.as_mut().ok_or("no circuit loaded")?;
                let moved = run.world.move_cursor(direction).is_some();
                self.send_circuit(Some(moved), now)
            }
            Command::CircuitLevel { level } => {
                self.refuse_during_trial()?;
                self.circuit.as_mut().ok_or("no circuit loaded")?.level = level;
                self.send_circuit(None, now)
            }
        }
    }

    fn refuse_during_trial(&self) -> Result<(), String> {
        match &self.block {
            Some(BlockRun {
                pending: Some(p), ..
            }) => Err(format!("trial {} awaits an answer", p.trial)),
            _ => Ok(()),
        }
    }

    fn start_block(
        &mut self,
        space_name: &str,
        trials: Option<usize>,
        seed: u64,
        participant: Option<String>,
    ) -> Result<(), String> {
        self.refuse_during_trial()?;
        let space = self
            .shared
            .catalog()
            .space(space_name)
            .map_err(|e| e.to_string())?;
        let defaults = if space.dimensions().len() > 1 {
            Block::space(space.name())
        } else {
            Block::set(space.name())
        };
        let n = trials.unwrap_or(defaults.trials);
        let stimuli = generate_trials(&space, n, seed, defaults.mode).map_err(|e| e.to_string())?;
        let participant = participant.unwrap_or_else(|| self.id.clone());
        self.push(ServerMessage::Control(Notice::BlockStarted {
            block: space.name().to_owned(),
            trials: n,
            participant: participant.clone(),
        }));
        self.block = Some(BlockRun {
            name: space.name().to_owned(),
            participant,
            space,
            stimuli,
            next: 0,
            pending: None,
            first_record: self.records.len(),
        });
        Ok(())
    }

    fn next_trial(&mut self, now: u64) -> Result<(), String> {
        let run = self.block.as_ref().ok_or("no block started")?;
        if let Some(p) = &run.pending {
            return Err(format!("trial {} awaits an answer", p.trial));
        }
        if run.next >= run.stimuli.len() {
            return Err("block is complete".into());
        }
        let trial = run.next;
        let stimulus = &run.stimuli[trial];
        let index = run.space.index_of(stimulus).map_err(|e| e.to_string())?;
        let tacton = run.space.tacton_at(index);
        let start = TrialStartPayload {
            block: run.name.clone(),
            trial,
            trials: run.stimuli.len(),
            stream: self.next_stream,
            cap_ms: self.options.cap_ms,
        };
        self.push(ServerMessage::TrialStart(start));
        let run = self.block.as_mut().expect("checked above");
        run.pending = Some(Pending {
            trial,
            stream: self.next_stream,
            started_at: now,
            exposure_ms: None,
        });
        self.start_playback(tacton, now);
        Ok(())
    }

    fn answer(&mut self, answer: AnswerPayload, now: u64) -> Result<(), String> {
        let run = self.block.as_ref().ok_or("no trial awaits an answer")?;
        let pending = run.pending.as_ref().ok_or("no trial awaits an answer")?;
        if answer.trial != pending.trial {
            return Err(format!(
                "answer for trial {} but trial {} is open",
                answer.trial, pending.trial
            ));
        }
        run.space
            .index_of(&answer.response)
            .map_err(|e| e.to_string())?;
        if self
            .playback
            .as_ref()
            .is_some_and(|p| p.stream == pending.stream)
        {
            self.end_playback(now, PlaybackEnd::Released);
        }
        let run = self.block.as_mut().expect("checked above");
        let pending = run.pending.take().expect("checked above");
        let exposure_ms = pending.exposure_ms.unwrap_or(0);
        let response_time_ms = if self.options.virtual_time {
            answer.response_time_ms.unwrap_or(exposure_ms)
        } else {
            now.saturating_sub(pending.started_at)
        };
        let record = TrialRecord {
            participant: run.participant.clone(),
            block: run.name.clone(),
            trial: pending.trial,
            stimulus: run.stimuli[pending.trial].clone(),
            response: answer.response,
            response_time_ms,
            exposure_ms,
        };
        run.next += 1;
        let done = run.next == run.stimuli.len();
        let first = run.first_record;
        self.push(ServerMessage::TrialResult(TrialResultPayload {
            trial: record.trial,
            stimulus: record.stimulus.clone(),
            response: record.response.clone(),
            correct: record.is_correct(),
            response_time_ms,
            exposure_ms,
        }));
        self.records.push(record);
        if done {
            let report = analyze(&self.records[first..]).map_err(|e| e.to_string())?;
            self.push(ServerMessage::Control(Notice::BlockComplete { report }));
        }
        Ok(())
    }

    fn send_maze(&mut self, last_move: Option<MoveOutcome>, with_layout: bool, now: u64) {
        let run = self.maze.as_ref().expect("maze loaded");
        let cue = run.world.guidance_direction().ok();
        let payload = MazeStatePayload {
            name: run.name.clone(),
            position: run.world.current(),
            exit: run.world.exit(),
            steps: run.steps,
            blocked: run.blocked,
            cue,
            last_move: last_move.map(MoveResult::from),
            layout: with_layout.then(|| run.world.to_text()),
        };
        self.push(ServerMessage::MazeState(payload));
        match (cue, last_move) {
            (_, Some(MoveOutcome::Blocked)) => {}
            (Some(d), _) => {
                let t = self.shared.guide.direction_cue(d).clone();
                self.start_playback(t, now);
            }
            (None, _) => {
                if self.playback.is_some() {
                    self.end_playback(now, PlaybackEnd::Released);
                }
            }
        }
    }

    fn send_circuit(&mut self, moved: Option<bool>, now: u64) -> Result<(), String> {
        let run = self.circuit.as_ref().expect("circuit loaded");
        let node = *run.world.cursor_node();
        let payload = CircuitStatePayload {
            name: run.name.clone(),
            node: run.world.cursor(),
            kind: node.kind,
            x: node.x,
            y: node.y,
            available: run.world.available_directions(),
            level: run.level,
            moved,
        };
        let tacton = match run.level {
            CircuitLevel::Local => Ok(self.shared.guide.local_tacton(&run.world).clone()),
            CircuitLevel::Global => self.shared.guide.available_directions_tacton(&run.world),
        };
        self.push(ServerMessage::CircuitState(payload));
        if moved == Some(false) {
            return Ok(());
        }
        let tacton = tacton.map_err(|e| e.to_string())?;
        self.start_playback(tacton, now);
        Ok(())
    }

    fn start_playback(&mut self, tacton: Tacton, now: u64) {
        if self.playback.is_some() {
            self.end_playback(now, PlaybackEnd::Replaced);
        }
        let stream = self.next_stream;
        self.next_stream += 1;
        self.clock.set(now);
        let mut player = PlaybackSession::new(tacton, VirtualRecorder::new(), self.clock.clone())
            .with_cap(self.options.cap_ms);
        player.start().expect("fresh player");
        self.playback = Some(Playback { stream, player });
        if self.options.virtual_time {
            self.virtual_now = now + self.options.cap_ms;
            self.advance(self.virtual_now);
        } else {
            self.pump();
        }
    }

    fn advance(&mut self, now: u64) {
        if let Some(p) = self.playback.as_mut() {
            self.clock.set(now);
            p.player.advance();
            self.pump();
        }
    }

    fn end_playback(&mut self, now: u64, reason: PlaybackEnd) {
        self.advance(now);
        let Some(mut p) = self.playback.take() else {
            return;
        };
        let elapsed = p.player.stop();
        self.playback = Some(p);
        self.pump();
        if let Some(p) = self.playback.take() {
            self.finished(p.stream, elapsed, reason);
        }
    }

    /// Turns player events into wire messages; drops the player once it
    /// has capped.
    fn pump(&mut self) {
        let Some(p) = self.playback.as_mut() else {
            return;
        };
        let stream = p.stream;
        let mut capped = None;
        let mut frames = Vec::new();
        for event in p.player.drain_events() {
            match event {
                PlaybackEvent::Presented { t_ms, pattern } => {
                    let pins = pattern.to_mask().expect("catalog Tactons are 4x4");
                    frames.push(FramePayload { stream, t_ms, pins });
                }
                PlaybackEvent::Capped { t_ms } => capped = Some(t_ms),
                PlaybackEvent::Stopped { .. } | PlaybackEvent::DeviceError { .. } => {}
            }
        }
        for f in frames {
            self.push(ServerMessage::Frame(f));
        }
        if let Some(t_ms) = capped {
            self.playback = None;
            self.finished(stream, t_ms, PlaybackEnd::Capped);
        }
    }

    fn finished(&mut self, stream: u64, t_ms: u64, reason: PlaybackEnd) {
        if let Some(BlockRun {
            pending: Some(pending),
            ..
        }) = self.block.as_mut()
        {
            if pending.stream == stream {
                pending.exposure_ms = Some(t_ms);
            }
        }
        self.push(ServerMessage::Control(Notice::PlaybackEnded {
            stream,
            t_ms,
            reason,
        }));
    }

    fn error(&mut self, message: String, in_reply_to: Option<u64>) {
        self.push(ServerMessage::Control(Notice::Error {
            message,
            in_reply_to,
        }));
    }

    fn push(&mut self, message: ServerMessage) {
        self.seq += 1;
        self.out.push(Envelope {
            v: PROTOCOL_VERSION,
            session_id: self.id.clone(),
            seq: self.seq,
            message,
        });
    }

    fn take(&mut self) -> Vec<Outbound> {
        std::mem::take(&mut self.out)
    }
}

impl std::fmt::Debug for Session {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Session")
            .field("id", &self.id)
            .field("seq", &self.seq)
            .field("records", &self.records.len())
            .finish_non_exhaustive()
    }
}
