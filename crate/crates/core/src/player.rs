//! Deterministic playback of Tactons onto a pin-array device.
//!
//! A [`PlaybackSession`] owns a device and an injected [`Clock`]. Calling
//! [`PlaybackSession::advance`] catches the device up with the clock: every
//! pattern change between the last call and now is presented at its exact
//! scheduled instant, so with a [`VirtualClock`] the presentation log is a
//! pure function of the Tacton and the cap.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::mpsc;
use std::sync::Arc;
use std::time::Instant;

use thiserror::Error;

use crate::pattern::{Pattern, PatternError};
use crate::tacton::Tacton;

/// Stimuli are cut off after this long.
pub const DEFAULT_CAP_MS: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("device error: {0}")]
pub struct DeviceError(pub String);

impl From<io::Error> for DeviceError {
    fn from(e: io::Error) -> Self {
        DeviceError(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlayerError {
    #[error("session already started")]
    AlreadyStarted,
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// Sink for pin patterns. Sessions only call `present` when the pattern
/// actually changes.
pub trait PinArrayDevice {
    /// Shows `pattern`; `at_ms` is the stimulus-relative instant.
    fn present(&mut self, at_ms: u64, pattern: &Pattern) -> Result<(), DeviceError>;
}

impl<D: PinArrayDevice + ?Sized> PinArrayDevice for &mut D {
    fn present(&mut self, at_ms: u64, pattern: &Pattern) -> Result<(), DeviceError> {
        (**self).present(at_ms, pattern)
    }
}

impl<D: PinArrayDevice + ?Sized> PinArrayDevice for Box<D> {
    fn present(&mut self, at_ms: u64, pattern: &Pattern) -> Result<(), DeviceError> {
        (**self).present(at_ms, pattern)
    }
}

pub trait Clock {
    fn now_ms(&self) -> u64;
}

impl<C: Clock + ?Sized> Clock for &C {
    fn now_ms(&self) -> u64 {
        (**self).now_ms()
    }
}

impl<C: Clock + ?Sized> Clock for Arc<C> {
    fn now_ms(&self) -> u64 {
        (**self).now_ms()
    }
}

/// Manually advanced clock. Clones share the same time.
#[derive(Debug, Clone, Default)]
pub struct VirtualClock(Arc<AtomicU64>);

impl VirtualClock {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn at(ms: u64) -> Self {
        Self(Arc::new(AtomicU64::new(ms)))
    }

    pub fn advance(&self, ms: u64) {
        self.0.fetch_add(ms, Ordering::SeqCst);
    }

    pub fn set(&self, ms: u64) {
        self.0.store(ms, Ordering::SeqCst);
    }
}

impl Clock for VirtualClock {
    fn now_ms(&self) -> u64 {
        self.0.load(Ordering::SeqCst)
    }
}

/// Milliseconds since construction.
#[derive(Debug, Clone, Copy)]
pub struct WallClock {
    origin: Instant,
}

impl WallClock {
    pub fn new() -> Self {
        Self {
            origin: Instant::now(),
        }
    }
}

impl Default for WallClock {
    fn default() -> Self {
        Self::new()
    }
}

impl Clock for WallClock {
    fn now_ms(&self) -> u64 {
        self.origin.elapsed().as_millis() as u64
    }
}

/// Records every presentation for later inspection.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct VirtualRecorder {
    log: Vec<(u64, Pattern)>,
}

impl VirtualRecorder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn log(&self) -> &[(u64, Pattern)] {
        &self.log
    }

    /// One `t_ms<TAB>mask` line per presentation, mask as four lowercase
    /// hex digits.
    pub fn dump(&self) -> Result<String, PatternError> {
        dump_schedule(&self.log)
    }
}

impl PinArrayDevice for VirtualRecorder {
    fn present(&mut self, at_ms: u64, pattern: &Pattern) -> Result<(), DeviceError> {
        self.log.push((at_ms, pattern.clone()));
        Ok(())
    }
}

/// Formats a schedule in the recorder dump format.
pub fn dump_schedule(schedule: &[(u64, Pattern)]) -> Result<String, PatternError> {
    let mut out = String::new();
    for (t, p) in schedule {
        writeln!(out, "{t}\t{:04x}", p.to_mask()?).expect("writing to a string");
    }
    Ok(out)
}

/// Parses the recorder dump format back into `(t_ms, mask)` pairs.
pub fn parse_dump(text: &str) -> Option<Vec<(u64, u16)>> {
    text.lines()
        .map(|line| {
            let (t, mask) = line.split_once('\t')?;
            Some((t.parse().ok()?, u16::from_str_radix(mask, 16).ok()?))
        })
        .collect()
}

/// Draws each presentation as a block of `o`/`.` rows.
pub struct TerminalRenderer<W: Write> {
    out: W,
}

impl<W: Write> TerminalRenderer<W> {
    pub fn new(out: W) -> Self {
        Self { out }
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

impl<W: Write> PinArrayDevice for TerminalRenderer<W> {
    fn present(&mut self, at_ms: u64, pattern: &Pattern) -> Result<(), DeviceError> {
        writeln!(self.out, "t={at_ms} ms")?;
        writeln!(self.out, "{pattern}")?;
        writeln!(self.out)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaybackState {
    Idle,
    Playing,
    Stopped,
    Capped,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PlaybackEvent {
    Presented { t_ms: u64, pattern: Pattern },
    Capped { t_ms: u64 },
    Stopped { t_ms: u64 },
    DeviceError { t_ms: u64, message: String },
}

/// One Tacton driving one device.
pub struct PlaybackSession<D, C> {
    tacton: Tacton,
    device: D,
    clock: C,
    cap_ms: u64,
    state: PlaybackState,
    start_ms: u64,
    elapsed_ms: u64,
    last: Option<Pattern>,
    next_boundary: Option<u64>,
    events: VecDeque<PlaybackEvent>,
    subscribers: Vec<mpsc::Sender<PlaybackEvent>>,
}

impl<D: PinArrayDevice, C: Clock> PlaybackSession<D, C> {
    pub fn new(tacton: Tacton, device: D, clock: C) -> Self {
        Self {
            tacton,
            device,
            clock,
            cap_ms: DEFAULT_CAP_MS,
            state: PlaybackState::Idle,
            start_ms: 0,
            elapsed_ms: 0,
            last: None,
            next_boundary: None,
            events: VecDeque::new(),
            subscribers: Vec::new(),
        }
    }

    pub fn with_cap(mut self, cap_ms: u64) -> Self {
        self.cap_ms = cap_ms;
        self
    }

    /// Starts playing immediately: the first frame is presented at t = 0.
    pub fn play(tacton: Tacton, device: D, clock: C) -> Self {
        let mut session = Self::new(tacton, device, clock);
        session.start().expect("fresh session is idle");
        session
    }

    pub fn start(&mut self) -> Result<(), PlayerError> {
        if self.state != PlaybackState::Idle {
            return Err(PlayerError::AlreadyStarted);
        }
        self.start_ms = self.clock.now_ms();
        self.state = PlaybackState::Playing;
        if self.cap_ms > 0 {
            let first = self.tacton.frame_at(0).clone();
            self.present(0, first);
            self.next_boundary = self.tacton.next_boundary_after(0);
        }
        self.advance();
        Ok(())
    }

    /// Presents every change due up to the current clock time and applies
    /// the cap.
    pub fn advance(&mut self) {
        if self.state != PlaybackState::Playing {
            return;
        }
        let now = self.relative_now();
        while let Some(t) = self.next_boundary {
            if t > now || t >= self.cap_ms {
                break;
            }
            let pattern = self.tacton.frame_at(t).clone();
            self.present(t, pattern);
            self.next_boundary = self.tacton.next_boundary_after(t);
        }
        if now >= self.cap_ms {
            self.finish(self.cap_ms, PlaybackState::Capped);
        }
    }

    /// Ends the stimulus and blanks the device. Returns the exposure time;
    /// repeated calls return the same value.
    pub fn stop(&mut self) -> u64 {
        self.advance();
        if self.state == PlaybackState::Playing {
            let now = self.relative_now();
            self.finish(now, PlaybackState::Stopped);
        }
        self.elapsed_ms
    }

    /// Exposure so far (final once stopped or capped).
    pub fn elapsed_ms(&self) -> u64 {
        match self.state {
            PlaybackState::Playing => self.relative_now().min(self.cap_ms),
            _ => self.elapsed_ms,
        }
    }

    /// Absolute clock time at which `advance` next has work to do.
    pub fn next_deadline(&self) -> Option<u64> {
        if self.state != PlaybackState::Playing {
            return None;
        }
        let rel = match self.next_boundary {
            Some(t) => t.min(self.cap_ms),
            None => self.cap_ms,
        };
        Some(self.start_ms + rel)
    }

    pub fn state(&self) -> PlaybackState {
        self.state
    }

    pub fn tacton(&self) -> &Tacton {
        &self.tacton
    }

    pub fn cap_ms(&self) -> u64 {
        self.cap_ms
    }

    pub fn device(&self) -> &D {
        &self.device
    }

    pub fn device_mut(&mut self) -> &mut D {
        &mut self.device
    }

    pub fn into_device(self) -> D {
        self.device
    }

    pub fn drain_events(&mut self) -> Vec<PlaybackEvent> {
        self.events.drain(..).collect()
    }

    /// Receives a copy of every subsequent event, e.g. on another thread.
    pub fn subscribe(&mut self) -> mpsc::Receiver<PlaybackEvent> {
        let (tx, rx) = mpsc::channel();
        self.subscribers.push(tx);
        rx
    }

    fn relative_now(&self) -> u64 {
        self.clock.now_ms().saturating_sub(self.start_ms)
    }

    fn finish(&mut self, at: u64, state: PlaybackState) {
        let blank = Pattern::blank(self.tacton.dims().0, self.tacton.dims().1)
            .expect("tacton dimensions are positive");
        self.present(at, blank);
        self.elapsed_ms = at;
        self.state = state;
        self.next_boundary = None;
        self.emit(match state {
            PlaybackState::Capped => PlaybackEvent::Capped { t_ms: at },
            _ => PlaybackEvent::Stopped { t_ms: at },
        });
    }

    fn present(&mut self, t_ms: u64, pattern: Pattern) {
        if self.last.as_ref() == Some(&pattern) {
            return;
        }
        match self.device.present(t_ms, &pattern) {
            Ok(()) => {
                self.last = Some(pattern.clone());
                self.emit(PlaybackEvent::Presented { t_ms, pattern });
            }
            Err(e) => self.emit(PlaybackEvent::DeviceError { t_ms, message: e.0 }),
        }
    }

    fn emit(&mut self, event: PlaybackEvent) {
        self.subscribers.retain(|tx| tx.send(event.clone()).is_ok());
        self.events.push_back(event);
    }
}

/// Presentation log of `tacton` from onset until `until_ms` (inclusive),
/// honouring `cap_ms`.
pub fn presentation_schedule(tacton: &Tacton, until_ms: u64, cap_ms: u64) -> Vec<(u64, Pattern)> {
    let clock = VirtualClock::new();
    let mut session = PlaybackSession::new(tacton.clone(), VirtualRecorder::new(), clock.clone())
        .with_cap(cap_ms);
    session.start().expect("fresh session");
    clock.set(until_ms);
    session.advance();
    session.into_device().log
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tacton::{make_blinking, BlinkRhythm};

    fn north() -> Pattern {
        Pattern::from_text("oooo\n....\n....\n....").unwrap()
    }

    fn blink() -> Tacton {
        make_blinking(north(), BlinkRhythm::EVEN, 100).unwrap()
    }

    struct Failing;

    impl PinArrayDevice for Failing {
        fn present(&mut self, _: u64, _: &Pattern) -> Result<(), DeviceError> {
            Err(DeviceError("unplugged".into()))
        }
    }

    #[test]
    fn static_presents_once() {
        let clock = VirtualClock::new();
        let mut s = PlaybackSession::play(
            Tacton::Static(north()),
            VirtualRecorder::new(),
            clock.clone(),
        );
        for _ in 0..50 {
            clock.advance(150);
            s.advance();
        }
        assert_eq!(s.device().log(), &[(0, north())]);
        assert_eq!(s.state(), PlaybackState::Playing);
    }

    #[test]
    fn blink_presents_every_change() {
        let clock = VirtualClock::new();
        let mut s = PlaybackSession::play(blink(), VirtualRecorder::new(), clock.clone());
        clock.advance(450);
        s.advance();
        let times: Vec<u64> = s.device().log().iter().map(|(t, _)| *t).collect();
        assert_eq!(times, vec![0, 100, 200, 300, 400]);
    }

    #[test]
    fn cap_blanks_and_freezes() {
        let clock = VirtualClock::new();
        let mut s = PlaybackSession::play(
            Tacton::Static(north()),
            VirtualRecorder::new(),
            clock.clone(),
        );
        clock.advance(10_000);
        s.advance();
        assert_eq!(s.state(), PlaybackState::Capped);
        let log = s.device().log();
        assert_eq!(log.last().unwrap().0, 10_000);
        assert!(log.last().unwrap().1.is_blank());
        clock.advance(5_000);
        assert_eq!(s.stop(), 10_000);
        assert_eq!(s.device().log().len(), 2);
    }

    #[test]
    fn stop_reports_exposure_and_is_idempotent() {
        let clock = VirtualClock::new();
        let mut s = PlaybackSession::play(blink(), VirtualRecorder::new(), clock.clone());
        clock.advance(2310);
        assert_eq!(s.stop(), 2310);
        clock.advance(100);
        assert_eq!(s.stop(), 2310);
        assert_eq!(s.state(), PlaybackState::Stopped);
        // t = 2300 begins a blank half, so nothing is written at 2310
        assert!(s.device().log().iter().all(|(t, _)| *t <= 2310));
        assert!(s.device().log().last().unwrap().1.is_blank());
    }

    #[test]
    fn idle_stop_is_zero() {
        let mut s = PlaybackSession::new(blink(), VirtualRecorder::new(), VirtualClock::new());
        assert_eq!(s.stop(), 0);
        assert_eq!(s.state(), PlaybackState::Idle);
        s.start().unwrap();
        assert_eq!(s.start(), Err(PlayerError::AlreadyStarted));
    }

    #[test]
    fn device_failure_becomes_event() {
        let mut s = PlaybackSession::play(blink(), Failing, VirtualClock::new());
        let events = s.drain_events();
        assert!(matches!(
            events[0],
            PlaybackEvent::DeviceError { t_ms: 0, .. }
        ));
        assert_eq!(s.state(), PlaybackState::Playing);
    }

    #[test]
    fn subscribers_see_events() {
        let clock = VirtualClock::new();
        let mut s = PlaybackSession::new(blink(), VirtualRecorder::new(), clock.clone());
        let rx = s.subscribe();
        s.start().unwrap();
        clock.advance(100);
        s.advance();
        let handle = std::thread::spawn(move || rx.try_iter().count());
        assert_eq!(handle.join().unwrap(), 2);
    }

    #[test]
    fn session_started_late_uses_relative_time() {
        let clock = VirtualClock::at(5_000);
        let mut s = PlaybackSession::play(blink(), VirtualRecorder::new(), clock.clone());
        assert_eq!(s.next_deadline(), Some(5_100));
        clock.advance(250);
        s.advance();
        assert_eq!(s.device().log().len(), 3);
        assert_eq!(s.elapsed_ms(), 250);
    }

    #[test]
    fn dump_format() {
        let schedule = presentation_schedule(&blink(), 250, DEFAULT_CAP_MS);
        let text = dump_schedule(&schedule).unwrap();
        assert_eq!(text, "0\t000f\n100\t0000\n200\t000f\n");
        assert_eq!(
            parse_dump(&text).unwrap(),
            vec![(0, 0xf), (100, 0), (200, 0xf)]
        );
    }

    #[test]
    fn terminal_renderer_draws_rows() {
        let mut s = PlaybackSession::play(
            Tacton::Static(north()),
            TerminalRenderer::new(Vec::new()),
            VirtualClock::new(),
        );
        s.stop();
        let text = String::from_utf8(s.into_device().into_inner()).unwrap();
        assert!(text.starts_with("t=0 ms\noooo\n....\n....\n....\n"));
        assert!(text.contains("t=0 ms\n....\n"));
    }
}
