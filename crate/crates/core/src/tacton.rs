//! Static and dynamic Tactons and their timeline.
//!
//! A dynamic Tacton displays each frame for `duration × tempo_ms`
//! milliseconds, frames in order, and then repeats. Frame intervals are
//! half-open, so an instant on a boundary belongs to the later frame.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pattern::Pattern;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TactonError {
    #[error("a dynamic Tacton needs at least one frame")]
    NoFrames,
    #[error("frame {index} has duration 0; durations are positive")]
    ZeroDuration { index: usize },
    #[error("tempo must be a positive number of milliseconds")]
    ZeroTempo,
    #[error("frame {index} is {found:?}, expected {expected:?} like the first frame")]
    MismatchedFrame {
        index: usize,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("blink rhythm durations must both be positive")]
    ZeroRhythm,
    #[error("blinking an all-down pattern would display nothing")]
    BlankBlink,
}

/// One animation step: a pattern and a unitless relative duration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Frame {
    pub pattern: Pattern,
    pub duration: u32,
}

impl Frame {
    pub fn new(pattern: Pattern, duration: u32) -> Self {
        Self { pattern, duration }
    }
}

/// Frame list plus tempo. Optionally a blank pause follows every cycle;
/// the default is to repeat immediately.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DynamicTacton {
    frames: Vec<Frame>,
    tempo_ms: u32,
    gap_ms: u32,
    blank: Pattern,
}

impl DynamicTacton {
    pub fn new(frames: Vec<Frame>, tempo_ms: u32) -> Result<Self, TactonError> {
        Self::with_gap(frames, tempo_ms, 0)
    }

    /// Like [`DynamicTacton::new`], with `gap_ms` of all-down pins after each
    /// cycle.
    pub fn with_gap(frames: Vec<Frame>, tempo_ms: u32, gap_ms: u32) -> Result<Self, TactonError> {
        let first = frames.first().ok_or(TactonError::NoFrames)?;
        if tempo_ms == 0 {
            return Err(TactonError::ZeroTempo);
        }
        let expected = first.pattern.dims();
        for (index, frame) in frames.iter().enumerate() {
            if frame.duration == 0 {
                return Err(TactonError::ZeroDuration { index });
            }
            if frame.pattern.dims() != expected {
                return Err(TactonError::MismatchedFrame {
                    index,
                    expected,
                    found: frame.pattern.dims(),
                });
            }
        }
        let blank = Pattern::blank(expected.0, expected.1).expect("frame dimensions are positive");
        Ok(Self {
            frames,
            tempo_ms,
            gap_ms,
            blank,
        })
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    pub fn tempo_ms(&self) -> u32 {
        self.tempo_ms
    }

    pub fn gap_ms(&self) -> u32 {
        self.gap_ms
    }

    /// Sum of frame durations, in tempo units.
    pub fn total_duration(&self) -> u64 {
        self.frames.iter().map(|f| u64::from(f.duration)).sum()
    }

    pub fn cycle_length_ms(&self) -> u64 {
        self.total_duration() * u64::from(self.tempo_ms) + u64::from(self.gap_ms)
    }

    /// Same frames at another tempo.
    pub fn with_tempo(&self, tempo_ms: u32) -> Result<Self, TactonError> {
        Self::with_gap(self.frames.clone(), tempo_ms, self.gap_ms)
    }

    /// Locates `t_ms` in the cycle: the frame index (`None` inside the
    /// inter-cycle gap) and the absolute instant at which that segment ends.
    pub fn segment_at(&self, t_ms: u64) -> (Option<usize>, u64) {
        let cycle = self.cycle_length_ms();
        let cycle_start = t_ms - t_ms % cycle;
        let offset = t_ms % cycle;
        let tempo = u64::from(self.tempo_ms);
        let mut end = 0;
        for (i, frame) in self.frames.iter().enumerate() {
            end += u64::from(frame.duration) * tempo;
            if offset < end {
                return (Some(i), cycle_start + end);
            }
        }
        (None, cycle_start + cycle)
    }

    pub fn frame_at(&self, t_ms: u64) -> &Pattern {
        match self.segment_at(t_ms).0 {
            Some(i) => &self.frames[i].pattern,
            None => &self.blank,
        }
    }

    fn dims(&self) -> (usize, usize) {
        self.blank.dims()
    }
}

/// A structured tactile message: a single pattern, or an animation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tacton {
    Static(Pattern),
    Dynamic(DynamicTacton),
}

impl Tacton {
    pub fn dynamic(frames: Vec<Frame>, tempo_ms: u32) -> Result<Self, TactonError> {
        DynamicTacton::new(frames, tempo_ms).map(Tacton::Dynamic)
    }

    /// Pattern on display `t_ms` after the Tacton started.
    pub fn frame_at(&self, t_ms: u64) -> &Pattern {
        match self {
            Tacton::Static(p) => p,
            Tacton::Dynamic(d) => d.frame_at(t_ms),
        }
    }

    /// Period of the animation; `None` for static Tactons.
    pub fn cycle_length_ms(&self) -> Option<u64> {
        match self {
            Tacton::Static(_) => None,
            Tacton::Dynamic(d) => Some(d.cycle_length_ms()),
        }
    }

    /// The first instant strictly after `t_ms` where the displayed segment
    /// may change. Consecutive frames can carry equal patterns, so callers
    /// comparing patterns still need to check for an actual change.
    pub fn next_boundary_after(&self, t_ms: u64) -> Option<u64> {
        match self {
            Tacton::Static(_) => None,
            Tacton::Dynamic(d) => Some(d.segment_at(t_ms).1),
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        match self {
            Tacton::Static(p) => p.dims(),
            Tacton::Dynamic(d) => d.dims(),
        }
    }

    pub fn is_static(&self) -> bool {
        matches!(self, Tacton::Static(_))
    }

    pub fn tempo_ms(&self) -> Option<u32> {
        match self {
            Tacton::Static(_) => None,
            Tacton::Dynamic(d) => Some(d.tempo_ms),
        }
    }

    pub fn frames(&self) -> Option<&[Frame]> {
        match self {
            Tacton::Static(_) => None,
            Tacton::Dynamic(d) => Some(&d.frames),
        }
    }

    /// Union of all pins ever raised.
    pub fn footprint(&self) -> Pattern {
        match self {
            Tacton::Static(p) => p.clone(),
            Tacton::Dynamic(d) => d
                .frames
                .iter()
                .fold(d.blank.clone(), |acc, f| acc.union(&f.pattern)),
        }
    }
}

impl From<Pattern> for Tacton {
    fn from(pattern: Pattern) -> Self {
        Tacton::Static(pattern)
    }
}

/// Durations of the "pattern up" and "all down" frames of a blink.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlinkRhythm {
    pub up: u32,
    pub down: u32,
}

impl BlinkRhythm {
    /// Equal up and down durations.
    pub const EVEN: BlinkRhythm = BlinkRhythm { up: 1, down: 1 };

    pub fn new(up: u32, down: u32) -> Result<Self, TactonError> {
        if up == 0 || down == 0 {
            return Err(TactonError::ZeroRhythm);
        }
        Ok(Self { up, down })
    }
}

impl Default for BlinkRhythm {
    fn default() -> Self {
        Self::EVEN
    }
}

/// Alternates `pattern` with an all-down frame.
pub fn make_blinking(
    pattern: Pattern,
    rhythm: BlinkRhythm,
    tempo_ms: u32,
) -> Result<Tacton, TactonError> {
    if rhythm.up == 0 || rhythm.down == 0 {
        return Err(TactonError::ZeroRhythm);
    }
    if pattern.is_blank() {
        return Err(TactonError::BlankBlink);
    }
    let blank =
        Pattern::blank(pattern.rows(), pattern.cols()).expect("pattern dimensions are positive");
    Tacton::dynamic(
        vec![
            Frame::new(pattern, rhythm.up),
            Frame::new(blank, rhythm.down),
        ],
        tempo_ms,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(text: &str) -> Pattern {
        Pattern::from_text(text).unwrap()
    }

    fn north() -> Pattern {
        p("oooo\n....\n....\n....")
    }

    fn six_frame_wave() -> Tacton {
        let frames = (0..6)
            .map(|i| Frame::new(Pattern::from_mask(1 << i), 1))
            .collect();
        Tacton::dynamic(frames, 100).unwrap()
    }

    /// Materializes the per-millisecond schedule of one cycle by laying the
    /// frames out end to end.
    fn per_ms_schedule(d: &DynamicTacton) -> Vec<Pattern> {
        let mut out = Vec::new();
        for f in d.frames() {
            for _ in 0..u64::from(f.duration) * u64::from(d.tempo_ms()) {
                out.push(f.pattern.clone());
            }
        }
        for _ in 0..d.gap_ms() {
            out.push(Pattern::blank(d.dims().0, d.dims().1).unwrap());
        }
        out
    }

    #[test]
    fn static_is_time_invariant() {
        let t = Tacton::Static(north());
        assert_eq!(t.frame_at(1_000_000_000), &north());
        assert_eq!(t.cycle_length_ms(), None);
        assert_eq!(t.next_boundary_after(5), None);
    }

    #[test]
    fn blink_is_blank_mid_second_frame() {
        let t = make_blinking(north(), BlinkRhythm::EVEN, 100).unwrap();
        assert!(t.frame_at(150).is_blank());
        assert_eq!(t.frame_at(50), &north());
        assert_eq!(t.frame_at(200), &north());
    }

    #[test]
    fn wave_boundaries_are_half_open() {
        let t = six_frame_wave();
        assert_eq!(t.cycle_length_ms(), Some(600));
        assert_eq!(t.frame_at(599), &Pattern::from_mask(1 << 5));
        assert_eq!(t.frame_at(600), &Pattern::from_mask(1));
        assert_eq!(t.frame_at(100), &Pattern::from_mask(1 << 1));
        assert_eq!(t.frame_at(99), &Pattern::from_mask(1));
    }

    #[test]
    fn cycle_lengths() {
        let t = make_blinking(north(), BlinkRhythm::new(3, 1).unwrap(), 40).unwrap();
        assert_eq!(t.cycle_length_ms(), Some(160));
        // 3 units of 40 ms up, then 40 ms down
        assert_eq!(t.frame_at(119), &north());
        assert!(t.frame_at(120).is_blank());
        assert_eq!(t.frame_at(160), &north());
        let even = make_blinking(north(), BlinkRhythm::EVEN, 100).unwrap();
        assert_eq!(even.cycle_length_ms(), Some(200));
        let fast = make_blinking(north(), BlinkRhythm::EVEN, 40).unwrap();
        assert_eq!(fast.cycle_length_ms(), Some(80));
    }

    #[test]
    fn blinking_blank_rejected() {
        let blank = Pattern::blank(4, 4).unwrap();
        assert_eq!(
            make_blinking(blank, BlinkRhythm::EVEN, 100),
            Err(TactonError::BlankBlink)
        );
        assert_eq!(BlinkRhythm::new(0, 1), Err(TactonError::ZeroRhythm));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Tacton::dynamic(vec![], 100), Err(TactonError::NoFrames));
        assert_eq!(
            Tacton::dynamic(vec![Frame::new(north(), 1)], 0),
            Err(TactonError::ZeroTempo)
        );
        assert_eq!(
            Tacton::dynamic(vec![Frame::new(north(), 1), Frame::new(north(), 0)], 100),
            Err(TactonError::ZeroDuration { index: 1 })
        );
        let small = Pattern::blank(2, 2).unwrap();
        assert!(matches!(
            Tacton::dynamic(vec![Frame::new(north(), 1), Frame::new(small, 1)], 100),
            Err(TactonError::MismatchedFrame { index: 1, .. })
        ));
    }

    #[test]
    fn gap_appends_blank_time() {
        let d = DynamicTacton::with_gap(vec![Frame::new(north(), 2)], 50, 30).unwrap();
        assert_eq!(d.cycle_length_ms(), 130);
        assert_eq!(d.frame_at(99), &north());
        assert!(d.frame_at(100).is_blank());
        assert!(d.frame_at(129).is_blank());
        assert_eq!(d.frame_at(130), &north());
        assert_eq!(d.segment_at(100), (None, 130));
    }

    fn any_dynamic() -> impl Strategy<Value = DynamicTacton> {
        (
            proptest::collection::vec((any::<u16>(), 1u32..5), 1..7),
            1u32..120,
            prop_oneof![Just(0u32), 1u32..50],
        )
            .prop_map(|(frames, tempo, gap)| {
                let frames = frames
                    .into_iter()
                    .map(|(m, d)| Frame::new(Pattern::from_mask(m), d))
                    .collect();
                DynamicTacton::with_gap(frames, tempo, gap).unwrap()
            })
    }

    proptest! {
        #[test]
        fn frame_at_matches_per_ms_oracle(d in any_dynamic()) {
            let schedule = per_ms_schedule(&d);
            prop_assert_eq!(schedule.len() as u64, d.cycle_length_ms());
            for (t, expected) in schedule.iter().enumerate() {
                prop_assert_eq!(d.frame_at(t as u64), expected);
                // two cycles later must be identical
                prop_assert_eq!(d.frame_at(t as u64 + 2 * d.cycle_length_ms()), expected);
            }
        }

        #[test]
        fn boundaries_are_strictly_ahead(d in any_dynamic(), t in 0u64..100_000) {
            let (_, end) = d.segment_at(t);
            prop_assert!(end > t);
            prop_assert!(end - t <= d.cycle_length_ms());
        }
    }
}
