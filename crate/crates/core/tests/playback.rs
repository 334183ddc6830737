use tacton::pattern::Pattern;
use tacton::player::{
    parse_dump, presentation_schedule, Clock, PlaybackSession, PlaybackState, VirtualClock,
    VirtualRecorder, DEFAULT_CAP_MS,
};
use tacton::{Direction, SetCatalog, SetId};

#[test]
fn advance_in_any_steps_gives_same_log() {
    let catalog = SetCatalog::builtin();
    let tacton = catalog.family(SetId::Set9).tacton(Direction::SW).clone();
    let whole = presentation_schedule(&tacton, 3000, DEFAULT_CAP_MS);
    for step in [1, 7, 33, 250] {
        let clock = VirtualClock::new();
        let mut session =
            PlaybackSession::play(tacton.clone(), VirtualRecorder::new(), clock.clone());
        while clock.now_ms() < 3000 {
            clock.advance(step.min(3000 - clock.now_ms()));
            session.advance();
        }
        assert_eq!(session.device().log(), whole.as_slice(), "step {step}");
    }
}

#[test]
fn replay_is_byte_identical() {
    let catalog = SetCatalog::builtin();
    let tacton = catalog.resolve("s3.NW.small.slow").unwrap();
    let a = presentation_schedule(&tacton, 20_000, DEFAULT_CAP_MS);
    let b = presentation_schedule(&tacton, 20_000, DEFAULT_CAP_MS);
    assert_eq!(a, b);
    let (t, last) = a.last().unwrap();
    assert!(*t < DEFAULT_CAP_MS && last.is_blank());
    assert!(a.iter().all(|(t, _)| *t < DEFAULT_CAP_MS));
}

#[test]
fn cap_blanks_a_raised_display() {
    let tacton = SetCatalog::builtin().resolve("set4.E").unwrap();
    let clock = VirtualClock::new();
    let mut session = PlaybackSession::play(tacton, VirtualRecorder::new(), clock.clone());
    clock.set(9_999);
    session.advance();
    assert_eq!(session.state(), PlaybackState::Playing);
    clock.set(12_000);
    session.advance();
    assert_eq!(session.state(), PlaybackState::Capped);
    let log = session.device().log();
    assert_eq!(log.len(), 2);
    assert_eq!(log[1], (10_000, Pattern::blank(4, 4).unwrap()));
}

#[test]
fn dump_parses_back() {
    let tacton = SetCatalog::builtin().resolve("set3.N").unwrap();
    let clock = VirtualClock::new();
    let mut session = PlaybackSession::play(tacton, VirtualRecorder::new(), clock.clone());
    clock.set(1000);
    session.advance();
    let dump = session.device().dump().unwrap();
    let parsed = parse_dump(&dump).unwrap();
    let expected: Vec<(u64, u16)> = session
        .device()
        .log()
        .iter()
        .map(|(t, p)| (*t, p.to_mask().unwrap()))
        .collect();
    assert_eq!(parsed, expected);
}
