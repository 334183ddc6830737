//! Deterministic playback onto a recorder under a virtual clock, plus the
//! stimulus cap.

use tacton::player::{
    PlaybackSession, PlaybackState, TerminalRenderer, VirtualClock, VirtualRecorder,
};
use tacton::SetCatalog;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = SetCatalog::builtin();
    let wave = catalog.resolve("set3.E")?;

    let clock = VirtualClock::new();
    let mut session = PlaybackSession::play(wave.clone(), VirtualRecorder::new(), clock.clone());
    let events = session.subscribe();
    for _ in 0..7 {
        clock.advance(50);
        session.advance();
    }
    let held = session.stop();
    println!("held for {held} ms, state {:?}", session.state());
    print!("recorder dump:\n{}", session.device().dump()?);
    println!("{} events observed", events.try_iter().count());

    // a static Tacton left alone is blanked at the cap
    let clock = VirtualClock::new();
    let mut capped = PlaybackSession::play(
        catalog.resolve("set4.E")?,
        VirtualRecorder::new(),
        clock.clone(),
    );
    clock.set(60_000);
    capped.advance();
    assert_eq!(capped.state(), PlaybackState::Capped);
    print!("\ncapped dump:\n{}", capped.device().dump()?);

    println!("\nterminal rendering of the first 250 ms:");
    let clock = VirtualClock::new();
    let stdout = std::io::stdout();
    let mut live = PlaybackSession::play(wave, TerminalRenderer::new(stdout.lock()), clock.clone());
    clock.set(250);
    live.advance();
    Ok(())
}
