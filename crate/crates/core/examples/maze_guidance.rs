//! Guided walk through a bundled maze and its mirror image.

use tacton::guidance::{bundled_mazes, Guide, MoveOutcome};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let guide = Guide::default();
    let (name, maze) = bundled_mazes().swap_remove(2);
    println!("{name}:\n{}", maze.to_text());

    let mut walker = maze.clone();
    let mut steps = 0;
    while !walker.at_exit() {
        let (d, cue) = guide.maze_cue(&walker)?;
        let outcome = walker.step(d);
        steps += 1;
        println!(
            "{steps:>3}: cue {d:<2} ({} pins) -> {outcome:?} at {:?}",
            cue.frame_at(0).count_up(),
            walker.current()
        );
        assert_ne!(outcome, MoveOutcome::Blocked);
    }
    println!(
        "exit after {steps} steps; BFS distance {:?}",
        maze.distance_from(maze.start())
    );

    let mirror = maze.mirror();
    println!("\nmirror image:\n{}", mirror.to_text());
    println!("mirror walk: {} steps", mirror.clone().guided_walk()?);
    assert_eq!(mirror.mirror(), maze);
    Ok(())
}
