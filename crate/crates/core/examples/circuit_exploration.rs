//! Two-level circuit exploration: the component under the cursor, and the
//! wires leaving it.

use tacton::guidance::{bundled_circuits, Guide};
use tacton::Direction;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let guide = Guide::default();
    let (name, mut circuit) = bundled_circuits().swap_remove(0);
    println!("{name}: {} nodes", circuit.nodes().len());

    for step in [
        Direction::N,
        Direction::E,
        Direction::S,
        Direction::E,
        Direction::W,
    ] {
        let node = circuit.cursor_node();
        let global = guide.available_directions_tacton(&circuit)?;
        println!(
            "\nat node {} ({}, {}) {:?}; wires {:?}; global cue cycles {:?} ms",
            circuit.cursor(),
            node.x,
            node.y,
            node.kind,
            circuit.available_directions(),
            global.cycle_length_ms()
        );
        println!(
            "local Tacton:\n{}",
            guide.local_tacton(&circuit).frame_at(0)
        );
        match circuit.move_cursor(step) {
            Some(next) => println!("move {step} -> node {next}"),
            None => println!("move {step} refused: no wire"),
        }
    }
    Ok(())
}
