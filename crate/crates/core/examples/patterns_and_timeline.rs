//! Patterns, frames and the timeline that decides what is up at any instant.

use tacton::pattern::Pattern;
use tacton::tacton::DynamicTacton;
use tacton::{make_blinking, BlinkRhythm, Frame, Tacton};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let arrow: Pattern = ".oo.\noooo\n.oo.\n.oo.".parse()?;
    println!(
        "pattern ({} pins up, mask {:04x}):\n{arrow}\n",
        arrow.count_up(),
        arrow.to_mask()?
    );
    println!("rotated clockwise:\n{}\n", arrow.rotate_cw());

    // three-to-one blink at 40 ms per unit: 120 ms up, 40 ms down
    let blink = make_blinking(arrow.clone(), BlinkRhythm::new(3, 1)?, 40)?;
    println!("blink cycle: {:?} ms", blink.cycle_length_ms());
    for t in [0, 119, 120, 159, 160] {
        println!("  t={t:>3} ms  blank={}", blink.frame_at(t).is_blank());
    }

    // a sweeping line with a 200 ms pause between sweeps
    let rows: Vec<Frame> = (0..4)
        .map(|r| Pattern::from_fn(4, 4, |row, _| row == r).map(|p| Frame::new(p, 1)))
        .collect::<Result<_, _>>()?;
    let sweep = Tacton::Dynamic(DynamicTacton::with_gap(rows, 100, 200)?);
    println!("\nsweep cycle: {:?} ms", sweep.cycle_length_ms());
    let mut t = 0;
    while t < 1200 {
        println!("  t={t:>4}\n{}", sweep.frame_at(t));
        t = sweep.next_boundary_after(t).unwrap_or(u64::MAX);
    }
    Ok(())
}
