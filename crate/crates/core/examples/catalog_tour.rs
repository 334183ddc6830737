//! The directional sets, their kinds and how they animate.

use tacton::player::presentation_schedule;
use tacton::{Direction, SetCatalog, SetId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = SetCatalog::builtin();
    for set in SetId::ALL {
        let family = catalog.family(set);
        let north = family.tacton(Direction::N);
        println!(
            "{:<11} {:<9} frames={:<4} cycle={:>5} ms{}",
            set.name(),
            format!("{:?}", set.kind()),
            north.frames().map_or(1, |f| f.len()),
            north
                .cycle_length_ms()
                .map_or("-".into(), |c| c.to_string()),
            if set.reconstructed() {
                "  (layout reconstructed)"
            } else {
                ""
            }
        );
    }

    println!("\nset4, all directions:");
    for (d, t) in catalog.family(SetId::Set4).iter() {
        println!("{d}\n{}\n", t.frame_at(0));
    }

    println!("set9.NE over one cycle:");
    let wave = catalog.resolve("set9.NE")?;
    for (t, p) in presentation_schedule(&wave, 899, 10_000) {
        println!("t={t}\n{p}\n");
    }

    println!("circuit components:");
    for kind in tacton::CircuitComponentKind::ALL {
        println!(
            "{}\n{}\n",
            kind.label(),
            catalog.component(kind).frame_at(0)
        );
    }
    Ok(())
}
