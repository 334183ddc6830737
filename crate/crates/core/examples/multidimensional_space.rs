//! Direction × size × speed spaces and their value tuples.

use tacton::{Direction, SetCatalog, Size, Speed};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = SetCatalog::builtin();
    let s2 = catalog.s2_space()?;
    let s3 = catalog.s3_space()?;
    for space in [&s2, &s3] {
        let dims: Vec<String> = space
            .dimensions()
            .iter()
            .map(|d| format!("{}={{{}}}", d.name, d.values.join(",")))
            .collect();
        println!(
            "{}: {} Tactons over {}",
            space.name(),
            space.cardinality(),
            dims.join(" × ")
        );
    }

    let tuple = s3.tuple(&["SW", "small", "fast"])?;
    let index = s3.index_of(&tuple)?;
    let tacton = s3.tacton_at(index);
    println!(
        "\n{tuple} is index {index}, tempo {:?} ms",
        tacton.tempo_ms()
    );
    println!("{}", tacton.frame_at(0));

    let direct = catalog.compose(Direction::SW, Size::Small, Speed::Fast);
    assert_eq!(direct, tacton);

    println!("\nfirst five of s2:");
    for (tuple, t) in s2.iter().take(5) {
        println!("  {tuple:<32} cycle {:?} ms", t.cycle_length_ms());
    }
    Ok(())
}
