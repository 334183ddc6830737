//! Confusion matrices and information transmission.

use tacton::experiments::{
    dimension_confusion, simulate_study, ConfusionMatrix, ResponderModel, SamplingMode,
};
use tacton::SetCatalog;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let classes = |n: usize| (0..n).map(|i| format!("c{i}")).collect::<Vec<_>>();

    let perfect = ConfusionMatrix::from_rows(
        classes(8),
        classes(8),
        &(0..8)
            .map(|i| (0..8).map(|j| u64::from(i == j) * 10).collect())
            .collect::<Vec<_>>(),
    )?;
    println!(
        "perfect 8 classes: {:.6} bits",
        perfect.information_transmission()?
    );

    let noisy = ConfusionMatrix::from_rows(classes(2), classes(2), &[vec![3, 1], vec![1, 3]])?;
    println!(
        "[[3,1],[1,3]]: {:.6} bits of H(S) = {:.1}",
        noisy.information_transmission()?,
        noisy.stimulus_entropy()?
    );

    let catalog = SetCatalog::builtin();
    let s3 = catalog.s3_space()?;
    let records = simulate_study(
        &s3,
        &ResponderModel::s3_reference(),
        1,
        480,
        SamplingMode::Balanced,
        3,
    )?;
    for dim in ["dir", "size", "speed"] {
        let m = dimension_confusion(&records, dim);
        println!(
            "{dim:<5} error {:>5.1}%  IT {:.3} of {:.3} bits",
            m.error_rate()? * 100.0,
            m.information_transmission()?,
            m.stimulus_entropy()?
        );
    }
    let speed = dimension_confusion(&records, "speed");
    println!("\nspeed confusion matrix ({:?}):", speed.stimuli());
    for row in speed.rows() {
        println!("  {row:?}");
    }
    Ok(())
}
