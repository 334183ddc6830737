//! A counterbalanced identification study with a simulated responder,
//! logged as CSV and summarized.

use tacton::experiments::{
    analyze, read_trial_log, simulate_responder, write_trial_log, Block, ResponderModel, TrialPlan,
};
use tacton::SetCatalog;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = SetCatalog::builtin();
    let blocks: Vec<Block> = ["set4", "set3", "set9", "set11prime"]
        .map(Block::set)
        .to_vec();
    let plans = TrialPlan::study(8, &blocks, 11, true)?;
    for plan in &plans[..4] {
        let order: Vec<&str> = plan
            .blocks
            .iter()
            .filter(|b| !b.training)
            .map(|b| b.space.as_str())
            .collect();
        println!("{}: {}", plan.participant, order.join(" -> "));
    }

    let model = ResponderModel::direction_confusion(0.04);
    let mut records = Vec::new();
    for plan in &plans {
        for (i, block) in plan.blocks.iter().enumerate().filter(|(_, b)| !b.training) {
            let space = catalog.space(&block.space)?;
            let stimuli = plan.stimuli(i, &space)?;
            records.extend(simulate_responder(
                &space,
                &model,
                &plan.participant,
                &block.space,
                &stimuli,
                plan.block_seed(i),
            )?);
        }
    }

    let mut csv = Vec::new();
    write_trial_log(&mut csv, &records)?;
    println!("\n{} trials logged, first lines:", records.len());
    for line in String::from_utf8(csv.clone())?.lines().take(3) {
        println!("  {line}");
    }

    let report = analyze(&read_trial_log(csv.as_slice())?)?;
    println!("\n{}", report.to_text());
    Ok(())
}
