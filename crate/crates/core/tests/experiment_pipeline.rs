use tacton::experiments::{
    analyze, read_trial_log, simulate_responder, simulate_study, write_trial_log, Block,
    ResponderModel, SamplingMode, TrialPlan,
};
use tacton::SetCatalog;

#[test]
fn csv_round_trip_preserves_analysis() {
    let catalog = SetCatalog::builtin();
    let s3 = catalog.s3_space().unwrap();
    let records = simulate_study(
        &s3,
        &ResponderModel::s3_reference(),
        3,
        96,
        SamplingMode::Balanced,
        42,
    )
    .unwrap();
    let mut csv = Vec::new();
    write_trial_log(&mut csv, &records).unwrap();
    let reread = read_trial_log(csv.as_slice()).unwrap();
    assert_eq!(reread, records);
    assert_eq!(analyze(&reread).unwrap(), analyze(&records).unwrap());
}

#[test]
fn simulation_is_seed_deterministic() {
    let catalog = SetCatalog::builtin();
    let s2 = catalog.s2_space().unwrap();
    let model = ResponderModel::direction_confusion(0.1);
    let a = simulate_study(&s2, &model, 2, 64, SamplingMode::Uniform, 9).unwrap();
    let b = simulate_study(&s2, &model, 2, 64, SamplingMode::Uniform, 9).unwrap();
    let c = simulate_study(&s2, &model, 2, 64, SamplingMode::Uniform, 10).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn counterbalanced_study_plan_runs_end_to_end() {
    let catalog = SetCatalog::builtin();
    let names = ["set4", "set3", "set9", "set11prime"];
    let blocks: Vec<Block> = names.iter().map(|n| Block::set(*n)).collect();
    let plans = TrialPlan::study(8, &blocks, 3, true).unwrap();
    let model = ResponderModel::direction_confusion(0.05);
    let mut records = Vec::new();
    for plan in &plans {
        for (i, block) in plan.blocks.iter().enumerate().filter(|(_, b)| !b.training) {
            let space = catalog.space(&block.space).unwrap();
            let stimuli = plan.stimuli(i, &space).unwrap();
            assert_eq!(stimuli.len(), 100);
            records.extend(
                simulate_responder(
                    &space,
                    &model,
                    &plan.participant,
                    &block.space,
                    &stimuli,
                    plan.block_seed(i),
                )
                .unwrap(),
            );
        }
    }
    let report = analyze(&records).unwrap();
    assert_eq!(report.blocks.len(), 4);
    for name in names {
        let block = report.block(name).unwrap();
        assert_eq!(block.participants.len(), 8);
        assert!(
            block.median_error_rate < 0.15,
            "{name}: {}",
            block.median_error_rate
        );
    }
    // first scored block differs across participants
    let firsts: std::collections::HashSet<_> = plans
        .iter()
        .map(|p| p.blocks.iter().find(|b| !b.training).unwrap().space.clone())
        .collect();
    assert_eq!(firsts.len(), 4);
}

#[test]
fn responder_model_from_json() {
    let model = ResponderModel::from_json(
        r#"{"dimensions": {"speed": {"confusion": 0.2, "adjacency": "linear"}},
            "response_time": {"median_ms": 1500, "sigma": 0.2}}"#,
    )
    .unwrap();
    let s3 = SetCatalog::builtin().s3_space().unwrap();
    let records = simulate_study(&s3, &model, 1, 480, SamplingMode::Balanced, 1).unwrap();
    let report = analyze(&records).unwrap();
    let p = &report.blocks[0].participants[0];
    assert_eq!(p.dimension_error_rates["dir"], 0.0);
    assert!((p.dimension_error_rates["speed"] - 0.2).abs() < 0.06);
    assert!((p.median_response_time_ms - 1500.0).abs() < 150.0);
}
