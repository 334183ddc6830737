use std::collections::HashSet;

use tacton::library::{FamilyKind, SET_TEMPO_MS};
use tacton::{Direction, SetCatalog, SetId, Size, Speed, Tacton};

#[test]
fn every_dynamic_set_tacton_runs_at_set_tempo() {
    let catalog = SetCatalog::builtin();
    for family in catalog.families() {
        for (d, t) in family.iter() {
            match family.kind() {
                FamilyKind::Static => assert!(t.is_static(), "{} {d}", family.name()),
                _ => assert_eq!(t.tempo_ms(), Some(SET_TEMPO_MS), "{} {d}", family.name()),
            }
        }
    }
}

#[test]
fn set9_frame_counts() {
    let catalog = SetCatalog::builtin();
    let set9 = catalog.family(SetId::Set9);
    for d in Direction::ALL {
        let expected = if d.is_radial() { 6 } else { 9 };
        assert_eq!(set9.tacton(d).frames().unwrap().len(), expected, "{d}");
    }
}

#[test]
fn families_are_injective_over_eight_directions() {
    let catalog = SetCatalog::builtin();
    for family in catalog.families() {
        let distinct: HashSet<&Tacton> = family.iter().map(|(_, t)| t).collect();
        assert_eq!(distinct.len(), 8, "{}", family.name());
        assert_eq!(family.space().unwrap().cardinality(), 8);
    }
}

#[test]
fn composite_spaces() {
    let catalog = SetCatalog::builtin();
    let s2 = catalog.s2_space().unwrap();
    let s3 = catalog.s3_space().unwrap();
    assert_eq!(s2.cardinality(), 32);
    assert_eq!(s3.cardinality(), 48);
    for space in [&s2, &s3] {
        let distinct: HashSet<Tacton> = space.iter().map(|(_, t)| t).collect();
        assert_eq!(distinct.len(), space.cardinality());
        for (i, (tuple, _)) in space.iter().enumerate() {
            assert_eq!(space.index_of(&tuple).unwrap(), i);
        }
    }
}

#[test]
fn speed_sets_blink_tempo() {
    let catalog = SetCatalog::builtin();
    for (speed, tempo) in [(Speed::Slow, 40), (Speed::Medium, 200), (Speed::Fast, 500)] {
        let t = catalog.compose(Direction::NE, Size::Large, speed);
        assert_eq!(t.tempo_ms(), Some(tempo));
        assert_eq!(t.cycle_length_ms(), Some(2 * tempo as u64));
        assert_eq!(t.frame_at(0), catalog.shape(Direction::NE, Size::Large));
        assert!(t.frame_at(tempo as u64).is_blank());
    }
}

#[test]
fn catalog_json_round_trip() {
    let catalog = SetCatalog::builtin();
    let json = catalog.to_json();
    let reloaded = SetCatalog::from_json(&json).unwrap();
    assert_eq!(reloaded.to_json(), json);
    assert_eq!(
        reloaded.resolve("set9.NE").unwrap(),
        catalog.resolve("set9.NE").unwrap()
    );
}

#[test]
fn catalog_override_is_applied() {
    let json = r#"[{"name": "set4.N", "kind": "static", "pattern": ".oo.\n....\n....\n...."}]"#;
    let catalog = SetCatalog::from_json(json).unwrap();
    let t = catalog.resolve("set4.N").unwrap();
    assert_eq!(t.frame_at(0).to_text(), ".oo.\n....\n....\n....");
}

#[test]
fn colliding_override_is_rejected() {
    let south = SetCatalog::builtin().resolve("set4.S").unwrap();
    let text = south.frame_at(0).to_text();
    let json =
        serde_json::json!([{"name": "set4.N", "kind": "static", "pattern": text}]).to_string();
    assert!(SetCatalog::from_json(&json).is_err());
}
