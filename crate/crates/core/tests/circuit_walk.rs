use std::collections::BTreeSet;

use tacton::guidance::{bundled_circuits, Guide};
use tacton::{CircuitComponentKind, Direction};

#[test]
fn cursor_reaches_every_node_by_following_cues() {
    let guide = Guide::default();
    for (name, circuit) in bundled_circuits() {
        let mut seen = BTreeSet::from([0]);
        let mut stack = vec![circuit.clone()];
        while let Some(world) = stack.pop() {
            let cue = guide.available_directions_tacton(&world).unwrap();
            let dirs = world.available_directions();
            assert_eq!(cue.frames().unwrap().len(), dirs.len(), "{name}");
            for d in dirs {
                let mut next = world.clone();
                let node = next.move_cursor(d).unwrap();
                if seen.insert(node) {
                    stack.push(next);
                }
            }
        }
        assert_eq!(seen.len(), circuit.nodes().len(), "{name}");
    }
}

#[test]
fn moves_off_the_wire_are_refused() {
    for (name, mut circuit) in bundled_circuits() {
        for node in 0..circuit.nodes().len() {
            circuit.set_cursor(node).unwrap();
            let open = circuit.available_directions();
            for d in Direction::RADIALS.into_iter().filter(|d| !open.contains(d)) {
                assert_eq!(circuit.move_cursor(d), None, "{name} node {node} {d}");
                assert_eq!(circuit.cursor(), node);
            }
        }
    }
}

#[test]
fn junctions_branch() {
    for (name, circuit) in bundled_circuits() {
        for (i, n) in circuit.nodes().iter().enumerate() {
            if n.kind == CircuitComponentKind::Junction {
                assert!(circuit.degree(i) >= 3, "{name} {i}");
            }
        }
    }
}
