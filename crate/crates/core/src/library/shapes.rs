//! Canonical pin layouts for the directional sets on a 4x4 array.
//!
//! Every family is defined once for north and once for north-east; the
//! other directions are quarter turns of those, so a pattern and the
//! pattern of the opposite direction are always 180° rotations of each
//! other.

use crate::pattern::Pattern;
use crate::tacton::{make_blinking, BlinkRhythm, Frame, Tacton};

use super::direction::{Direction, Size};

/// Side of the modelled pin array.
pub const SIDE: usize = 4;

/// Tempo of every dynamic Tacton in the one-dimensional sets.
pub const SET_TEMPO_MS: u32 = 100;

fn grid(pins: &[(usize, usize)]) -> Pattern {
    Pattern::with_pins(SIDE, SIDE, pins).expect("4x4 is a valid size")
}

pub(crate) fn blank() -> Pattern {
    Pattern::blank(SIDE, SIDE).expect("4x4 is a valid size")
}

fn turn(pattern: &Pattern, quarter_turns: usize) -> Pattern {
    (0..quarter_turns).fold(pattern.clone(), |p, _| p.rotate_cw())
}

/// Orients a radial base (drawn for N) or a diagonal base (drawn for NE).
fn orient(radial_north: &Pattern, diagonal_ne: &Pattern, d: Direction) -> Pattern {
    let base = if d.is_radial() {
        radial_north
    } else {
        diagonal_ne
    };
    turn(base, d.quarter_turns())
}

fn orient_frames(radial_north: &[Pattern], diagonal_ne: &[Pattern], d: Direction) -> Vec<Pattern> {
    let base = if d.is_radial() {
        radial_north
    } else {
        diagonal_ne
    };
    base.iter().map(|p| turn(p, d.quarter_turns())).collect()
}

fn row(r: usize) -> Vec<(usize, usize)> {
    (0..SIDE).map(|c| (r, c)).collect()
}

/// Pins with `col - row == k`, a line perpendicular to the NE direction.
fn anti_diagonal(k: isize) -> Vec<(usize, usize)> {
    (0..SIDE)
        .filter_map(|r| {
            let c = r as isize + k;
            (0..SIDE as isize).contains(&c).then_some((r, c as usize))
        })
        .collect()
}

/// Full edge line: the four pins on the named edge.
pub fn edge_line(d: Direction) -> Pattern {
    assert!(d.is_radial(), "edge lines exist for radial directions only");
    orient(&grid(&row(0)), &blank(), d)
}

/// Three-pin angle in the named corner.
pub fn corner_angle(d: Direction) -> Pattern {
    assert!(
        d.is_diagonal(),
        "corner angles exist for diagonal directions only"
    );
    orient(&blank(), &grid(&[(0, 2), (0, 3), (1, 3)]), d)
}

/// Edge row plus edge column meeting at the named corner (seven pins).
pub fn full_angle(d: Direction) -> Pattern {
    assert!(
        d.is_diagonal(),
        "full angles exist for diagonal directions only"
    );
    let ne: Vec<_> = row(0)
        .into_iter()
        .chain((1..SIDE).map(|r| (r, SIDE - 1)))
        .collect();
    orient(&blank(), &grid(&ne), d)
}

/// Two-pin marks: the centre pair of an edge, or a corner pin with its
/// inward diagonal neighbour.
pub fn two_pin(d: Direction) -> Pattern {
    orient(&grid(&[(0, 1), (0, 2)]), &grid(&[(0, 3), (1, 2)]), d)
}

/// Lines for radials, three-pin angles for diagonals.
pub fn set4_static(d: Direction) -> Pattern {
    if d.is_radial() {
        edge_line(d)
    } else {
        corner_angle(d)
    }
}

/// Direction layouts of the mixed sets: set-4 lines with full-length
/// diagonals.
pub fn mixed_direction(d: Direction) -> Pattern {
    if d.is_radial() {
        edge_line(d)
    } else {
        full_angle(d)
    }
}

/// Direction-by-size shapes of the multi-dimensional space.
pub fn static_directional(d: Direction, size: Size) -> Pattern {
    match (size, d.is_radial()) {
        (Size::Large, true) => edge_line(d),
        (Size::Large, false) => full_angle(d),
        (Size::Small, true) => two_pin(d),
        (Size::Small, false) => corner_angle(d),
    }
}

/// Centre 2x2 square used as a reference point.
pub fn centre_square() -> Pattern {
    grid(&[(1, 1), (1, 2), (2, 1), (2, 2)])
}

/// Dense arrowheads near the named side.
pub fn set6_static(d: Direction) -> Pattern {
    orient(
        &grid(&[(0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (1, 3)]),
        &grid(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        d,
    )
}

/// Outer-pin brackets.
pub fn set7_static(d: Direction) -> Pattern {
    orient(
        &grid(&[(0, 0), (0, 1), (0, 2), (0, 3), (1, 0), (1, 3)]),
        &grid(&[(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]),
        d,
    )
}

fn dynamic(patterns: Vec<Pattern>) -> Tacton {
    let frames = patterns.into_iter().map(|p| Frame::new(p, 1)).collect();
    Tacton::dynamic(frames, SET_TEMPO_MS).expect("catalog frames are well formed")
}

/// Radial sweep: the edge line travels from the opposite edge to the named
/// one (4 frames).
fn radial_sweep() -> Vec<Pattern> {
    (0..SIDE).rev().map(|r| grid(&row(r))).collect()
}

/// Set 3: equal frame counts. Diagonals sweep from the main diagonal into
/// the corner (4 frames).
pub fn set3_wave(d: Direction) -> Tacton {
    let diagonal: Vec<_> = (0..SIDE as isize)
        .map(|k| grid(&anti_diagonal(k)))
        .collect();
    dynamic(orient_frames(&radial_sweep(), &diagonal, d))
}

/// Set 9: the sweep crosses the whole array, followed by two blank frames.
/// Radials take 6 frames, diagonals 9.
pub fn set9_wave(d: Direction) -> Tacton {
    let mut radial = radial_sweep();
    radial.extend([blank(), blank()]);
    let mut diagonal: Vec<_> = (-(SIDE as isize - 1)..SIDE as isize)
        .map(|k| grid(&anti_diagonal(k)))
        .collect();
    diagonal.extend([blank(), blank()]);
    dynamic(orient_frames(&radial, &diagonal, d))
}

/// Set 5: a shape that grows while it moves, 6 frames for every direction.
pub fn set5_wave(d: Direction) -> Tacton {
    let radial = vec![
        grid(&[(3, 1), (3, 2)]),
        grid(&[(2, 1), (2, 2)]),
        grid(&row(1)),
        grid(&row(0)),
        blank(),
        blank(),
    ];
    let diagonal = vec![
        grid(&[(2, 1)]),
        grid(&[(1, 1), (1, 2), (2, 2)]),
        grid(&[(0, 2), (0, 3), (1, 3)]),
        grid(&[(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]),
        full_angle(Direction::NE),
        blank(),
    ];
    dynamic(orient_frames(&radial, &diagonal, d))
}

/// Set 8: set-3 radials with set-5 diagonals.
pub fn set8_wave(d: Direction) -> Tacton {
    if d.is_radial() {
        set3_wave(d)
    } else {
        set5_wave(d)
    }
}

/// Set 1: the two-pin marks, blinking.
pub fn set1_blink(d: Direction) -> Tacton {
    make_blinking(two_pin(d), BlinkRhythm::EVEN, SET_TEMPO_MS).expect("two-pin marks are not blank")
}
