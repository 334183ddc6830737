use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown {kind} {value:?}")]
pub struct ParseLabelError {
    pub kind: &'static str,
    pub value: String,
}

/// One of the eight compass directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    N,
    S,
    E,
    W,
    NE,
    NW,
    SE,
    SW,
}

impl Direction {
    /// Catalog order: the four radials, then the four diagonals.
    pub const ALL: [Direction; 8] = [
        Direction::N,
        Direction::S,
        Direction::E,
        Direction::W,
        Direction::NE,
        Direction::NW,
        Direction::SE,
        Direction::SW,
    ];

    pub const RADIALS: [Direction; 4] = [Direction::N, Direction::S, Direction::E, Direction::W];

    /// Clockwise from north; neighbours in this ring are adjacent directions.
    pub const COMPASS: [Direction; 8] = [
        Direction::N,
        Direction::NE,
        Direction::E,
        Direction::SE,
        Direction::S,
        Direction::SW,
        Direction::W,
        Direction::NW,
    ];

    /// Radials clockwise from north.
    pub const CLOCKWISE_RADIALS: [Direction; 4] =
        [Direction::N, Direction::E, Direction::S, Direction::W];

    pub fn is_radial(self) -> bool {
        matches!(
            self,
            Direction::N | Direction::S | Direction::E | Direction::W
        )
    }

    pub fn is_diagonal(self) -> bool {
        !self.is_radial()
    }

    pub fn opposite(self) -> Direction {
        use Direction::*;
        match self {
            N => S,
            S => N,
            E => W,
            W => E,
            NE => SW,
            SW => NE,
            NW => SE,
            SE => NW,
        }
    }

    /// Left-right reflection: east and west swap, north and south stay.
    pub fn mirrored(self) -> Direction {
        use Direction::*;
        match self {
            E => W,
            W => E,
            NE => NW,
            NW => NE,
            SE => SW,
            SW => SE,
            d => d,
        }
    }

    /// `(row, col)` step; row grows southwards, col eastwards.
    pub fn offset(self) -> (isize, isize) {
        use Direction::*;
        match self {
            N => (-1, 0),
            S => (1, 0),
            E => (0, 1),
            W => (0, -1),
            NE => (-1, 1),
            NW => (-1, -1),
            SE => (1, 1),
            SW => (1, -1),
        }
    }

    /// Clockwise quarter turns from the family base (N for radials, NE for
    /// diagonals).
    pub(crate) fn quarter_turns(self) -> usize {
        use Direction::*;
        match self {
            N | NE => 0,
            E | SE => 1,
            S | SW => 2,
            W | NW => 3,
        }
    }

    pub fn label(self) -> &'static str {
        use Direction::*;
        match self {
            N => "N",
            S => "S",
            E => "E",
            W => "W",
            NE => "NE",
            NW => "NW",
            SE => "SE",
            SW => "SW",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Direction {
    type Err = ParseLabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Direction::ALL
            .into_iter()
            .find(|d| d.label() == s)
            .ok_or_else(|| ParseLabelError {
                kind: "direction",
                value: s.to_owned(),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Size {
    Small,
    Large,
}

impl Size {
    pub const ALL: [Size; 2] = [Size::Small, Size::Large];

    pub fn label(self) -> &'static str {
        match self {
            Size::Small => "small",
            Size::Large => "large",
        }
    }
}

impl fmt::Display for Size {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Size {
    type Err = ParseLabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Size::ALL
            .into_iter()
            .find(|v| v.label() == s)
            .ok_or_else(|| ParseLabelError {
                kind: "size",
                value: s.to_owned(),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Speed {
    Slow,
    Medium,
    Fast,
}

impl Speed {
    pub const ALL: [Speed; 3] = [Speed::Slow, Speed::Medium, Speed::Fast];

    pub fn label(self) -> &'static str {
        match self {
            Speed::Slow => "slow",
            Speed::Medium => "medium",
            Speed::Fast => "fast",
        }
    }
}

impl fmt::Display for Speed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Speed {
    type Err = ParseLabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Speed::ALL
            .into_iter()
            .find(|v| v.label() == s)
            .ok_or_else(|| ParseLabelError {
                kind: "speed",
                value: s.to_owned(),
            })
    }
}

/// Blink tempo for each speed label, in milliseconds per duration unit.
///
/// The default is the literal published mapping (slow 40, medium 200,
/// fast 500). Note that 40 ms per frame is the quickest blink of the three;
/// supply another mapping if the labels should follow perceived speed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpeedTempos {
    pub slow: u32,
    pub medium: u32,
    pub fast: u32,
}

impl Default for SpeedTempos {
    fn default() -> Self {
        Self {
            slow: 40,
            medium: 200,
            fast: 500,
        }
    }
}

impl SpeedTempos {
    pub fn tempo_ms(&self, speed: Speed) -> u32 {
        match speed {
            Speed::Slow => self.slow,
            Speed::Medium => self.medium,
            Speed::Fast => self.fast,
        }
    }
}

/// Tempo for a speed label under the default mapping.
pub fn speed_tempo(speed: Speed) -> u32 {
    SpeedTempos::default().tempo_ms(speed)
}
