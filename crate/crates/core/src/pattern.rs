//! Binary pin patterns.
//!
//! A [`Pattern`] is the instantaneous up/down state of every pin of a
//! rectangular array. Row 0 is the north edge of the array and column 0 the
//! west edge; every direction-dependent construction in this crate relies on
//! that orientation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Character for a raised pin in the text format.
pub const PIN_UP: char = 'o';
/// Character for a lowered pin in the text format.
pub const PIN_DOWN: char = '.';

/// Side length of the arrays addressed by the 16-bit wire encoding.
pub const MASK_SIDE: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("pattern text is empty")]
    Empty,
    #[error("ragged pattern: line {line} has {found} pins, expected {expected}")]
    Ragged {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("illegal character {ch:?} at line {line}, column {col}")]
    IllegalChar { ch: char, line: usize, col: usize },
    #[error("pattern dimensions must be positive, got {rows}x{cols}")]
    ZeroSize { rows: usize, cols: usize },
    #[error("a {rows}x{cols} pattern has no 16-bit encoding, only 4x4 does")]
    NotMaskable { rows: usize, cols: usize },
}

/// Row-major grid of pin states; `true` means the pin is up.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    rows: usize,
    cols: usize,
    pins: Vec<bool>,
}

impl Pattern {
    /// All pins down.
    pub fn blank(rows: usize, cols: usize) -> Result<Self, PatternError> {
        if rows == 0 || cols == 0 {
            return Err(PatternError::ZeroSize { rows, cols });
        }
        Ok(Self {
            rows,
            cols,
            pins: vec![false; rows * cols],
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self, PatternError> {
        let mut pattern = Self::blank(rows, cols)?;
        for r in 0..rows {
            for c in 0..cols {
                pattern.pins[r * cols + c] = f(r, c);
            }
        }
        Ok(pattern)
    }

    /// Builds a pattern with the listed `(row, col)` pins raised.
    ///
    /// Panics if a coordinate falls outside the array; intended for
    /// hard-coded shapes.
    pub fn with_pins(
        rows: usize,
        cols: usize,
        pins: &[(usize, usize)],
    ) -> Result<Self, PatternError> {
        let mut pattern = Self::blank(rows, cols)?;
        for &(r, c) in pins {
            pattern.set(r, c, true);
        }
        Ok(pattern)
    }

    /// Parses the line-oriented text format: one line per row, `o` for a
    /// raised pin and `.` for a lowered one. A single trailing newline is
    /// accepted.
    pub fn from_text(text: &str) -> Result<Self, PatternError> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        if body.is_empty() {
            return Err(PatternError::Empty);
        }
        let mut cols = None;
        let mut pins = Vec::new();
        let mut rows = 0;
        for (line_no, line) in body.split('\n').enumerate() {
            let mut width = 0;
            for (col, ch) in line.chars().enumerate() {
                match ch {
                    PIN_UP => pins.push(true),
                    PIN_DOWN => pins.push(false),
                    ch => {
                        return Err(PatternError::IllegalChar {
                            ch,
                            line: line_no,
                            col,
                        })
                    }
                }
                width += 1;
            }
            match cols {
                None if width == 0 => return Err(PatternError::Empty),
                None => cols = Some(width),
                Some(expected) if expected != width => {
                    return Err(PatternError::Ragged {
                        line: line_no,
                        expected,
                        found: width,
                    })
                }
                Some(_) => {}
            }
            rows += 1;
        }
        let cols = cols.unwrap_or_default();
        Ok(Self { rows, cols, pins })
    }

    /// Inverse of [`Pattern::from_text`]; rows joined by `\n`, no trailing
    /// newline.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.rows * (self.cols + 1));
        for r in 0..self.rows {
            if r > 0 {
                out.push('\n');
            }
            for c in 0..self.cols {
                out.push(if self.get(r, c) { PIN_UP } else { PIN_DOWN });
            }
        }
        out
    }

    /// Decodes a 16-bit mask into a 4x4 pattern. Bit `k` is the pin at row
    /// `k / 4`, column `k % 4`; bit 0 is the north-west pin.
    pub fn from_mask(mask: u16) -> Self {
        let pins = (0..MASK_SIDE * MASK_SIDE)
            .map(|k| mask & (1 << k) != 0)
            .collect();
        Self {
            rows: MASK_SIDE,
            cols: MASK_SIDE,
            pins,
        }
    }

    pub fn to_mask(&self) -> Result<u16, PatternError> {
        if self.rows != MASK_SIDE || self.cols != MASK_SIDE {
            return Err(PatternError::NotMaskable {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self
            .pins
            .iter()
            .enumerate()
            .filter(|(_, &up)| up)
            .fold(0u16, |mask, (k, _)| mask | (1 << k)))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(
            row < self.rows && col < self.cols,
            "pin ({row}, {col}) out of range"
        );
        self.pins[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, up: bool) {
        assert!(
            row < self.rows && col < self.cols,
            "pin ({row}, {col}) out of range"
        );
        self.pins[row * self.cols + col] = up;
    }

    /// Number of raised pins.
    pub fn count_up(&self) -> usize {
        self.pins.iter().filter(|&&up| up).count()
    }

    pub fn is_blank(&self) -> bool {
        self.pins.iter().all(|&up| !up)
    }

    /// Coordinates of raised pins in row-major order.
    pub fn raised(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pins
            .iter()
            .enumerate()
            .filter(|(_, &up)| up)
            .map(move |(i, _)| (i / self.cols, i % self.cols))
    }

    pub fn same_dims(&self, other: &Pattern) -> bool {
        self.dims() == other.dims()
    }

    /// Pin-wise OR. Panics on mismatched dimensions.
    pub fn union(&self, other: &Pattern) -> Pattern {
        assert!(self.same_dims(other), "union of mismatched patterns");
        Pattern {
            rows: self.rows,
            cols: self.cols,
            pins: self
                .pins
                .iter()
                .zip(&other.pins)
                .map(|(a, b)| *a || *b)
                .collect(),
        }
    }

    /// True when some pin is raised in both patterns.
    pub fn overlaps(&self, other: &Pattern) -> bool {
        self.same_dims(other) && self.pins.iter().zip(&other.pins).any(|(a, b)| *a && *b)
    }

    /// Number of pins whose state differs. Panics on mismatched dimensions.
    pub fn hamming(&self, other: &Pattern) -> usize {
        assert!(
            self.same_dims(other),
            "hamming distance of mismatched patterns"
        );
        self.pins
            .iter()
            .zip(&other.pins)
            .filter(|(a, b)| a != b)
            .count()
    }

    pub fn rotate_180(&self) -> Pattern {
        let mut pins = self.pins.clone();
        pins.reverse();
        Pattern {
            rows: self.rows,
            cols: self.cols,
            pins,
        }
    }

    /// Quarter turn clockwise: the north edge becomes the east edge.
    pub fn rotate_cw(&self) -> Pattern {
        let (rows, cols) = (self.cols, self.rows);
        let mut out = Pattern {
            rows,
            cols,
            pins: vec![false; rows * cols],
        };
        for (r, c) in self.raised() {
            out.set(c, self.rows - 1 - r, true);
        }
        out
    }

    /// Left-right reflection: the west edge becomes the east edge.
    pub fn mirror_horizontal(&self) -> Pattern {
        Pattern::from_fn(self.rows, self.cols, |r, c| self.get(r, self.cols - 1 - c))
            .expect("dimensions already validated")
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Pattern({}x{}: {:?})",
            self.rows,
            self.cols,
            self.to_text().replace('\n', "/")
        )
    }
}

impl FromStr for Pattern {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pattern::from_text(s)
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for Pattern {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Pattern::from_text(&text).map_err(serde::de::Error::custom)
    }
}
