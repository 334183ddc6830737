//! The catalog of directional Tacton sets, the multi-dimensional
//! direction/size/speed spaces and the circuit-component Tactons.

mod catalog;
mod components;
mod direction;
pub mod shapes;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use catalog::{CatalogEntry, DirectionFamily, EntryKind, SetCatalog};
pub use components::{circuit_component, CircuitComponentKind};
pub use direction::{speed_tempo, Direction, ParseLabelError, Size, Speed, SpeedTempos};
pub use shapes::{static_directional, SET_TEMPO_MS};

use crate::pattern::Pattern;
use crate::space::SpaceError;
use crate::tacton::{Frame, Tacton, TactonError};

#[derive(Debug, Error)]
pub enum LibraryError {
    #[error("unknown set {0:?}")]
    UnknownSet(String),
    #[error("{0} is not a wave set")]
    NotAWaveSet(SetId),
    #[error("{0} is not a mixed set")]
    NotAMixedSet(SetId),
    #[error("direction and reference patterns share raised pins")]
    Overlap,
    #[error("unknown catalog name {0:?}")]
    UnknownName(String),
    #[error("catalog entry {name:?}: {reason}")]
    BadEntry { name: String, reason: String },
    #[error("{family}: {first} and {second} have identical Tactons")]
    NotInjective {
        family: String,
        first: String,
        second: String,
    },
    #[error("catalog json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Tacton(#[from] TactonError),
}

/// How the Tactons of a set convey direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Static,
    Blinking,
    Wave,
    Mixed,
}

/// The one-dimensional directional sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SetId {
    Set1,
    Set2,
    Set3,
    Set4,
    Set5,
    Set6,
    Set7,
    Set8,
    Set9,
    Set10,
    Set10Prime,
    Set11,
    Set11Prime,
}

impl SetId {
    pub const ALL: [SetId; 13] = [
        SetId::Set1,
        SetId::Set2,
        SetId::Set3,
        SetId::Set4,
        SetId::Set5,
        SetId::Set6,
        SetId::Set7,
        SetId::Set8,
        SetId::Set9,
        SetId::Set10,
        SetId::Set10Prime,
        SetId::Set11,
        SetId::Set11Prime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SetId::Set1 => "set1",
            SetId::Set2 => "set2",
            SetId::Set3 => "set3",
            SetId::Set4 => "set4",
            SetId::Set5 => "set5",
            SetId::Set6 => "set6",
            SetId::Set7 => "set7",
            SetId::Set8 => "set8",
            SetId::Set9 => "set9",
            SetId::Set10 => "set10",
            SetId::Set10Prime => "set10prime",
            SetId::Set11 => "set11",
            SetId::Set11Prime => "set11prime",
        }
    }

    pub fn kind(self) -> FamilyKind {
        match self {
            SetId::Set1 => FamilyKind::Blinking,
            SetId::Set2 | SetId::Set4 | SetId::Set6 | SetId::Set7 => FamilyKind::Static,
            SetId::Set3 | SetId::Set5 | SetId::Set8 | SetId::Set9 => FamilyKind::Wave,
            SetId::Set10 | SetId::Set10Prime | SetId::Set11 | SetId::Set11Prime => {
                FamilyKind::Mixed
            }
        }
    }

    /// Sets whose layouts are inferred from sparse descriptions rather than
    /// from explicit construction rules.
    pub fn reconstructed(self) -> bool {
        matches!(
            self,
            SetId::Set1 | SetId::Set2 | SetId::Set5 | SetId::Set6 | SetId::Set7
        )
    }

    /// The sets experiments use unless told otherwise.
    pub const WELL_SPECIFIED: [SetId; 4] =
        [SetId::Set4, SetId::Set3, SetId::Set9, SetId::Set11Prime];
}

impl fmt::Display for SetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SetId {
    type Err = LibraryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SetId::ALL
            .into_iter()
            .find(|id| id.name() == s || id.name().replace("prime", "p") == s)
            .ok_or_else(|| LibraryError::UnknownSet(s.to_owned()))
    }
}

/// Sweeping-line Tactons of sets 3, 8 and 9.
pub fn wave(set: SetId, direction: Direction) -> Result<Tacton, LibraryError> {
    match set {
        SetId::Set3 => Ok(shapes::set3_wave(direction)),
        SetId::Set8 => Ok(shapes::set8_wave(direction)),
        SetId::Set9 => Ok(shapes::set9_wave(direction)),
        other => Err(LibraryError::NotAWaveSet(other)),
    }
}

/// Superimposes a direction pattern and a reference point, blinking one of
/// them (rhythm 1/1 at the set tempo) while the other stays raised.
pub fn mixed_tacton(
    direction: &Pattern,
    reference: &Pattern,
    blink_reference: bool,
) -> Result<Tacton, LibraryError> {
    if direction.overlaps(reference) {
        return Err(LibraryError::Overlap);
    }
    let both = direction.union(reference);
    let steady = if blink_reference {
        direction
    } else {
        reference
    };
    Ok(Tacton::dynamic(
        vec![Frame::new(both, 1), Frame::new(steady.clone(), 1)],
        SET_TEMPO_MS,
    )?)
}

/// Sets 10, 10′, 11 and 11′: a direction pattern with a centre-square or
/// opposite-direction reference point.
pub fn mixed(set: SetId, direction: Direction) -> Result<Tacton, LibraryError> {
    let dir = shapes::mixed_direction(direction);
    let (reference, blink_reference) = match set {
        SetId::Set10 => (shapes::centre_square(), false),
        SetId::Set10Prime => (shapes::centre_square(), true),
        SetId::Set11 => (shapes::two_pin(direction.opposite()), false),
        SetId::Set11Prime => (shapes::two_pin(direction.opposite()), true),
        other => return Err(LibraryError::NotAMixedSet(other)),
    };
    mixed_tacton(&dir, &reference, blink_reference)
}

/// Built-in Tacton of `set` for `direction`.
pub fn family_tacton(set: SetId, direction: Direction) -> Tacton {
    match set {
        SetId::Set1 => shapes::set1_blink(direction),
        SetId::Set2 => Tacton::Static(shapes::two_pin(direction)),
        SetId::Set4 => Tacton::Static(shapes::set4_static(direction)),
        SetId::Set6 => Tacton::Static(shapes::set6_static(direction)),
        SetId::Set7 => Tacton::Static(shapes::set7_static(direction)),
        SetId::Set3 | SetId::Set8 | SetId::Set9 => wave(set, direction).expect("wave set"),
        SetId::Set10 | SetId::Set10Prime | SetId::Set11 | SetId::Set11Prime => {
            mixed(set, direction).expect("built-in mixed layouts are disjoint")
        }
        SetId::Set5 => shapes::set5_wave(direction),
    }
}
