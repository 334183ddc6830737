//! Pin-array Tactons: structured tactile messages for a small grid of
//! binary pins.
//!
//! - [`pattern`] and [`tacton`]: patterns, frames, static and dynamic
//!   Tactons, and the timeline that says what is on display at any instant.
//! - [`space`]: multi-dimensional Tacton spaces (direction × size × speed).
//! - [`library`]: the catalog of directional sets, the spaces built from
//!   them and the circuit-component Tactons.
//! - [`player`]: deterministic playback onto a device behind an injected
//!   clock.
//! - [`experiments`]: identification-experiment harness, confusion
//!   matrices and information transmission.
//! - [`guidance`]: maze and circuit worlds that emit direction cues.

pub mod experiments;
pub mod guidance;
pub mod library;
pub mod pattern;
pub mod player;
pub mod space;
pub mod tacton;

pub use library::{CircuitComponentKind, Direction, SetCatalog, SetId, Size, Speed};
pub use pattern::Pattern;
pub use space::{TactonSpace, ValueTuple};
pub use tacton::{make_blinking, BlinkRhythm, Frame, Tacton};
