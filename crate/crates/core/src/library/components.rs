use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::pattern::Pattern;
use crate::tacton::Tacton;

use super::direction::ParseLabelError;

/// Electric-circuit component shown at the local exploration level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CircuitComponentKind {
    Battery,
    Capacitor,
    Lamp,
    Resistor,
    Junction,
    Wire,
}

impl CircuitComponentKind {
    pub const ALL: [CircuitComponentKind; 6] = [
        CircuitComponentKind::Battery,
        CircuitComponentKind::Capacitor,
        CircuitComponentKind::Lamp,
        CircuitComponentKind::Resistor,
        CircuitComponentKind::Junction,
        CircuitComponentKind::Wire,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CircuitComponentKind::Battery => "battery",
            CircuitComponentKind::Capacitor => "capacitor",
            CircuitComponentKind::Lamp => "lamp",
            CircuitComponentKind::Resistor => "resistor",
            CircuitComponentKind::Junction => "junction",
            CircuitComponentKind::Wire => "wire",
        }
    }

    /// Default layout, drawn after the schematic symbol.
    pub fn default_pattern(self) -> Pattern {
        let text = match self {
            // long and short plate
            CircuitComponentKind::Battery => "....\noooo\n.oo.\n....",
            // two equal plates
            CircuitComponentKind::Capacitor => "o..o\no..o\no..o\no..o",
            CircuitComponentKind::Lamp => ".oo.\no..o\no..o\n.oo.",
            // zigzag
            CircuitComponentKind::Resistor => "....\n.o.o\no.o.\n....",
            // solder dot
            CircuitComponentKind::Junction => "....\n.oo.\n.oo.\n....",
            CircuitComponentKind::Wire => "....\noooo\n....\n....",
        };
        Pattern::from_text(text).expect("component layouts are well formed")
    }
}

impl fmt::Display for CircuitComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CircuitComponentKind {
    type Err = ParseLabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CircuitComponentKind::ALL
            .into_iter()
            .find(|k| k.label() == s)
            .ok_or_else(|| ParseLabelError {
                kind: "circuit component",
                value: s.to_owned(),
            })
    }
}

/// Static Tacton for a component, using the default layouts.
pub fn circuit_component(kind: CircuitComponentKind) -> Tacton {
    Tacton::Static(kind.default_pattern())
}
