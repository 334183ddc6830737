//! Guidance worlds: a grid maze that cues the next move towards the exit,
//! and a circuit diagram explored along its wires.

mod circuit;
mod maze;

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::library::{Direction, SetCatalog, SetId, SET_TEMPO_MS};
use crate::tacton::{Frame, Tacton, TactonError};

pub use circuit::{CircuitFile, CircuitNode, CircuitWorld};
pub use maze::{Cell, MazeWorld, MoveOutcome, DEFAULT_PRIORITY, MIRRORED_PRIORITY};

#[derive(Debug, Error)]
pub enum GuidanceError {
    #[error("maze is empty")]
    EmptyMaze,
    #[error("maze line {line} has a different width")]
    RaggedMaze { line: usize },
    #[error("unexpected {ch:?} in maze at line {line}, column {col}")]
    MazeChar { ch: char, line: usize, col: usize },
    #[error("maze has no {0:?}")]
    MissingMarker(char),
    #[error("maze has more than one {0:?}")]
    DuplicateMarker(char),
    #[error("exit is not reachable")]
    Unreachable,
    #[error("cell {0:?} is not floor")]
    NotFloor(Cell),
    #[error("already at the exit")]
    AtExit,
    #[error("guided move blocked at {0:?}")]
    Blocked(Cell),
    #[error("walk exceeded {0} steps")]
    WalkTooLong(usize),
    #[error("circuit has no nodes")]
    EmptyCircuit,
    #[error("nodes {0} and {1} share a position")]
    SharedPosition(usize, usize),
    #[error("unknown node {0}")]
    UnknownNode(usize),
    #[error("nodes {0} and {1} are not grid neighbours")]
    NotAdjacent(usize, usize),
    #[error("duplicate wire between {0} and {1}")]
    DuplicateEdge(usize, usize),
    #[error("circuit is not connected")]
    Disconnected,
    #[error("junction {0} has fewer than three wires")]
    ThinJunction(usize),
    #[error("node {0} has no wires")]
    Isolated(usize),
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: Box<GuidanceError>,
    },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("circuit json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Tacton(#[from] TactonError),
}

const MAZE_FILES: [(&str, &str); 12] = [
    ("m01", include_str!("../../data/mazes/m01.txt")),
    ("m02", include_str!("../../data/mazes/m02.txt")),
    ("m03", include_str!("../../data/mazes/m03.txt")),
    ("m04", include_str!("../../data/mazes/m04.txt")),
    ("m05", include_str!("../../data/mazes/m05.txt")),
    ("m06", include_str!("../../data/mazes/m06.txt")),
    ("m07", include_str!("../../data/mazes/m07.txt")),
    ("m08", include_str!("../../data/mazes/m08.txt")),
    ("m09", include_str!("../../data/mazes/m09.txt")),
    ("m10", include_str!("../../data/mazes/m10.txt")),
    ("m11", include_str!("../../data/mazes/m11.txt")),
    ("m12", include_str!("../../data/mazes/m12.txt")),
];

const CIRCUIT_FILES: [(&str, &str); 3] = [
    (
        "parallel_lamps",
        include_str!("../../data/circuits/parallel_lamps.json"),
    ),
    (
        "rc_branch",
        include_str!("../../data/circuits/rc_branch.json"),
    ),
    (
        "series_lamp",
        include_str!("../../data/circuits/series_lamp.json"),
    ),
];

/// The bundled mazes by name.
pub fn bundled_mazes() -> Vec<(&'static str, MazeWorld)> {
    MAZE_FILES
        .iter()
        .map(|&(name, text)| (name, MazeWorld::parse(text).expect("bundled maze is valid")))
        .collect()
}

/// The bundled circuits by name.
pub fn bundled_circuits() -> Vec<(&'static str, CircuitWorld)> {
    CIRCUIT_FILES
        .iter()
        .map(|&(name, text)| {
            (
                name,
                CircuitWorld::from_json(text).expect("bundled circuit is valid"),
            )
        })
        .collect()
}

fn load_dir<T>(
    dir: &Path,
    extension: &str,
    parse: impl Fn(&str) -> Result<T, GuidanceError>,
) -> Result<Vec<(String, T)>, GuidanceError> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    paths.retain(|p| p.extension().is_some_and(|e| e == extension));
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let wrap = |e: GuidanceError| GuidanceError::File {
                path: p.display().to_string(),
                source: Box::new(e),
            };
            let text = std::fs::read_to_string(&p).map_err(|e| wrap(e.into()))?;
            let stem = p
                .file_stem()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned();
            Ok((stem, parse(&text).map_err(wrap)?))
        })
        .collect()
}

/// Every `*.txt` maze in `dir`, sorted by file name.
pub fn load_mazes(dir: &Path) -> Result<Vec<(String, MazeWorld)>, GuidanceError> {
    load_dir(dir, "txt", MazeWorld::parse)
}

/// Every `*.json` circuit in `dir`, sorted by file name.
pub fn load_circuits(dir: &Path) -> Result<Vec<(String, CircuitWorld)>, GuidanceError> {
    load_dir(dir, "json", CircuitWorld::from_json)
}

/// Which directional family cues maze moves.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MazeCues {
    #[default]
    StaticSet4Radials,
    WaveSet3Radials,
}

impl MazeCues {
    pub fn set(self) -> SetId {
        match self {
            MazeCues::StaticSet4Radials => SetId::Set4,
            MazeCues::WaveSet3Radials => SetId::Set3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuidanceConfig {
    #[serde(default)]
    pub maze_cues: MazeCues,
    /// Frame period of the available-directions Tacton.
    #[serde(default = "default_tempo")]
    pub directions_tempo_ms: u32,
}

fn default_tempo() -> u32 {
    SET_TEMPO_MS
}

impl Default for GuidanceConfig {
    fn default() -> Self {
        Self {
            maze_cues: MazeCues::default(),
            directions_tempo_ms: SET_TEMPO_MS,
        }
    }
}

/// Turns world state into Tactons using a catalog.
#[derive(Debug, Clone)]
pub struct Guide {
    catalog: SetCatalog,
    config: GuidanceConfig,
}

impl Guide {
    pub fn new(catalog: SetCatalog, config: GuidanceConfig) -> Self {
        Self { catalog, config }
    }

    pub fn catalog(&self) -> &SetCatalog {
        &self.catalog
    }

    pub fn config(&self) -> GuidanceConfig {
        self.config
    }

    pub fn direction_cue(&self, direction: Direction) -> &Tacton {
        self.catalog
            .family(self.config.maze_cues.set())
            .tacton(direction)
    }

    /// Cue for the next move from the walker's cell.
    pub fn maze_cue(&self, maze: &MazeWorld) -> Result<(Direction, Tacton), GuidanceError> {
        let d = maze.guidance_direction()?;
        Ok((d, self.direction_cue(d).clone()))
    }

    /// Cycles through the static set-4 pattern of every wire leaving the
    /// cursor, N, E, S, W order, one tempo unit each.
    pub fn available_directions_tacton(
        &self,
        circuit: &CircuitWorld,
    ) -> Result<Tacton, GuidanceError> {
        let dirs = circuit.available_directions();
        if dirs.is_empty() {
            return Err(GuidanceError::Isolated(circuit.cursor()));
        }
        let family = self.catalog.family(SetId::Set4);
        let frames = dirs
            .into_iter()
            .map(|d| Frame::new(family.tacton(d).frame_at(0).clone(), 1))
            .collect();
        Ok(Tacton::dynamic(frames, self.config.directions_tempo_ms)?)
    }

    /// Component Tacton of the node under the cursor.
    pub fn local_tacton(&self, circuit: &CircuitWorld) -> &Tacton {
        self.catalog.component(circuit.cursor_node().kind)
    }
}

impl Default for Guide {
    fn default() -> Self {
        Self::new(SetCatalog::builtin(), GuidanceConfig::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library::CircuitComponentKind;

    const CIRCUIT: &str = r#"{
        "nodes": [
            {"x": 0, "y": 0, "kind": "battery"},
            {"x": 1, "y": 0, "kind": "junction"},
            {"x": 2, "y": 0, "kind": "lamp"},
            {"x": 1, "y": 1, "kind": "resistor"},
            {"x": 1, "y": -1, "kind": "wire"}
        ],
        "edges": [[0, 1], [1, 2], [1, 3], [1, 4]]
    }"#;

    #[test]
    fn available_directions_in_clockwise_order() {
        let guide = Guide::default();
        let mut c = CircuitWorld::from_json(CIRCUIT).unwrap();
        c.set_cursor(1).unwrap();
        let t = guide.available_directions_tacton(&c).unwrap();
        let set4 = guide.catalog().family(SetId::Set4);
        assert_eq!(t.tempo_ms(), Some(100));
        assert_eq!(t.cycle_length_ms(), Some(400));
        for (i, d) in Direction::CLOCKWISE_RADIALS.into_iter().enumerate() {
            assert_eq!(t.frame_at(i as u64 * 100), set4.tacton(d).frame_at(0));
        }
    }

    #[test]
    fn local_tacton_is_component() {
        let guide = Guide::default();
        let mut c = CircuitWorld::from_json(CIRCUIT).unwrap();
        c.move_cursor(Direction::E);
        c.move_cursor(Direction::E);
        assert_eq!(
            guide.local_tacton(&c),
            guide.catalog().component(CircuitComponentKind::Lamp)
        );
    }

    #[test]
    fn isolated_node_has_no_cue() {
        let c = CircuitWorld::from_json(
            r#"{"nodes": [{"x": 0, "y": 0, "kind": "lamp"}], "edges": []}"#,
        )
        .unwrap();
        assert!(matches!(
            Guide::default().available_directions_tacton(&c),
            Err(GuidanceError::Isolated(0))
        ));
    }

    #[test]
    fn maze_cue_uses_configured_family() {
        let maze = MazeWorld::parse("#####\n#S.E#\n#####\n").unwrap();
        let wave = Guide::new(
            SetCatalog::builtin(),
            GuidanceConfig {
                maze_cues: MazeCues::WaveSet3Radials,
                ..Default::default()
            },
        );
        let (d, t) = wave.maze_cue(&maze).unwrap();
        assert_eq!(d, Direction::E);
        assert_eq!(t.frames().unwrap().len(), 4);
        let (_, t) = Guide::default().maze_cue(&maze).unwrap();
        assert!(t.is_static());
    }

    #[test]
    fn bundled_worlds_load() {
        assert_eq!(bundled_mazes().len(), 12);
        assert_eq!(bundled_circuits().len(), 3);
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/mazes");
        let from_disk = load_mazes(&dir).unwrap();
        assert_eq!(from_disk.len(), 12);
        assert_eq!(from_disk[0].1, bundled_mazes()[0].1);
    }

    #[test]
    fn config_serde_names() {
        let c: GuidanceConfig =
            serde_json::from_str(r#"{"maze_cues": "wave_set3_radials"}"#).unwrap();
        assert_eq!(c.maze_cues, MazeCues::WaveSet3Radials);
        assert_eq!(c.directions_tempo_ms, 100);
    }
}
