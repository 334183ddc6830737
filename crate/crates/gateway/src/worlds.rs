use std::collections::BTreeMap;
use std::path::Path;

use tacton::guidance::{
    bundled_circuits, bundled_mazes, load_circuits, load_mazes, CircuitWorld, GuidanceError,
    MazeWorld,
};

/// Named mazes and circuits available to sessions.
#[derive(Debug, Clone, Default)]
pub struct Worlds {
    mazes: BTreeMap<String, MazeWorld>,
    circuits: BTreeMap<String, CircuitWorld>,
}

impl Worlds {
    pub fn bundled() -> Self {
        Self {
            mazes: bundled_mazes()
                .into_iter()
                .map(|(n, m)| (n.to_owned(), m))
                .collect(),
            circuits: bundled_circuits()
                .into_iter()
                .map(|(n, c)| (n.to_owned(), c))
                .collect(),
        }
    }

    /// Bundled worlds plus `dir/mazes/*.txt` and `dir/circuits/*.json`;
    /// files override bundled worlds of the same name.
    pub fn with_dir(dir: &Path) -> Result<Self, GuidanceError> {
        let mut worlds = Self::bundled();
        let mazes = dir.join("mazes");
        if mazes.is_dir() {
            worlds.mazes.extend(load_mazes(&mazes)?);
        }
        let circuits = dir.join("circuits");
        if circuits.is_dir() {
            worlds.circuits.extend(load_circuits(&circuits)?);
        }
        Ok(worlds)
    }

    pub fn maze(&self, name: &str, mirrored: bool) -> Option<MazeWorld> {
        let maze = self.mazes.get(name)?;
        Some(if mirrored {
            maze.mirror()
        } else {
            maze.clone()
        })
    }

    pub fn circuit(&self, name: &str) -> Option<CircuitWorld> {
        self.circuits.get(name).cloned()
    }

    pub fn maze_names(&self) -> Vec<String> {
        self.mazes.keys().cloned().collect()
    }

    pub fn circuit_names(&self) -> Vec<String> {
        self.circuits.keys().cloned().collect()
    }
}
