use std::collections::VecDeque;
use std::fmt;

use crate::library::Direction;

use super::GuidanceError;

/// `(row, col)`, row 0 at the top.
pub type Cell = (usize, usize);

/// Breadth-first tie-break: the first listed direction wins among equally
/// short first moves.
pub const DEFAULT_PRIORITY: [Direction; 4] =
    [Direction::N, Direction::E, Direction::S, Direction::W];

/// [`DEFAULT_PRIORITY`] reflected left-right, for mirrored mazes.
pub const MIRRORED_PRIORITY: [Direction; 4] =
    [Direction::N, Direction::W, Direction::S, Direction::E];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveOutcome {
    Moved,
    Blocked,
    Exited,
}

/// A grid maze with wall-blocked movement.
#[derive(Clone, PartialEq, Eq)]
pub struct MazeWorld {
    width: usize,
    height: usize,
    walls: Vec<bool>,
    start: Cell,
    exit: Cell,
    current: Cell,
}

impl fmt::Debug for MazeWorld {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MazeWorld")
            .field("width", &self.width)
            .field("height", &self.height)
            .field("start", &self.start)
            .field("exit", &self.exit)
            .field("current", &self.current)
            .finish_non_exhaustive()
    }
}

impl MazeWorld {
    /// Parses `#` wall, `.` floor, `S` start, `E` exit. The grid must be
    /// rectangular with exactly one start and one exit, and the exit must
    /// be reachable.
    pub fn parse(text: &str) -> Result<Self, GuidanceError> {
        let lines: Vec<&str> = text.lines().map(|l| l.trim_end_matches('\r')).collect();
        let width = lines.first().map_or(0, |l| l.chars().count());
        if width == 0 {
            return Err(GuidanceError::EmptyMaze);
        }
        let mut walls = Vec::with_capacity(width * lines.len());
        let (mut start, mut exit) = (None, None);
        for (r, line) in lines.iter().enumerate() {
            if line.chars().count() != width {
                return Err(GuidanceError::RaggedMaze { line: r });
            }
            for (c, ch) in line.chars().enumerate() {
                let slot = match ch {
                    'S' => &mut start,
                    'E' => &mut exit,
                    '#' | '.' => {
                        walls.push(ch == '#');
                        continue;
                    }
                    other => {
                        return Err(GuidanceError::MazeChar {
                            ch: other,
                            line: r,
                            col: c,
                        })
                    }
                };
                if slot.replace((r, c)).is_some() {
                    return Err(GuidanceError::DuplicateMarker(ch));
                }
                walls.push(false);
            }
        }
        let start = start.ok_or(GuidanceError::MissingMarker('S'))?;
        let exit = exit.ok_or(GuidanceError::MissingMarker('E'))?;
        let maze = Self {
            width,
            height: lines.len(),
            walls,
            start,
            exit,
            current: start,
        };
        if maze.distances_to_exit()[maze.index(start)].is_none() {
            return Err(GuidanceError::Unreachable);
        }
        Ok(maze)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in 0..self.height {
            for c in 0..self.width {
                out.push(if (r, c) == self.start {
                    'S'
                } else if (r, c) == self.exit {
                    'E'
                } else if self.is_wall((r, c)) {
                    '#'
                } else {
                    '.'
                });
            }
            out.push('\n');
        }
        out
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn start(&self) -> Cell {
        self.start
    }

    pub fn exit(&self) -> Cell {
        self.exit
    }

    pub fn current(&self) -> Cell {
        self.current
    }

    pub fn is_wall(&self, cell: Cell) -> bool {
        self.walls[self.index(cell)]
    }

    pub fn floor_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.height)
            .flat_map(move |r| (0..self.width).map(move |c| (r, c)))
            .filter(|&cell| !self.is_wall(cell))
    }

    /// Places the walker on a floor cell.
    pub fn set_current(&mut self, cell: Cell) -> Result<(), GuidanceError> {
        if cell.0 >= self.height || cell.1 >= self.width || self.is_wall(cell) {
            return Err(GuidanceError::NotFloor(cell));
        }
        self.current = cell;
        Ok(())
    }

    pub fn reset(&mut self) {
        self.current = self.start;
    }

    pub fn at_exit(&self) -> bool {
        self.current == self.exit
    }

    fn index(&self, (r, c): Cell) -> usize {
        r * self.width + c
    }

    /// Floor neighbour of `cell` one step towards `d`, if any.
    pub fn neighbour(&self, (r, c): Cell, d: Direction) -> Option<Cell> {
        let (dr, dc) = d.offset();
        let r = r.checked_add_signed(dr)?;
        let c = c.checked_add_signed(dc)?;
        (r < self.height && c < self.width && !self.is_wall((r, c))).then_some((r, c))
    }

    /// Breadth-first step counts from every cell to the exit; `None` for
    /// walls and cut-off cells.
    pub fn distances_to_exit(&self) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.walls.len()];
        let mut queue = VecDeque::from([self.exit]);
        dist[self.index(self.exit)] = Some(0);
        while let Some(cell) = queue.pop_front() {
            let d = dist[self.index(cell)].expect("queued cells have a distance");
            for dir in Direction::RADIALS {
                if let Some(next) = self.neighbour(cell, dir) {
                    let i = self.index(next);
                    if dist[i].is_none() {
                        dist[i] = Some(d + 1);
                        queue.push_back(next);
                    }
                }
            }
        }
        dist
    }

    pub fn distance_from(&self, cell: Cell) -> Option<usize> {
        self.distances_to_exit()[self.index(cell)]
    }

    /// First move of a shortest path to the exit, ties broken N > E > S > W.
    pub fn guidance_direction(&self) -> Result<Direction, GuidanceError> {
        self.guidance_direction_with(&DEFAULT_PRIORITY)
    }

    pub fn guidance_direction_with(
        &self,
        priority: &[Direction; 4],
    ) -> Result<Direction, GuidanceError> {
        if self.at_exit() {
            return Err(GuidanceError::AtExit);
        }
        self.cue_from(&self.distances_to_exit(), priority)
    }

    fn cue_from(
        &self,
        dist: &[Option<usize>],
        priority: &[Direction; 4],
    ) -> Result<Direction, GuidanceError> {
        if self.at_exit() {
            return Err(GuidanceError::AtExit);
        }
        let here = dist[self.index(self.current)].ok_or(GuidanceError::Unreachable)?;
        priority
            .iter()
            .copied()
            .find(|&d| {
                self.neighbour(self.current, d)
                    .is_some_and(|n| dist[self.index(n)] == Some(here - 1))
            })
            .ok_or(GuidanceError::Unreachable)
    }

    /// One step; walls and the outer edge block.
    pub fn step(&mut self, direction: Direction) -> MoveOutcome {
        assert!(direction.is_radial(), "maze moves are N, S, E or W");
        match self.neighbour(self.current, direction) {
            None => MoveOutcome::Blocked,
            Some(next) => {
                self.current = next;
                if next == self.exit {
                    MoveOutcome::Exited
                } else {
                    MoveOutcome::Moved
                }
            }
        }
    }

    /// Follows the guidance cue until the exit; returns the number of
    /// steps. Fails if a move is blocked or the walk exceeds the cell count.
    pub fn guided_walk(&mut self) -> Result<usize, GuidanceError> {
        self.guided_walk_with(&DEFAULT_PRIORITY)
            .map(|path| path.len())
    }

    /// Like [`MazeWorld::guided_walk`], returning the cue sequence.
    pub fn guided_walk_with(
        &mut self,
        priority: &[Direction; 4],
    ) -> Result<Vec<Direction>, GuidanceError> {
        let limit = self.width * self.height;
        let dist = self.distances_to_exit();
        let mut path = Vec::new();
        while !self.at_exit() {
            if path.len() >= limit {
                return Err(GuidanceError::WalkTooLong(limit));
            }
            let d = self.cue_from(&dist, priority)?;
            if self.step(d) == MoveOutcome::Blocked {
                return Err(GuidanceError::Blocked(self.current));
            }
            path.push(d);
        }
        Ok(path)
    }

    /// Left-right reflection, walker included.
    pub fn mirror(&self) -> MazeWorld {
        let flip = |(r, c): Cell| (r, self.width - 1 - c);
        let walls = (0..self.height)
            .flat_map(|r| (0..self.width).rev().map(move |c| (r, c)))
            .map(|cell| self.is_wall(cell))
            .collect();
        MazeWorld {
            width: self.width,
            height: self.height,
            walls,
            start: flip(self.start),
            exit: flip(self.exit),
            current: flip(self.current),
        }
    }
}
