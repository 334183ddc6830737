use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::library::{CircuitComponentKind, Direction};

use super::GuidanceError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitNode {
    /// Column; grows east.
    pub x: i64,
    /// Row; grows south.
    pub y: i64,
    pub kind: CircuitComponentKind,
}

/// On-disk form: `{"nodes": [{"x", "y", "kind"}], "edges": [[a, b]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitFile {
    pub nodes: Vec<CircuitNode>,
    pub edges: Vec<[usize; 2]>,
}

/// A circuit laid out on a grid, explored with a cursor that moves along
/// wires only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitWorld {
    nodes: Vec<CircuitNode>,
    links: Vec<BTreeMap<Direction, usize>>,
    cursor: usize,
}

impl CircuitWorld {
    /// Checks that every edge joins grid-adjacent nodes, that the graph is
    /// connected and that junctions meet at least three wires.
    pub fn new(file: CircuitFile) -> Result<Self, GuidanceError> {
        let CircuitFile { nodes, edges } = file;
        if nodes.is_empty() {
            return Err(GuidanceError::EmptyCircuit);
        }
        for (i, a) in nodes.iter().enumerate() {
            if let Some(j) = nodes[..i].iter().position(|b| (b.x, b.y) == (a.x, a.y)) {
                return Err(GuidanceError::SharedPosition(j, i));
            }
        }
        let mut links = vec![BTreeMap::new(); nodes.len()];
        for &[a, b] in &edges {
            if a >= nodes.len() || b >= nodes.len() {
                return Err(GuidanceError::UnknownNode(a.max(b)));
            }
            let dir = step_between(&nodes[a], &nodes[b]).ok_or(GuidanceError::NotAdjacent(a, b))?;
            if links[a].insert(dir, b).is_some() || links[b].insert(dir.opposite(), a).is_some() {
                return Err(GuidanceError::DuplicateEdge(a, b));
            }
        }
        let world = Self {
            nodes,
            links,
            cursor: 0,
        };
        if world.reachable_from(0).iter().any(|seen| !seen) {
            return Err(GuidanceError::Disconnected);
        }
        for (i, node) in world.nodes.iter().enumerate() {
            if node.kind == CircuitComponentKind::Junction && world.links[i].len() < 3 {
                return Err(GuidanceError::ThinJunction(i));
            }
        }
        Ok(world)
    }

    pub fn from_json(text: &str) -> Result<Self, GuidanceError> {
        Self::new(serde_json::from_str(text)?)
    }

    pub fn to_file(&self) -> CircuitFile {
        let mut edges = Vec::new();
        for (a, links) in self.links.iter().enumerate() {
            edges.extend(links.values().filter(|&&b| a < b).map(|&b| [a, b]));
        }
        CircuitFile {
            nodes: self.nodes.clone(),
            edges,
        }
    }

    fn reachable_from(&self, origin: usize) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        seen[origin] = true;
        let mut queue = VecDeque::from([origin]);
        while let Some(n) = queue.pop_front() {
            for &m in self.links[n].values() {
                if !std::mem::replace(&mut seen[m], true) {
                    queue.push_back(m);
                }
            }
        }
        seen
    }

    pub fn nodes(&self) -> &[CircuitNode] {
        &self.nodes
    }

    pub fn cursor(&self) -> usize {
        self.cursor
    }

    pub fn cursor_node(&self) -> &CircuitNode {
        &self.nodes[self.cursor]
    }

    pub fn set_cursor(&mut self, node: usize) -> Result<(), GuidanceError> {
        if node >= self.nodes.len() {
            return Err(GuidanceError::UnknownNode(node));
        }
        self.cursor = node;
        Ok(())
    }

    pub fn degree(&self, node: usize) -> usize {
        self.links[node].len()
    }

    /// Wires leaving the cursor, in N, E, S, W order.
    pub fn available_directions(&self) -> Vec<Direction> {
        Direction::CLOCKWISE_RADIALS
            .into_iter()
            .filter(|d| self.links[self.cursor].contains_key(d))
            .collect()
    }

    /// Follows the wire towards `direction`; returns the new node, or
    /// `None` (cursor unchanged) if no wire leaves that way.
    pub fn move_cursor(&mut self, direction: Direction) -> Option<usize> {
        let next = *self.links[self.cursor].get(&direction)?;
        self.cursor = next;
        Some(next)
    }
}

fn step_between(a: &CircuitNode, b: &CircuitNode) -> Option<Direction> {
    let delta = (b.y - a.y, b.x - a.x);
    Direction::RADIALS.into_iter().find(|d| {
        let (dr, dc) = d.offset();
        (dr as i64, dc as i64) == delta
    })
}
