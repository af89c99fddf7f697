//! Graph distance and i-cell distance.

use std::collections::VecDeque;

use crate::complex::{DiscreteSpace, VertexId};
use crate::error::{input, precondition, Result};

/// Distance oracle with adjacency precomputed for every level. `None` means
/// unreachable.
#[derive(Debug, Clone)]
pub struct CellMetrics<'a> {
    space: &'a DiscreteSpace,
    /// `cell_adj[i][c]`: i-cells sharing an (i-1)-cell with i-cell `c`.
    cell_adj: Vec<Vec<Vec<usize>>>,
}

/// First disagreement found by [`CellMetrics::verify_distance_equality`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceMismatch {
    pub x: VertexId,
    pub y: VertexId,
    pub level: usize,
    pub graph: Option<usize>,
    pub cell: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceReport {
    pub pairs_checked: usize,
    pub mismatch: Option<DistanceMismatch>,
}

impl<'a> CellMetrics<'a> {
    pub fn new(space: &'a DiscreteSpace) -> Self {
        let mut cell_adj = vec![Vec::new(), Vec::new()];
        for i in 2..=space.top_dim() {
            let cells = space.cells(i);
            let mut adj = vec![Vec::new(); cells.len()];
            for (c, cell) in cells.iter().enumerate() {
                let mut nb: Vec<usize> = cell
                    .boundary()
                    .iter()
                    .flat_map(|&f| space.cofaces(crate::CellId::new(i - 1, f)).iter().copied())
                    .filter(|&o| o != c)
                    .collect();
                nb.sort_unstable();
                nb.dedup();
                adj[c] = nb;
            }
            cell_adj.push(adj);
        }
        CellMetrics { space, cell_adj }
    }

    pub fn space(&self) -> &'a DiscreteSpace {
        self.space
    }

    /// Edge-path length between two vertices.
    pub fn graph_distance(&self, x: VertexId, y: VertexId) -> Result<Option<usize>> {
        self.space.check_vertex(x)?;
        self.space.check_vertex(y)?;
        Ok(self.distances_from(x, 1)?[y])
    }

    /// Fewest i-cells in a chain from a cell holding `x` to a cell holding
    /// `y`, consecutive cells sharing an (i-1)-cell. Level 1 is the graph
    /// distance.
    pub fn k_cell_distance(&self, x: VertexId, y: VertexId, level: usize) -> Result<Option<usize>> {
        self.space.check_vertex(y)?;
        Ok(self.distances_from(x, level)?[y])
    }

    /// Distances at one level from `x` to every vertex.
    pub fn distances_from(&self, x: VertexId, level: usize) -> Result<Vec<Option<usize>>> {
        self.space.check_vertex(x)?;
        let n = self.space.num_vertices();
        let mut dist = vec![None; n];
        dist[x] = Some(0);
        if level == 0 || level > self.space.top_dim() {
            return input(format!("level {level} outside 1..={}", self.space.top_dim()));
        }
        if level == 1 {
            let mut queue = VecDeque::from([x]);
            while let Some(v) = queue.pop_front() {
                let d = dist[v].unwrap();
                for &w in self.space.neighbors(v) {
                    if dist[w].is_none() {
                        dist[w] = Some(d + 1);
                        queue.push_back(w);
                    }
                }
            }
            return Ok(dist);
        }
        let cells = self.space.cells(level);
        let mut cdist: Vec<Option<usize>> = vec![None; cells.len()];
        let mut queue = VecDeque::new();
        for &c in self.space.cells_containing(x, level) {
            cdist[c] = Some(1);
            queue.push_back(c);
        }
        while let Some(c) = queue.pop_front() {
            let d = cdist[c].unwrap();
            for &o in &self.cell_adj[level][c] {
                if cdist[o].is_none() {
                    cdist[o] = Some(d + 1);
                    queue.push_back(o);
                }
            }
        }
        for (c, cell) in cells.iter().enumerate() {
            if let Some(d) = cdist[c] {
                for &v in cell.vertices() {
                    if dist[v].is_none_or(|old| d < old) {
                        dist[v] = Some(d);
                    }
                }
            }
        }
        Ok(dist)
    }

    /// Compares graph distance with every higher level over all vertex pairs.
    /// Only meaningful on triangulated spaces.
    pub fn verify_distance_equality(&self) -> Result<DistanceReport> {
        if !self.space.is_triangulated() {
            return precondition("distance equality needs a triangulated space");
        }
        let n = self.space.num_vertices();
        let mut pairs_checked = 0;
        for x in 0..n {
            let graph = self.distances_from(x, 1)?;
            for level in 2..=self.space.top_dim() {
                let cell = self.distances_from(x, level)?;
                for y in 0..n {
                    pairs_checked += 1;
                    if graph[y] != cell[y] {
                        let mismatch = DistanceMismatch { x, y, level, graph: graph[y], cell: cell[y] };
                        return Ok(DistanceReport { pairs_checked, mismatch: Some(mismatch) });
                    }
                }
            }
        }
        Ok(DistanceReport { pairs_checked, mismatch: None })
    }
}
