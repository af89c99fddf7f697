//! Discrete spaces: a graph plus per-dimension registries of cells.

mod builder;
mod chain;
mod query;

pub use builder::SpaceBuilder;
pub use chain::CellChain;
pub use query::{CycleOrientation, RegularityReport, RegularityViolation, Subcomplex};

use std::collections::{BTreeSet, HashMap};

pub type VertexId = usize;

/// Identity of a cell: its dimension plus its index in that dimension's
/// registry. For dimension 0 the index is the vertex id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellId {
    pub dim: usize,
    pub index: usize,
}

impl CellId {
    pub fn new(dim: usize, index: usize) -> Self {
        CellId { dim, index }
    }

    pub fn vertex(v: VertexId) -> Self {
        CellId { dim: 0, index: v }
    }
}

/// One i-cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub(crate) dim: usize,
    pub(crate) vertices: Vec<VertexId>,
    pub(crate) boundary: Vec<usize>,
    /// Oriented boundary walk of a 2-cell; empty for every other dimension.
    pub(crate) cycle: Vec<VertexId>,
}

impl Cell {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sorted vertex ids.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Indices of the boundary cells in dimension `dim - 1`. For a 2-cell the
    /// edges are listed in the order of the oriented boundary walk.
    pub fn boundary(&self) -> &[usize] {
        &self.boundary
    }

    /// The oriented boundary walk of a 2-cell (reference orientation).
    pub fn cycle(&self) -> &[VertexId] {
        &self.cycle
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// The graph G together with its cell registries U_2..U_k.
///
/// Immutable after construction; build one with [`SpaceBuilder`].
#[derive(Debug, Clone)]
pub struct DiscreteSpace {
    cells: Vec<Vec<Cell>>,
    lookup: Vec<HashMap<Vec<VertexId>, usize>>,
    cofaces: Vec<Vec<Vec<usize>>>,
    incidence: Vec<Vec<Vec<usize>>>,
    neighbors: Vec<Vec<VertexId>>,
    oriented: Option<bool>,
}

impl PartialEq for DiscreteSpace {
    fn eq(&self, other: &Self) -> bool {
        self.cells == other.cells
    }
}

impl Eq for DiscreteSpace {}

impl DiscreteSpace {
    pub(crate) fn from_parts(cells: Vec<Vec<Cell>>) -> Self {
        let n = cells[0].len();
        let top = cells.len() - 1;
        let mut lookup = Vec::with_capacity(top + 1);
        let mut cofaces: Vec<Vec<Vec<usize>>> = Vec::with_capacity(top + 1);
        let mut incidence: Vec<Vec<Vec<usize>>> = Vec::with_capacity(top + 1);
        for level in &cells {
            let mut map = HashMap::with_capacity(level.len());
            let mut inc = vec![Vec::new(); n];
            for (i, c) in level.iter().enumerate() {
                map.insert(c.vertices.clone(), i);
                for &v in &c.vertices {
                    inc[v].push(i);
                }
            }
            lookup.push(map);
            incidence.push(inc);
            cofaces.push(vec![Vec::new(); level.len()]);
        }
        for d in 1..=top {
            for (i, c) in cells[d].iter().enumerate() {
                for &b in &c.boundary {
                    cofaces[d - 1][b].push(i);
                }
            }
        }
        let mut neighbors = vec![Vec::new(); n];
        if top >= 1 {
            for e in &cells[1] {
                neighbors[e.vertices[0]].push(e.vertices[1]);
                neighbors[e.vertices[1]].push(e.vertices[0]);
            }
        }
        for nb in &mut neighbors {
            nb.sort_unstable();
        }
        let mut space = DiscreteSpace { cells, lookup, cofaces, incidence, neighbors, oriented: None };
        space.oriented = space.compute_orientation();
        space
    }

    pub fn num_vertices(&self) -> usize {
        self.cells[0].len()
    }

    /// The highest dimension with a registry (k).
    pub fn top_dim(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self, dim: usize) -> &[Cell] {
        self.cells.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn num_cells(&self, dim: usize) -> usize {
        self.cells(dim).len()
    }

    pub fn cell(&self, id: CellId) -> &Cell {
        &self.cells[id.dim][id.index]
    }

    pub fn get_cell(&self, id: CellId) -> Option<&Cell> {
        self.cells.get(id.dim).and_then(|c| c.get(id.index))
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.cells(1).iter().map(|e| (e.vertices[0], e.vertices[1]))
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<usize> {
        if u == v || self.top_dim() < 1 {
            return None;
        }
        let key = if u < v { vec![u, v] } else { vec![v, u] };
        self.lookup[1].get(&key).copied()
    }

    /// Finds the cell of dimension `dim` with exactly this vertex set.
    pub fn find_cell(&self, dim: usize, vertices: &[VertexId]) -> Option<usize> {
        let mut key = vertices.to_vec();
        key.sort_unstable();
        key.dedup();
        self.lookup.get(dim)?.get(&key).copied()
    }

    /// Cells of dimension `dim + 1` whose boundary contains the given cell.
    pub fn cofaces(&self, id: CellId) -> &[usize] {
        self.cofaces.get(id.dim).and_then(|c| c.get(id.index)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Indices of all `dim`-cells containing vertex `v`.
    pub fn cells_containing(&self, v: VertexId, dim: usize) -> &[usize] {
        self.incidence.get(dim).and_then(|c| c.get(v)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.neighbors[v]
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> crate::Result<()> {
        if v < self.num_vertices() {
            Ok(())
        } else {
            crate::error::input(format!("unknown vertex {v}"))
        }
    }

    /// Every i-cell has exactly i + 1 vertices.
    pub fn is_triangulated(&self) -> bool {
        (1..=self.top_dim()).all(|d| self.cells(d).iter().all(|c| c.vertices.len() == d + 1))
    }

    /// Whether two vertices lie in a common cell of positive dimension
    /// (distance at most one when a cell is read as a complete graph).
    pub fn share_cell(&self, u: VertexId, v: VertexId) -> bool {
        u == v
            || (1..=self.top_dim())
                .any(|d| self.cells_containing(u, d).iter().any(|&c| self.cells[d][c].contains_vertex(v)))
    }

    /// Reference orientation status of a 2-dimensional space: `Some(true)`
    /// when every interior edge is traversed in opposite directions by its
    /// two 2-cells, `Some(false)` when not, and `None` when the space is not
    /// a surface (top dimension other than 2 or an edge in 3+ faces).
    pub fn is_oriented(&self) -> Option<bool> {
        self.oriented
    }

    fn compute_orientation(&self) -> Option<bool> {
        if self.top_dim() != 2 {
            return None;
        }
        let mut ok = true;
        for (e, faces) in self.cofaces[1].iter().enumerate() {
            match faces.len() {
                0 | 1 => {}
                2 => {
                    let (u, v) = (self.cells[1][e].vertices[0], self.cells[1][e].vertices[1]);
                    let a = edge_direction(&self.cells[2][faces[0]].cycle, u, v);
                    let b = edge_direction(&self.cells[2][faces[1]].cycle, u, v);
                    if a == b {
                        ok = false;
                    }
                }
                _ => return None,
            }
        }
        Some(ok)
    }

    /// All cells of dimension `dim` whose vertex set is contained in `set`.
    pub fn cells_within(&self, dim: usize, set: &BTreeSet<VertexId>) -> Vec<usize> {
        let mut out: BTreeSet<usize> = BTreeSet::new();
        for &v in set {
            for &c in self.cells_containing(v, dim) {
                if self.cells[dim][c].vertices.iter().all(|w| set.contains(w)) {
                    out.insert(c);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Builds the space spanned by the closure of the given cells, keeping
    /// vertex ids. Unused vertices stay as isolated 0-cells.
    pub fn closure_space(&self, cells: &BTreeSet<CellId>) -> crate::Result<DiscreteSpace> {
        let closure = self.closure(cells.iter().copied());
        let top = closure.iter().map(|c| c.dim).max().unwrap_or(0).max(1);
        let mut b = SpaceBuilder::new(self.num_vertices());
        let mut remap: Vec<HashMap<usize, usize>> = vec![HashMap::new(); top + 1];
        for id in closure.iter().filter(|c| c.dim == 1) {
            let e = &self.cells[1][id.index];
            let ni = b.add_edge(e.vertices[0], e.vertices[1])?;
            remap[1].insert(id.index, ni);
        }
        for d in 2..=top {
            for id in closure.iter().filter(|c| c.dim == d) {
                let c = &self.cells[d][id.index];
                let bd: Vec<usize> = c.boundary.iter().map(|x| remap[d - 1][x]).collect();
                let ni = b.add_cell(d, bd)?;
                remap[d].insert(id.index, ni);
            }
        }
        b.build()
    }

    /// Closure under taking boundaries, vertices included.
    pub fn closure(&self, cells: impl IntoIterator<Item = CellId>) -> BTreeSet<CellId> {
        let mut out = BTreeSet::new();
        let mut stack: Vec<CellId> = cells.into_iter().collect();
        while let Some(id) = stack.pop() {
            if !out.insert(id) {
                continue;
            }
            let c = &self.cells[id.dim][id.index];
            match id.dim {
                0 => {}
                1 => stack.extend(c.vertices.iter().map(|&v| CellId::vertex(v))),
                d => stack.extend(c.boundary.iter().map(|&b| CellId::new(d - 1, b))),
            }
        }
        out
    }
}

/// +1 if the walk steps u -> v, -1 if v -> u, 0 if the edge is absent.
pub(crate) fn edge_direction(cycle: &[VertexId], u: VertexId, v: VertexId) -> i8 {
    let n = cycle.len();
    for i in 0..n {
        let (a, b) = (cycle[i], cycle[(i + 1) % n]);
        if a == u && b == v {
            return 1;
        }
        if a == v && b == u {
            return -1;
        }
    }
    0
}
