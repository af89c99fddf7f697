use std::collections::{BTreeMap, BTreeSet};

use super::{CellId, DiscreteSpace, VertexId};
use crate::error::{input, Result};

/// A set of cells of one dimension. Curves are kept as ordered vertex walks;
/// everything else (XorSums, submanifolds) as unordered index sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellChain {
    /// A simple walk along edges. A single vertex is a point; `closed` joins
    /// the last vertex back to the first.
    Path { vertices: Vec<VertexId>, closed: bool },
    /// Unordered cells of dimension `dim`, by registry index.
    Cells { dim: usize, cells: BTreeSet<usize> },
}

impl CellChain {
    pub fn path(vertices: Vec<VertexId>) -> Self {
        CellChain::Path { vertices, closed: false }
    }

    pub fn cycle(vertices: Vec<VertexId>) -> Self {
        CellChain::Path { vertices, closed: true }
    }

    pub fn cells(dim: usize, cells: impl IntoIterator<Item = usize>) -> Self {
        CellChain::Cells { dim, cells: cells.into_iter().collect() }
    }

    pub fn dim(&self) -> usize {
        match self {
            CellChain::Path { .. } => 1,
            CellChain::Cells { dim, .. } => *dim,
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, CellChain::Path { closed: true, .. })
    }

    pub fn as_path(&self) -> Option<(&[VertexId], bool)> {
        match self {
            CellChain::Path { vertices, closed } => Some((vertices, *closed)),
            CellChain::Cells { .. } => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            CellChain::Path { vertices, .. } => vertices.is_empty(),
            CellChain::Cells { cells, .. } => cells.is_empty(),
        }
    }

    /// Checks ids, simplicity and that consecutive path vertices are edges.
    pub fn validate(&self, space: &DiscreteSpace) -> Result<()> {
        match self {
            CellChain::Path { vertices, closed } => {
                let mut seen = BTreeSet::new();
                for &v in vertices {
                    space.check_vertex(v)?;
                    if !seen.insert(v) {
                        return input(format!("path repeats vertex {v}"));
                    }
                }
                if *closed && vertices.len() < 3 {
                    return input("a closed path needs at least 3 vertices");
                }
                for w in vertices.windows(2) {
                    if space.edge_between(w[0], w[1]).is_none() {
                        return input(format!("no edge between {} and {}", w[0], w[1]));
                    }
                }
                if *closed && space.edge_between(vertices[0], vertices[vertices.len() - 1]).is_none() {
                    return input(format!(
                        "no edge closing the cycle between {} and {}",
                        vertices[vertices.len() - 1],
                        vertices[0]
                    ));
                }
                Ok(())
            }
            CellChain::Cells { dim, cells } => {
                if *dim > space.top_dim() {
                    return input(format!("chain dimension {dim} exceeds space dimension"));
                }
                if let Some(&c) = cells.iter().find(|&&c| c >= space.num_cells(*dim)) {
                    return input(format!("unknown {dim}-cell {c}"));
                }
                Ok(())
            }
        }
    }

    /// Vertex set of the chain.
    pub fn vertex_set(&self, space: &DiscreteSpace) -> BTreeSet<VertexId> {
        match self {
            CellChain::Path { vertices, .. } => vertices.iter().copied().collect(),
            CellChain::Cells { dim, cells } => {
                cells.iter().flat_map(|&c| space.cells(*dim)[c].vertices.iter().copied()).collect()
            }
        }
    }

    /// Edge indices of a path (dim 1 chains only).
    pub fn edge_set(&self, space: &DiscreteSpace) -> Result<BTreeSet<usize>> {
        match self {
            CellChain::Path { vertices, closed } => {
                let mut out = BTreeSet::new();
                let n = vertices.len();
                let steps = if *closed { n } else { n.saturating_sub(1) };
                for i in 0..steps {
                    let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                    match space.edge_between(a, b) {
                        Some(e) => {
                            out.insert(e);
                        }
                        None => return input(format!("no edge between {a} and {b}")),
                    }
                }
                Ok(out)
            }
            CellChain::Cells { dim: 1, cells } => Ok(cells.clone()),
            CellChain::Cells { dim, .. } => input(format!("expected a 1-chain, got dimension {dim}")),
        }
    }

    /// The top-dimensional cells as [`CellId`]s (edges for paths, vertices
    /// for a single-point path).
    pub fn cell_ids(&self, space: &DiscreteSpace) -> Result<BTreeSet<CellId>> {
        match self {
            CellChain::Path { vertices, .. } if vertices.len() == 1 => Ok(BTreeSet::from([CellId::vertex(vertices[0])])),
            CellChain::Path { .. } => Ok(self.edge_set(space)?.into_iter().map(|e| CellId::new(1, e)).collect()),
            CellChain::Cells { dim, cells } => Ok(cells.iter().map(|&c| CellId::new(*dim, c)).collect()),
        }
    }

    /// Unordered view of this chain.
    pub fn to_cells(&self, space: &DiscreteSpace) -> Result<CellChain> {
        match self {
            CellChain::Path { .. } => Ok(CellChain::Cells { dim: 1, cells: self.edge_set(space)? }),
            c => Ok(c.clone()),
        }
    }

    /// Orders a 1-chain into a simple path or cycle. Paths start at their
    /// smaller endpoint, cycles at their smallest vertex heading to its
    /// smaller neighbour.
    pub fn to_path(&self, space: &DiscreteSpace) -> Result<CellChain> {
        let edges = match self {
            CellChain::Path { .. } => return Ok(self.clone()),
            CellChain::Cells { dim: 1, cells } => cells,
            CellChain::Cells { dim, .. } => return input(format!("cannot order a {dim}-chain as a path")),
        };
        order_edges(space, edges)
    }
}

pub(crate) fn order_edges(space: &DiscreteSpace, edges: &BTreeSet<usize>) -> Result<CellChain> {
    if edges.is_empty() {
        return Ok(CellChain::path(Vec::new()));
    }
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &e in edges {
        let v = &space.cells(1)[e].vertices;
        adj.entry(v[0]).or_default().push(v[1]);
        adj.entry(v[1]).or_default().push(v[0]);
    }
    if adj.values().any(|n| n.len() > 2) {
        return input("edge set branches; not a simple path");
    }
    for n in adj.values_mut() {
        n.sort_unstable();
    }
    let ends: Vec<VertexId> = adj.iter().filter(|(_, n)| n.len() == 1).map(|(&v, _)| v).collect();
    let closed = ends.is_empty();
    let start = if closed { *adj.keys().next().unwrap() } else { ends[0] };
    let mut walk = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = adj[&cur].iter().copied().find(|&w| w != prev);
        let Some(next) = next else { break };
        if next == start {
            break;
        }
        if walk.contains(&next) {
            return input("edge set is not simple");
        }
        walk.push(next);
        prev = cur;
        cur = next;
    }
    if walk.len() != adj.len() {
        return input("edge set is not connected");
    }
    Ok(CellChain::Path { vertices: walk, closed })
}
