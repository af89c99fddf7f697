//! Deterministic builders for standard complexes and hand-encoded figure
//! cases.

mod figures;

pub use figures::{figure_case, FigureCase, FIGURE_IDS};

use itertools::Itertools;

use crate::complex::{CellChain, DiscreteSpace, SpaceBuilder, VertexId};
use crate::error::{input, Result};

/// A named generator with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    SimplexBoundary(usize),
    CubeBoundary(usize),
    Octahedron,
    TorusGrid(usize, usize),
    /// A triangulated band two cells wide and `len` cells long.
    Strip(usize),
    Grid { width: usize, height: usize, triangulated: bool },
}

impl Family {
    pub fn generate(&self) -> Result<DiscreteSpace> {
        match *self {
            Family::SimplexBoundary(n) => simplex_boundary(n),
            Family::CubeBoundary(n) => cube_boundary(n),
            Family::Octahedron => Ok(octahedron()),
            Family::TorusGrid(m, n) => torus_grid(m, n),
            Family::Strip(len) => strip(len),
            Family::Grid { width, height, triangulated } => grid(width, height, triangulated),
        }
    }
}

const MAX_GRID: usize = 32;

/// Boundary of the n-simplex: every proper face of {0..=n} is a cell.
/// Cells of each dimension are listed in lexicographic vertex order.
pub fn simplex_boundary(n: usize) -> Result<DiscreteSpace> {
    if !(2..=6).contains(&n) {
        return input(format!("simplex_boundary needs 2 <= n <= 6, got {n}"));
    }
    let mut b = SpaceBuilder::new(n + 1);
    b.top_dim(n - 1);
    for (u, v) in (0..=n).tuple_combinations() {
        b.add_edge(u, v)?;
    }
    for d in 2..n {
        for face in (0..=n).combinations(d + 1) {
            b.add_cell_spanning(d, &face)?;
        }
    }
    b.auto_orient();
    b.build()
}

/// Boundary of the n-cube on vertices 0..2^n, bit i of a vertex id being
/// its i-th coordinate.
pub fn cube_boundary(n: usize) -> Result<DiscreteSpace> {
    if !(2..=5).contains(&n) {
        return input(format!("cube_boundary needs 2 <= n <= 5, got {n}"));
    }
    let nv = 1usize << n;
    let mut b = SpaceBuilder::new(nv);
    b.top_dim(n - 1);
    for v in 0..nv {
        for i in 0..n {
            let w = v | (1 << i);
            if w != v {
                b.add_edge(v, w)?;
            }
        }
    }
    for d in 2..n {
        for free in (0..n).combinations(d) {
            let mask: usize = free.iter().map(|i| 1 << i).sum();
            for base in (0..nv).filter(|v| v & mask == 0) {
                let verts: Vec<VertexId> =
                    (0..1usize << d).map(|s| base | spread_bits(s, &free)).sorted().collect();
                b.add_cell_spanning(d, &verts)?;
            }
        }
    }
    b.auto_orient();
    b.build()
}

fn spread_bits(s: usize, positions: &[usize]) -> usize {
    positions.iter().enumerate().filter(|(k, _)| s >> k & 1 == 1).map(|(_, &p)| 1 << p).sum()
}

/// Vertex id of a cube vertex written as a bit string, first character
/// being coordinate 0 (so "100" is vertex 1).
pub fn cube_vertex(bits: &str) -> VertexId {
    bits.chars().enumerate().filter(|(_, c)| *c == '1').map(|(i, _)| 1 << i).sum()
}

/// Octahedron boundary: 0 is the north pole, 1 the south pole, 2..=5 the
/// equator in cyclic order.
pub fn octahedron() -> DiscreteSpace {
    let mut b = SpaceBuilder::new(6);
    for i in 0..4 {
        let (a, c) = (2 + i, 2 + (i + 1) % 4);
        b.add_polygon(&[0, a, c]).expect("octahedron north face");
        b.add_polygon(&[1, c, a]).expect("octahedron south face");
    }
    b.build().expect("octahedron is well formed")
}

pub const NORTH: VertexId = 0;
pub const SOUTH: VertexId = 1;

/// m x n quadrilateral torus; vertex (i, j) has id i * n + j.
pub fn torus_grid(m: usize, n: usize) -> Result<DiscreteSpace> {
    if m < 3 || n < 3 || m > MAX_GRID || n > MAX_GRID {
        return input(format!("torus_grid needs 3 <= m, n <= {MAX_GRID}, got {m} x {n}"));
    }
    let id = |i: usize, j: usize| (i % m) * n + (j % n);
    let mut b = SpaceBuilder::new(m * n);
    for i in 0..m {
        for j in 0..n {
            b.add_polygon(&[id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)])?;
        }
    }
    b.build()
}

/// The cycle (0, j), (1, j), ..., (m-1, j) of `torus_grid(m, n)`.
pub fn torus_meridian(m: usize, n: usize, j: usize) -> CellChain {
    CellChain::cycle((0..m).map(|i| i * n + j % n).collect())
}

/// Planar grid of `width` x `height` squares; vertex (x, y) has id
/// y * (width + 1) + x. Triangulated grids split each square along the
/// diagonal from (x, y) to (x + 1, y + 1).
pub fn grid(width: usize, height: usize, triangulated: bool) -> Result<DiscreteSpace> {
    if width == 0 || height == 0 || width > MAX_GRID || height > MAX_GRID {
        return input(format!("grid needs 1 <= sizes <= {MAX_GRID}, got {width} x {height}"));
    }
    let id = |x: usize, y: usize| y * (width + 1) + x;
    let mut b = SpaceBuilder::new((width + 1) * (height + 1));
    for y in 0..height {
        for x in 0..width {
            let (a, c) = (id(x, y), id(x + 1, y + 1));
            if triangulated {
                b.add_polygon(&[a, id(x + 1, y), c])?;
                b.add_polygon(&[a, c, id(x, y + 1)])?;
            } else {
                b.add_polygon(&[a, id(x + 1, y), c, id(x, y + 1)])?;
            }
        }
    }
    b.build()
}

pub fn grid_vertex(width: usize, x: usize, y: usize) -> VertexId {
    y * (width + 1) + x
}

pub fn strip(len: usize) -> Result<DiscreteSpace> {
    grid(len, 2, true)
}

/// A canonical closed codimension-one submanifold of a sphere-like space.
pub fn equator(space: &DiscreteSpace, family: &Family) -> Result<CellChain> {
    match *family {
        Family::Octahedron => Ok(CellChain::cycle(vec![2, 3, 4, 5])),
        Family::SimplexBoundary(n) if n >= 3 => {
            let inner: std::collections::BTreeSet<VertexId> = (0..n).collect();
            if n == 3 {
                Ok(CellChain::cycle(vec![0, 1, 2]))
            } else {
                Ok(CellChain::cells(n - 2, space.cells_within(n - 2, &inner)))
            }
        }
        // No mid-vertices exist, so the band around the four side faces is
        // the closed 8-edge zigzag through every corner. Its flatness is left
        // to the checker.
        Family::CubeBoundary(3) => Ok(CellChain::cycle(
            ["000", "100", "101", "111", "110", "010", "011", "001"].iter().map(|b| cube_vertex(b)).collect(),
        )),
        Family::CubeBoundary(n) if n >= 4 => {
            let facet: std::collections::BTreeSet<VertexId> = (0..1usize << (n - 1)).collect();
            Ok(CellChain::cells(n - 2, space.cells_within(n - 2, &facet)))
        }
        ref other => input(format!("no canonical equator for {other:?}")),
    }
}
