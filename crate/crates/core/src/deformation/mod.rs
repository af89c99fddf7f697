//! XorSum algebra, gradual variation, single-cell moves, cross-over
//! detection, contraction of cycles, and detours around a forbidden cell.

mod contraction;
mod crossing;
mod detour;
mod moves;

pub use contraction::{search_contraction, verify_contraction, ContractionCheck};
pub use crossing::{are_side_gradually_varied, crosses_over};
pub use detour::detour_sequence;
pub use moves::{apply_cell_move, decompose_minimal_moves, xor_decomposition};

use std::collections::BTreeSet;

use crate::complex::{CellChain, CellId, DiscreteSpace, VertexId};
use crate::error::{input, Result};

/// Which predicate links consecutive steps of a trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceKind {
    Gradual,
    Minimal,
    SideGradual,
}

/// A sequence of chains; `moves[i]` holds the cells whose boundaries make up
/// the XorSum of `steps[i]` and `steps[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationTrace {
    pub kind: TraceKind,
    pub steps: Vec<CellChain>,
    pub moves: Vec<BTreeSet<CellId>>,
}

impl DeformationTrace {
    pub fn single(c: CellChain, kind: TraceKind) -> Self {
        DeformationTrace { kind, steps: vec![c], moves: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn num_moves(&self) -> usize {
        self.moves.len()
    }

    pub fn last(&self) -> &CellChain {
        self.steps.last().expect("a trace has at least one step")
    }
}

/// Symmetric difference of two chains of equal dimension.
pub fn xor_sum(space: &DiscreteSpace, c: &CellChain, c2: &CellChain) -> Result<CellChain> {
    if c.dim() != c2.dim() {
        return input(format!("xor_sum of a {}-chain and a {}-chain", c.dim(), c2.dim()));
    }
    let a = cell_set(space, c)?;
    let b = cell_set(space, c2)?;
    Ok(CellChain::Cells { dim: c.dim(), cells: a.symmetric_difference(&b).copied().collect() })
}

fn cell_set(space: &DiscreteSpace, c: &CellChain) -> Result<BTreeSet<usize>> {
    c.validate(space)?;
    match c {
        CellChain::Path { .. } => c.edge_set(space),
        CellChain::Cells { cells, .. } => Ok(cells.clone()),
    }
}

/// The boundary of a cell as a chain one dimension lower.
pub fn cell_boundary(space: &DiscreteSpace, id: CellId) -> CellChain {
    CellChain::cells(id.dim - 1, space.cell(id).boundary().iter().copied())
}

/// 2-cells whose vertices all lie on `c` or `c2`, the cells of G(C u C').
pub(crate) fn spanned_faces(space: &DiscreteSpace, verts: &BTreeSet<VertexId>) -> Vec<usize> {
    space.cells_within(2, verts)
}

fn path_parts(c: &CellChain) -> Result<(&[VertexId], bool)> {
    match c.as_path() {
        Some(p) if !p.0.is_empty() => Ok(p),
        _ => input("gradual variation compares non-empty vertex paths"),
    }
}

/// Gradual variation of two simple paths or cycles. Open paths need ends at
/// distance at most 1 (a shared cell counts as distance 1). Every point of
/// one path is on the other or in a 2-cell of G(C u C') touching the other;
/// every edge of one path that the other lacks lies in such a 2-cell that
/// has an edge of the other path the first lacks. Finally the XorSum must
/// split into boundaries of 2-cells of G(C u C').
pub fn are_gradually_varied(space: &DiscreteSpace, c: &CellChain, c2: &CellChain) -> Result<bool> {
    c.validate(space)?;
    c2.validate(space)?;
    let (p, p_closed) = path_parts(c)?;
    let (q, q_closed) = path_parts(c2)?;
    if !p_closed && !q_closed {
        let ends_close = space.share_cell(p[0], q[0]) && space.share_cell(p[p.len() - 1], q[q.len() - 1]);
        if !ends_close {
            return Ok(false);
        }
    }
    let verts: BTreeSet<VertexId> = p.iter().chain(q.iter()).copied().collect();
    let faces = spanned_faces(space, &verts);
    let e1 = c.edge_set(space)?;
    let e2 = c2.edge_set(space)?;
    if !one_side(space, p, p_closed, &e1, q, &e2, &faces) || !one_side(space, q, q_closed, &e2, p, &e1, &faces) {
        return Ok(false);
    }
    Ok(xor_decomposition(space, c, c2)?.is_some())
}

fn one_side(
    space: &DiscreteSpace,
    p: &[VertexId],
    closed: bool,
    e_self: &BTreeSet<usize>,
    other: &[VertexId],
    e_other: &BTreeSet<usize>,
    faces: &[usize],
) -> bool {
    let other_set: BTreeSet<VertexId> = other.iter().copied().collect();
    let n = p.len();
    let interior = |i: usize| closed || (i > 0 && i + 1 < n);
    for (i, &v) in p.iter().enumerate() {
        if !interior(i) || other_set.contains(&v) {
            continue;
        }
        let ok = faces.iter().any(|&f| {
            let cell = &space.cells(2)[f];
            cell.contains_vertex(v) && cell.vertices().iter().any(|w| other_set.contains(w))
        });
        if !ok {
            return false;
        }
    }
    if other.len() == 1 {
        return true;
    }
    let steps = if closed { n } else { n.saturating_sub(1) };
    for i in 0..steps {
        let end_edge = !closed && (i == 0 || i + 2 == n);
        if end_edge {
            continue;
        }
        let e = space.edge_between(p[i], p[(i + 1) % n]).expect("validated path");
        if e_other.contains(&e) {
            continue;
        }
        let ok = faces.iter().any(|&f| {
            let b = space.cells(2)[f].boundary();
            b.contains(&e) && b.iter().any(|x| e_other.contains(x) && !e_self.contains(x))
        });
        if !ok {
            return false;
        }
    }
    true
}
