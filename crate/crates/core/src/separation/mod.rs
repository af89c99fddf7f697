//! Components of the complement of a closed submanifold, path flattening,
//! and contraction of a component to a single top cell.

mod contract;
mod flatten;

pub use contract::{contract_to_cell, invert_trace, verify_contraction_trace, ContractionTrace, Direction, Removal};
pub use flatten::{flatten_path, FlattenResult};

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::complex::{CellChain, CellId, DiscreteSpace, VertexId};
use crate::deformation::DeformationTrace;
use crate::error::{input, precondition, Result};
use crate::flatness::is_locally_flat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationReport {
    /// Top cells of each component, ordered by their smallest cell.
    pub components: Vec<BTreeSet<usize>>,
    /// Per component: every cell of s bounds exactly one top cell of it.
    pub boundary_check: Vec<bool>,
    /// Odd (true) or even number of crossings of s on the breadth-first dual
    /// path from the smallest vertex off s to each other vertex off s.
    pub crossing_parities: BTreeMap<(VertexId, VertexId), bool>,
    pub warnings: Vec<String>,
}

impl SeparationReport {
    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(BTreeSet::len).collect()
    }

    /// Exactly two components, each bounded by all of s.
    pub fn separates(&self) -> bool {
        self.components.len() == 2 && self.boundary_check.iter().all(|&b| b)
    }

    /// Index of the component holding top cell `cell`.
    pub fn component_of(&self, cell: usize) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&cell))
    }
}

/// The (k-1)-cells of a chain in a k-dimensional space.
pub fn surface_cells(space: &DiscreteSpace, s: &CellChain) -> Result<BTreeSet<usize>> {
    let k = space.top_dim();
    s.validate(space)?;
    if s.dim() + 1 != k {
        return input(format!("expected a {}-chain in a {k}-dimensional space, got dimension {}", k - 1, s.dim()));
    }
    match s.to_cells(space)? {
        CellChain::Cells { cells, .. } => Ok(cells),
        CellChain::Path { .. } => unreachable!(),
    }
}

/// Every (k-2)-cell of the surface lies in exactly two of its cells.
pub fn is_pseudo_manifold(space: &DiscreteSpace, dim: usize, cells: &BTreeSet<usize>) -> bool {
    let mut count: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in cells {
        for &f in space.cell(CellId::new(dim, c)).boundary() {
            *count.entry(f).or_default() += 1;
        }
    }
    !cells.is_empty() && count.values().all(|&n| n == 2)
}

/// Top cells sharing a (k-1)-cell with `cell`, with the shared cell.
pub(crate) fn dual_neighbours(space: &DiscreteSpace, cell: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
    let k = space.top_dim();
    space.cells(k)[cell]
        .boundary()
        .iter()
        .flat_map(move |&f| space.cofaces(CellId::new(k - 1, f)).iter().filter(move |&&g| g != cell).map(move |&g| (g, f)))
}

/// Flood fill of the top cells, never stepping through a cell of s. The
/// space must be a regular closed manifold (oriented when k = 2) and s a
/// closed (k-1)-chain. Without `warn_only`, a non-flat s is an error.
pub fn components_of_complement(space: &DiscreteSpace, s: &CellChain, warn_only: bool) -> Result<SeparationReport> {
    let k = space.top_dim();
    if k < 2 {
        return precondition("separation needs a space of dimension at least 2");
    }
    if !space.is_closed_manifold()? {
        return precondition(format!("space is not a closed {k}-manifold"));
    }
    if k == 2 && space.is_oriented() != Some(true) {
        return precondition("2-dimensional space is not oriented");
    }
    let surface = surface_cells(space, s)?;
    if !is_pseudo_manifold(space, k - 1, &surface) {
        return input("s is not closed");
    }
    let mut warnings = Vec::new();
    let flat = is_locally_flat(space, s)?;
    if !flat.is_flat() {
        let msg = format!("s is not locally flat ({} violations, first {:?})", flat.violations.len(), flat.violations[0]);
        if !warn_only {
            return precondition(msg);
        }
        warnings.push(msg);
    }

    let n = space.num_cells(k);
    let mut label: Vec<Option<usize>> = vec![None; n];
    let mut components = Vec::new();
    for root in 0..n {
        if label[root].is_some() {
            continue;
        }
        let id = components.len();
        let mut comp = BTreeSet::from([root]);
        label[root] = Some(id);
        let mut queue = VecDeque::from([root]);
        while let Some(c) = queue.pop_front() {
            for (g, f) in dual_neighbours(space, c) {
                if !surface.contains(&f) && label[g].is_none() {
                    label[g] = Some(id);
                    comp.insert(g);
                    queue.push_back(g);
                }
            }
        }
        components.push(comp);
    }

    let boundary_check = components
        .iter()
        .map(|comp| {
            surface.iter().all(|&f| space.cofaces(CellId::new(k - 1, f)).iter().filter(|g| comp.contains(g)).count() == 1)
        })
        .collect();

    Ok(SeparationReport { components, boundary_check, crossing_parities: crossing_parities(space, &surface), warnings })
}

fn crossing_parities(space: &DiscreteSpace, surface: &BTreeSet<usize>) -> BTreeMap<(VertexId, VertexId), bool> {
    let k = space.top_dim();
    let mut on_s: BTreeSet<VertexId> = BTreeSet::new();
    for &f in surface {
        on_s.extend(space.cell(CellId::new(k - 1, f)).vertices().iter().copied());
    }
    let off: Vec<VertexId> = (0..space.num_vertices()).filter(|v| !on_s.contains(v) && !space.cells_containing(*v, k).is_empty()).collect();
    let Some(&root) = off.first() else {
        return BTreeMap::new();
    };
    let n = space.num_cells(k);
    let mut parity: Vec<Option<bool>> = vec![None; n];
    let start = space.cells_containing(root, k)[0];
    parity[start] = Some(false);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        let here = parity[c].unwrap();
        for (g, f) in dual_neighbours(space, c) {
            if parity[g].is_none() {
                parity[g] = Some(here ^ surface.contains(&f));
                queue.push_back(g);
            }
        }
    }
    off[1..]
        .iter()
        .filter_map(|&b| parity[space.cells_containing(b, k)[0]].map(|p| ((root, b), p)))
        .collect()
}

/// First step of a trace that meets s, with the first vertex of that step
/// lying on s.
pub fn first_crossing(space: &DiscreteSpace, s: &CellChain, trace: &DeformationTrace) -> Option<(usize, VertexId)> {
    let on_s = s.vertex_set(space);
    trace.steps.iter().enumerate().find_map(|(i, step)| {
        let (p, _) = step.as_path()?;
        p.iter().find(|v| on_s.contains(v)).map(|&x| (i, x))
    })
}
