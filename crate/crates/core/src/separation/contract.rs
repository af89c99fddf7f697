use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{dual_neighbours, is_pseudo_manifold};
use crate::complex::{CellId, DiscreteSpace};
use crate::error::{input, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Surfaces shrink from the component boundary to the seed boundary.
    Contract,
    /// The reverse: the seed boundary grows back to the component boundary.
    Expand,
}

/// One step: the surface loses `replaced` and gains `replacement`, which
/// together make up the boundary of `cell`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Removal {
    pub cell: usize,
    pub replaced: BTreeSet<usize>,
    pub replacement: BTreeSet<usize>,
}

/// A sequence of (k-1)-surfaces, each obtained from the previous one by
/// swapping part of a k-cell boundary for the rest of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionTrace {
    pub dim: usize,
    pub seed: usize,
    pub direction: Direction,
    pub start: BTreeSet<usize>,
    pub steps: Vec<Removal>,
}

impl ContractionTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays the trace, returning S_0, ..., S_N. Fails when a step removes
    /// cells the surface lacks or adds cells it already has.
    pub fn surfaces(&self) -> Result<Vec<BTreeSet<usize>>> {
        let mut cur = self.start.clone();
        let mut out = vec![cur.clone()];
        for (i, r) in self.steps.iter().enumerate() {
            if !r.replaced.is_subset(&cur) {
                return input(format!("step {i} replaces cells not on the surface"));
            }
            if !r.replacement.is_disjoint(&cur) {
                return input(format!("step {i} adds cells already on the surface"));
            }
            cur = cur.difference(&r.replaced).chain(r.replacement.iter()).copied().collect();
            out.push(cur.clone());
        }
        Ok(out)
    }
}

fn distances_within(space: &DiscreteSpace, region: &BTreeSet<usize>, from: usize) -> BTreeMap<usize, usize> {
    let mut dist = BTreeMap::from([(from, 0)]);
    let mut queue = VecDeque::from([from]);
    while let Some(c) = queue.pop_front() {
        let d = dist[&c];
        for (g, _) in dual_neighbours(space, c) {
            if region.contains(&g) && !dist.contains_key(&g) {
                dist.insert(g, d + 1);
                queue.push_back(g);
            }
        }
    }
    dist
}

/// Cells of a (k-1)-patch connected through shared (k-2)-cells.
fn patch_connected(space: &DiscreteSpace, dim: usize, patch: &BTreeSet<usize>) -> bool {
    let Some(&first) = patch.iter().next() else {
        return false;
    };
    let faces = |c: usize| space.cell(CellId::new(dim, c)).boundary();
    let mut seen = BTreeSet::from([first]);
    let mut stack = vec![first];
    while let Some(c) = stack.pop() {
        for &other in patch {
            if !seen.contains(&other) && faces(c).iter().any(|f| faces(other).contains(f)) {
                seen.insert(other);
                stack.push(other);
            }
        }
    }
    seen.len() == patch.len()
}

/// Shrinks the boundary `s` of `component` onto the boundary of `seed`,
/// always removing the remaining cell farthest from the seed (ties to the
/// smaller id) among those meeting the current surface in a (k-1)-cell.
pub fn contract_to_cell(space: &DiscreteSpace, component: &BTreeSet<usize>, s: &BTreeSet<usize>, seed: usize) -> Result<ContractionTrace> {
    let k = space.top_dim();
    if !component.contains(&seed) {
        return input(format!("seed {seed} is not in the component"));
    }
    let boundary = |c: usize| -> BTreeSet<usize> { space.cells(k)[c].boundary().iter().copied().collect() };
    if boundary(seed).is_disjoint(s) {
        return input(format!("seed {seed} has no face on s"));
    }
    let mut remaining = component.clone();
    let mut surface = s.clone();
    let mut steps = Vec::new();
    while remaining.len() > 1 {
        let dist = distances_within(space, &remaining, seed);
        let x = remaining
            .iter()
            .copied()
            .filter(|&c| c != seed && !boundary(c).is_disjoint(&surface))
            .max_by_key(|&c| (dist.get(&c).copied(), std::cmp::Reverse(c)))
            .ok_or_else(|| Error::Internal("no remaining cell meets the surface".into()))?;
        let b = boundary(x);
        let replaced: BTreeSet<usize> = b.intersection(&surface).copied().collect();
        if !patch_connected(space, k - 1, &replaced) {
            return Err(Error::Unsupported {
                cell: CellId::new(k, x),
                reason: format!("the surface meets the cell in {} faces that do not form one patch", replaced.len()),
            });
        }
        let replacement: BTreeSet<usize> = b.difference(&surface).copied().collect();
        let next: BTreeSet<usize> = surface.symmetric_difference(&b).copied().collect();
        if !is_pseudo_manifold(space, k - 1, &next) {
            return Err(Error::Unsupported { cell: CellId::new(k, x), reason: "removing the cell pinches the surface".into() });
        }
        surface = next;
        remaining.remove(&x);
        steps.push(Removal { cell: x, replaced, replacement });
    }
    let trace = ContractionTrace { dim: k, seed, direction: Direction::Contract, start: s.clone(), steps };
    let problems = verify_contraction_trace(space, &trace);
    if !problems.is_empty() {
        return Err(Error::Internal(problems.join("; ")));
    }
    Ok(trace)
}

/// Per-step checks: each step swaps part of a k-cell boundary for the rest,
/// every surface is a closed pseudo-manifold, the seed is never removed, and
/// the seed boundary is the last surface (first, for an expansion).
pub fn verify_contraction_trace(space: &DiscreteSpace, trace: &ContractionTrace) -> Vec<String> {
    let k = trace.dim;
    let mut reasons = Vec::new();
    if k != space.top_dim() || trace.seed >= space.num_cells(k) {
        return vec!["trace does not fit the space".into()];
    }
    let surfaces = match trace.surfaces() {
        Ok(s) => s,
        Err(e) => return vec![e.to_string()],
    };
    for (i, r) in trace.steps.iter().enumerate() {
        let Some(cell) = space.cells(k).get(r.cell) else {
            reasons.push(format!("step {i}: unknown cell {}", r.cell));
            continue;
        };
        let b: BTreeSet<usize> = cell.boundary().iter().copied().collect();
        let xor: BTreeSet<usize> = surfaces[i].symmetric_difference(&surfaces[i + 1]).copied().collect();
        if xor != b || !r.replaced.is_disjoint(&r.replacement) {
            reasons.push(format!("step {i}: change is not the boundary of cell {}", r.cell));
        }
        if r.cell == trace.seed {
            reasons.push(format!("step {i} removes the seed"));
        }
    }
    for (i, s) in surfaces.iter().enumerate() {
        if !is_pseudo_manifold(space, k - 1, s) {
            reasons.push(format!("surface {i} is not a closed pseudo-manifold"));
        }
    }
    let seed_boundary: BTreeSet<usize> = space.cells(k)[trace.seed].boundary().iter().copied().collect();
    let end = match trace.direction {
        Direction::Contract => surfaces.last(),
        Direction::Expand => surfaces.first(),
    };
    if end != Some(&seed_boundary) {
        reasons.push("the seed boundary is not reached".into());
    }
    reasons
}

/// The expansion (or contraction) running the other way: steps reversed with
/// the replaced and replacement cells swapped, starting from the last surface.
pub fn invert_trace(trace: &ContractionTrace) -> Result<ContractionTrace> {
    let surfaces = trace.surfaces()?;
    let steps = trace
        .steps
        .iter()
        .rev()
        .map(|r| Removal { cell: r.cell, replaced: r.replacement.clone(), replacement: r.replaced.clone() })
        .collect();
    let direction = match trace.direction {
        Direction::Contract => Direction::Expand,
        Direction::Expand => Direction::Contract,
    };
    Ok(ContractionTrace { dim: trace.dim, seed: trace.seed, direction, start: surfaces.last().unwrap().clone(), steps })
}
