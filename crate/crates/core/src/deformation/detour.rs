use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::moves::peel;
use super::{DeformationTrace, TraceKind};
use crate::complex::{CellChain, CellId, DiscreteSpace};
use crate::error::{input, precondition, Result};

/// Whether the 2-cell faces of a 3-cell close up into a sphere: every edge
/// lies on exactly two of them and the Euler characteristic is 2.
fn is_spherical(space: &DiscreteSpace, cell: usize) -> bool {
    let faces = space.cells(3)[cell].boundary();
    let mut edge_use: BTreeMap<usize, usize> = BTreeMap::new();
    let mut verts = BTreeSet::new();
    for &f in faces {
        let c = &space.cells(2)[f];
        verts.extend(c.vertices().iter().copied());
        for &e in c.boundary() {
            *edge_use.entry(e).or_default() += 1;
        }
    }
    edge_use.values().all(|&n| n == 2) && verts.len() + faces.len() == edge_use.len() + 2
}

/// Moves a path off the forbidden 2-cell `forbidden` by going around a
/// spherical 3-cell on it: `c0` and `c1` must differ exactly by the boundary
/// of `forbidden`, and the trace crosses every other face of that 3-cell in
/// turn.
pub fn detour_sequence(space: &DiscreteSpace, c0: &CellChain, c1: &CellChain, forbidden: usize) -> Result<DeformationTrace> {
    c0.validate(space)?;
    c1.validate(space)?;
    let (Some(_), Some(_)) = (c0.as_path(), c1.as_path()) else {
        return input("detours act on vertex paths");
    };
    let Some(cell) = space.cells(2).get(forbidden) else {
        return input(format!("unknown 2-cell {forbidden}"));
    };
    if c0.edge_set(space)? == c1.edge_set(space)? {
        return Ok(DeformationTrace::single(c0.clone(), TraceKind::Minimal));
    }
    let diff: BTreeSet<usize> = c0.edge_set(space)?.symmetric_difference(&c1.edge_set(space)?).copied().collect();
    let boundary: BTreeSet<usize> = cell.boundary().iter().copied().collect();
    if diff != boundary {
        return precondition(format!("the paths do not differ by the boundary of 2-cell {forbidden}"));
    }
    let Some(&solid) = space.cofaces(CellId::new(2, forbidden)).iter().find(|&&s| is_spherical(space, s)) else {
        return precondition(format!("2-cell {forbidden} lies on no spherical 3-cell"));
    };
    let others: BTreeSet<usize> = space.cells(3)[solid].boundary().iter().copied().filter(|&f| f != forbidden).collect();
    let goal = c1.edge_set(space)?;
    let mut out = Vec::new();
    let mut dead = HashSet::new();
    if !peel(space, c0, &others, &goal, &mut out, &mut dead) {
        return precondition(format!("no simple detour around 3-cell {solid}"));
    }
    let mut steps = vec![c0.clone()];
    steps.extend(out.iter().map(|(_, s)| s.clone()));
    *steps.last_mut().unwrap() = c1.clone();
    let moves = out.into_iter().map(|(f, _)| BTreeSet::from([CellId::new(2, f)])).collect();
    Ok(DeformationTrace { kind: TraceKind::Minimal, steps, moves })
}
