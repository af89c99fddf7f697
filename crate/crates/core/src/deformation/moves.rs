use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::{are_gradually_varied, spanned_faces, DeformationTrace, TraceKind};
use crate::complex::{CellChain, CellId, DiscreteSpace, VertexId};
use crate::error::{input, precondition, Result};

/// Pushes a path across a 2-cell: when the cell meets the path in an arc
/// with at least one edge, the arc is swapped for the rest of the cell's
/// boundary. The result keeps the travel direction, and a cycle keeps its
/// first vertex when that vertex survives.
pub fn apply_cell_move(space: &DiscreteSpace, c: &CellChain, face: usize) -> Result<CellChain> {
    c.validate(space)?;
    let Some((p, closed)) = c.as_path() else {
        return input("cell moves act on vertex paths");
    };
    let Some(cell) = space.cells(2).get(face) else {
        return input(format!("unknown 2-cell {face}"));
    };
    let n = p.len();
    let steps = if closed { n } else { n.saturating_sub(1) };
    let shared: Vec<bool> = (0..steps)
        .map(|i| {
            let e = space.edge_between(p[i], p[(i + 1) % n]).expect("validated path");
            cell.boundary().contains(&e)
        })
        .collect();
    let count = shared.iter().filter(|&&s| s).count();
    if count == 0 {
        return input(format!("2-cell {face} shares no edge with the path"));
    }
    if closed && count == steps {
        return input(format!("the cycle is the boundary of 2-cell {face}"));
    }
    // Start of the run of shared edges.
    let start = if closed {
        (0..steps).find(|&i| shared[i] && !shared[(i + steps - 1) % steps]).expect("run start")
    } else {
        shared.iter().position(|&s| s).unwrap()
    };
    let run = (0..count).all(|k| shared[(start + k) % steps.max(1)]) && (closed || start + count <= steps);
    if !run {
        return input(format!("2-cell {face} meets the path in more than one arc"));
    }
    let arc: Vec<VertexId> = (0..=count).map(|k| p[(start + k) % n]).collect();
    let arc_set: BTreeSet<VertexId> = arc.iter().copied().collect();
    let on_path: BTreeSet<VertexId> = p.iter().copied().collect();
    if cell.vertices().iter().any(|v| on_path.contains(v) && !arc_set.contains(v)) {
        return input(format!("2-cell {face} touches the path outside its shared arc"));
    }
    let (x, y) = (arc[0], arc[count]);
    let cyc = cell.cycle();
    let m = cyc.len();
    let at = cyc.iter().position(|&v| v == x).unwrap();
    let step = if cyc[(at + 1) % m] == arc[1] { m - 1 } else { 1 };
    let mut repl = Vec::new();
    let mut k = (at + step) % m;
    while cyc[k] != y {
        repl.push(cyc[k]);
        k = (k + step) % m;
    }
    let mut out: Vec<VertexId>;
    if closed {
        out = vec![x];
        out.extend(repl);
        out.push(y);
        let mut k = (start + count + 1) % n;
        while k != start {
            out.push(p[k]);
            k = (k + 1) % n;
        }
        if let Some(pos) = out.iter().position(|&v| v == p[0]) {
            out.rotate_left(pos);
        }
    } else {
        out = p[..start].to_vec();
        out.push(x);
        out.extend(repl);
        out.push(y);
        out.extend_from_slice(&p[start + count + 1..]);
    }
    Ok(CellChain::Path { vertices: out, closed })
}

/// 2-cells of G(C u C') whose boundaries sum (mod 2) to the XorSum of the
/// two paths, or `None` when no such set exists.
pub fn xor_decomposition(space: &DiscreteSpace, c: &CellChain, c2: &CellChain) -> Result<Option<BTreeSet<usize>>> {
    let target: BTreeSet<usize> = c.edge_set(space)?.symmetric_difference(&c2.edge_set(space)?).copied().collect();
    let mut verts = c.vertex_set(space);
    verts.extend(c2.vertex_set(space));
    let faces = spanned_faces(space, &verts);
    Ok(solve_gf2(space, &faces, target))
}

/// Gaussian elimination over GF(2); each basis row keeps the set of faces
/// it combines.
fn solve_gf2(space: &DiscreteSpace, faces: &[usize], target: BTreeSet<usize>) -> Option<BTreeSet<usize>> {
    let mut basis: BTreeMap<usize, (BTreeSet<usize>, BTreeSet<usize>)> = BTreeMap::new();
    let reduce = |mut row: BTreeSet<usize>, mut combo: BTreeSet<usize>, basis: &BTreeMap<usize, (BTreeSet<usize>, BTreeSet<usize>)>| {
        while let Some(&pivot) = row.iter().next() {
            match basis.get(&pivot) {
                Some((b, bc)) => {
                    row = row.symmetric_difference(b).copied().collect();
                    combo = combo.symmetric_difference(bc).copied().collect();
                }
                None => break,
            }
        }
        (row, combo)
    };
    for &f in faces {
        let row: BTreeSet<usize> = space.cells(2)[f].boundary().iter().copied().collect();
        let (row, combo) = reduce(row, BTreeSet::from([f]), &basis);
        if let Some(&pivot) = row.iter().next() {
            basis.insert(pivot, (row, combo));
        }
    }
    let (rest, combo) = reduce(target, BTreeSet::new(), &basis);
    rest.is_empty().then_some(combo)
}

/// Splits a gradual variation into single-cell moves by peeling the cells
/// of the XorSum decomposition, lowest id first, backtracking on dead ends.
/// Open paths must share both endpoints.
pub fn decompose_minimal_moves(space: &DiscreteSpace, c: &CellChain, c2: &CellChain) -> Result<DeformationTrace> {
    if !are_gradually_varied(space, c, c2)? {
        return precondition("paths are not gradually varied");
    }
    let (p, pc) = c.as_path().expect("checked");
    let (q, qc) = c2.as_path().expect("checked");
    if pc != qc || (!pc && (p[0] != q[0] || p[p.len() - 1] != q[q.len() - 1])) {
        return precondition("decomposition needs two cycles or two paths with the same ends");
    }
    let goal = c2.edge_set(space)?;
    if c.edge_set(space)? == goal {
        return Ok(DeformationTrace::single(c.clone(), TraceKind::Minimal));
    }
    let cells = xor_decomposition(space, c, c2)?.expect("gradual variation implies a decomposition");
    let mut dead: HashSet<(BTreeSet<usize>, BTreeSet<usize>)> = HashSet::new();
    let mut moves = Vec::new();
    if !peel(space, c, &cells, &goal, &mut moves, &mut dead) {
        return precondition("no order of single-cell moves keeps the path simple");
    }
    let mut steps = vec![c.clone()];
    steps.extend(moves.iter().map(|(_, s)| s.clone()));
    *steps.last_mut().unwrap() = c2.clone();
    let moves = moves.into_iter().map(|(f, _)| BTreeSet::from([CellId::new(2, f)])).collect();
    Ok(DeformationTrace { kind: TraceKind::Minimal, steps, moves })
}

pub(crate) fn peel(
    space: &DiscreteSpace,
    cur: &CellChain,
    remaining: &BTreeSet<usize>,
    goal: &BTreeSet<usize>,
    out: &mut Vec<(usize, CellChain)>,
    dead: &mut HashSet<(BTreeSet<usize>, BTreeSet<usize>)>,
) -> bool {
    let edges = cur.edge_set(space).expect("valid path");
    if remaining.is_empty() {
        return &edges == goal;
    }
    let key = (edges, remaining.clone());
    if dead.contains(&key) {
        return false;
    }
    for &f in remaining {
        if let Ok(next) = apply_cell_move(space, cur, f) {
            let mut rest = remaining.clone();
            rest.remove(&f);
            out.push((f, next.clone()));
            if peel(space, &next, &rest, goal, out, dead) {
                return true;
            }
            out.pop();
        }
    }
    dead.insert(key);
    false
}
