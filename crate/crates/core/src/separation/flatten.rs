use std::collections::{BTreeSet, HashMap, VecDeque};

use super::surface_cells;
use crate::complex::{CellChain, CellId, DiscreteSpace, VertexId};
use crate::deformation::{apply_cell_move, are_gradually_varied, crosses_over, DeformationTrace, TraceKind};
use crate::error::{input, precondition, Error, Result};
use crate::flatness::{check_curve_flatness, is_locally_flat, CurveData, FlatnessReport};

/// Largest number of paths the bridge search visits.
const BRIDGE_STATES: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlattenResult {
    /// The path whose intersection with s is locally flat in s.
    pub path: CellChain,
    /// First vertex of the original path on s; also on `path`.
    pub entry: VertexId,
    /// Number of shortcuts taken.
    pub iterations: usize,
    /// Side-gradual steps from the previous path to `path`; only the last
    /// step meets s. A single step when nothing changed.
    pub bridge: DeformationTrace,
}

/// Flatness, inside s, of the vertices and edges a path shares with s.
pub fn intersection_flatness(surface: &DiscreteSpace, on_s: &BTreeSet<VertexId>, path: &[VertexId]) -> Result<FlatnessReport> {
    let mut cells: BTreeSet<CellId> = path.iter().filter(|v| on_s.contains(v)).map(|&v| CellId::vertex(v)).collect();
    for w in path.windows(2) {
        if let Some(e) = surface.edge_between(w[0], w[1]) {
            cells.insert(CellId::new(1, e));
        }
    }
    let curve = CurveData::from_closure(cells);
    check_curve_flatness(surface, &curve, 1..=surface.top_dim().max(1))
}

fn shortcut(surface: &DiscreteSpace, path: &[VertexId], p: VertexId, q: VertexId) -> Option<Vec<VertexId>> {
    let blocked: BTreeSet<VertexId> = path.iter().copied().filter(|&v| v != p && v != q).collect();
    let mut prev: HashMap<VertexId, VertexId> = HashMap::from([(p, p)]);
    let mut queue = VecDeque::from([p]);
    while let Some(v) = queue.pop_front() {
        if v == q {
            let mut out = vec![q];
            let mut c = q;
            while c != p {
                c = prev[&c];
                out.push(c);
            }
            out.reverse();
            return Some(out);
        }
        for &w in surface.neighbors(v) {
            if !blocked.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    None
}

/// Makes the part of `p_i` on s locally flat in s by repeatedly replacing
/// the stretch between an offending pair with a strictly shorter route
/// inside s, never cutting out the entry vertex. Then joins `p_iminus1` to
/// the result by single-cell moves over 2-cells not in s whose intermediate
/// paths stay off s.
pub fn flatten_path(space: &DiscreteSpace, s: &CellChain, p_i: &CellChain, p_iminus1: &CellChain) -> Result<FlattenResult> {
    let k = space.top_dim();
    let surface_ids = surface_cells(space, s)?;
    if !is_locally_flat(space, s)?.is_flat() {
        return precondition("s is not locally flat");
    }
    p_i.validate(space)?;
    p_iminus1.validate(space)?;
    let (Some((p, false)), Some((prev, false))) = (p_i.as_path(), p_iminus1.as_path()) else {
        return input("flattening works on open vertex paths");
    };
    if p[0] != prev[0] || p[p.len() - 1] != prev[prev.len() - 1] {
        return input("the two paths must share their endpoints");
    }
    let on_s = s.vertex_set(space);
    let Some(&entry) = p.iter().find(|v| on_s.contains(v)) else {
        return input("the path does not meet s");
    };
    let surface = space.closure_space(&surface_ids.iter().map(|&c| CellId::new(k - 1, c)).collect())?;

    let budget = space.num_cells(2);
    let mut path = p.to_vec();
    let mut iterations = 0;
    loop {
        let report = intersection_flatness(&surface, &on_s, &path)?;
        if report.is_flat() {
            break;
        }
        if iterations == budget {
            return Err(Error::BudgetExhausted { budget, state: format!("path {path:?}, violations {:?}", report.violations) });
        }
        let entry_at = path.iter().position(|&v| v == entry).unwrap();
        let step = report.violations.iter().find_map(|viol| {
            let (a, b) = viol.pair();
            let (ia, ib) = (path.iter().position(|&v| v == a)?, path.iter().position(|&v| v == b)?);
            let (lo, hi) = (ia.min(ib), ia.max(ib));
            if lo < entry_at && entry_at < hi {
                return None;
            }
            let route = shortcut(&surface, &path, path[lo], path[hi])?;
            (route.len() - 1 < hi - lo).then_some((lo, hi, route))
        });
        let Some((lo, hi, route)) = step else {
            return precondition(format!("no shortcut removes the violations {:?}", report.violations));
        };
        path.splice(lo..=hi, route);
        iterations += 1;
    }
    let result = CellChain::path(path);
    let bridge = if iterations == 0 {
        DeformationTrace::single(result.clone(), TraceKind::SideGradual)
    } else {
        bridge(space, &surface_ids, &on_s, p_iminus1, &result)?
    };
    Ok(FlattenResult { path: result, entry, iterations, bridge })
}

fn bridge(space: &DiscreteSpace, surface: &BTreeSet<usize>, on_s: &BTreeSet<VertexId>, from: &CellChain, to: &CellChain) -> Result<DeformationTrace> {
    let k = space.top_dim();
    let goal = to.edge_set(space)?;
    let check_cross = k == 2 && space.is_oriented() == Some(true);
    let mut parent: HashMap<BTreeSet<usize>, Option<(BTreeSet<usize>, usize)>> = HashMap::new();
    let mut chains: HashMap<BTreeSet<usize>, CellChain> = HashMap::new();
    let start = from.edge_set(space)?;
    parent.insert(start.clone(), None);
    chains.insert(start.clone(), from.clone());
    let mut queue = VecDeque::from([start]);
    let mut found = None;
    while let Some(key) = queue.pop_front() {
        if key == goal {
            found = Some(key);
            break;
        }
        if parent.len() > BRIDGE_STATES {
            break;
        }
        let cur = chains[&key].clone();
        let mut faces = BTreeSet::new();
        for &e in &key {
            faces.extend(space.cofaces(CellId::new(1, e)).iter().copied());
        }
        for f in faces {
            if k == 3 && surface.contains(&f) {
                continue;
            }
            let Ok(next) = apply_cell_move(space, &cur, f) else { continue };
            let nk = next.edge_set(space)?;
            if parent.contains_key(&nk) {
                continue;
            }
            if nk != goal && next.vertex_set(space).iter().any(|v| on_s.contains(v)) {
                continue;
            }
            if !are_gradually_varied(space, &cur, &next)? || (check_cross && crosses_over(space, &cur, &next)?) {
                continue;
            }
            parent.insert(nk.clone(), Some((key.clone(), f)));
            chains.insert(nk.clone(), next);
            queue.push_back(nk);
        }
    }
    let Some(mut key) = found else {
        return precondition("no bridge from the previous path avoids s");
    };
    let mut steps = Vec::new();
    let mut moves = Vec::new();
    while let Some(Some((back, f))) = parent.get(&key).cloned() {
        steps.push(chains[&key].clone());
        moves.push(BTreeSet::from([CellId::new(2, f)]));
        key = back;
    }
    steps.push(from.clone());
    steps.reverse();
    moves.reverse();
    *steps.last_mut().unwrap() = to.clone();
    Ok(DeformationTrace { kind: TraceKind::SideGradual, steps, moves })
}
