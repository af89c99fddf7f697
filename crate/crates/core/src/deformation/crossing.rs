use std::collections::{BTreeMap, BTreeSet};

use super::are_gradually_varied;
use crate::complex::{CellChain, DiscreteSpace, VertexId};
use crate::error::{input, precondition, Result};

/// A maximal stretch shared by both paths, as positions on the first path:
/// it starts at `p[from]` and ends at `p[to]` (`from == to` for a single
/// shared vertex).
struct Run {
    from: usize,
    to: usize,
}

fn neighbours_on(walk: &[VertexId], closed: bool, i: usize) -> (Option<VertexId>, Option<VertexId>) {
    let n = walk.len();
    let prev = if i > 0 { Some(walk[i - 1]) } else if closed && n > 1 { Some(walk[n - 1]) } else { None };
    let next = if i + 1 < n { Some(walk[i + 1]) } else if closed && n > 1 { Some(walk[0]) } else { None };
    (prev, next)
}

fn shared_runs(space: &DiscreteSpace, p: &[VertexId], p_closed: bool, on_q: &BTreeSet<VertexId>, q_edges: &BTreeSet<usize>) -> Vec<Run> {
    let n = p.len();
    let edge_shared = |i: usize| {
        let j = (i + 1) % n;
        (p_closed || i + 1 < n)
            && on_q.contains(&p[i])
            && on_q.contains(&p[j])
            && space.edge_between(p[i], p[j]).is_some_and(|e| q_edges.contains(&e))
    };
    let mut runs = Vec::new();
    let mut visited = vec![false; n];
    // For cycles, begin scanning right after a vertex that does not lead
    // into a shared edge from behind, so no run is split.
    let origin = if p_closed {
        match (0..n).find(|&i| !(on_q.contains(&p[i]) && edge_shared((i + n - 1) % n))) {
            Some(i) => i,
            None => return Vec::new(),
        }
    } else {
        0
    };
    for k in 0..n {
        let i = (origin + k) % n;
        if visited[i] || !on_q.contains(&p[i]) {
            continue;
        }
        let mut j = i;
        visited[i] = true;
        while edge_shared(j) && !visited[(j + 1) % n] {
            j = (j + 1) % n;
            visited[j] = true;
        }
        runs.push(Run { from: i, to: j });
    }
    runs
}

/// Whether `x` lies on the clockwise stretch of `walk` strictly between
/// `from` and `to`. Open link walks are read cyclically.
fn on_cw_arc(walk: &[VertexId], from: VertexId, to: VertexId, x: VertexId) -> Option<bool> {
    let n = walk.len();
    let pos = |v| walk.iter().position(|&w| w == v);
    let (a, b, c) = (pos(from)?, pos(to)?, pos(x)?);
    let d = |u: usize| (u + n - a) % n;
    Some(d(c) > 0 && d(c) < d(b))
}

/// Transversal crossing of two paths. For each maximal shared stretch p..q
/// entered from different vertices a (first path) and a' (second path) and
/// left towards different vertices t and t', the side of a' in the link of
/// p and the side of t' in the link of q are compared; a change of side is
/// a crossing. Needs an oriented 2-manifold.
pub fn crosses_over(space: &DiscreteSpace, c: &CellChain, c2: &CellChain) -> Result<bool> {
    if space.is_oriented() != Some(true) {
        return precondition("cross-over needs an oriented 2-dimensional space");
    }
    c.validate(space)?;
    c2.validate(space)?;
    let (Some((p, pc)), Some((q, qc))) = (c.as_path(), c2.as_path()) else {
        return input("cross-over compares vertex paths");
    };
    let on_q: BTreeSet<VertexId> = q.iter().copied().collect();
    let q_edges = c2.edge_set(space)?;
    let q_pos: BTreeMap<VertexId, usize> = q.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut links: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    let mut link_of = |v: VertexId| -> Result<Vec<VertexId>> {
        if let Some(w) = links.get(&v) {
            return Ok(w.clone());
        }
        let (w, _) = space.link_walk(v)?;
        links.insert(v, w.clone());
        Ok(w)
    };
    for run in shared_runs(space, p, pc, &on_q, &q_edges) {
        let (a, b) = neighbours_on(p, pc, run.from);
        let (s, t) = neighbours_on(p, pc, run.to);
        let (Some(a), Some(t)) = (a, t) else { continue };
        // The second path's neighbours just outside the run.
        let inside = |v: VertexId| {
            let mut k = run.from;
            loop {
                if p[k] == v {
                    return true;
                }
                if k == run.to {
                    return false;
                }
                k = (k + 1) % p.len();
            }
        };
        let outside = |v: VertexId| -> Option<VertexId> {
            let (x, y) = neighbours_on(q, qc, q_pos[&v]);
            [x, y].into_iter().flatten().find(|&w| !inside(w))
        };
        let ends = if run.from == run.to {
            let (x, y) = neighbours_on(q, qc, q_pos[&p[run.from]]);
            (x, y)
        } else {
            (outside(p[run.from]), outside(p[run.to]))
        };
        let (Some(a2), Some(t2)) = ends else { continue };
        if a2 == a || t2 == t {
            continue;
        }
        let b = b.expect("a run with an exit has a successor");
        let s = s.expect("a run with an entry has a predecessor");
        let lp = link_of(p[run.from])?;
        let lq = link_of(p[run.to])?;
        let side_in = on_cw_arc(&lp, b, a, a2);
        let side_out = on_cw_arc(&lq, t, s, t2);
        match (side_in, side_out) {
            (Some(x), Some(y)) if x != y => return Ok(true),
            (Some(_), Some(_)) => {}
            _ => return precondition("a path neighbour is missing from a vertex link"),
        }
    }
    Ok(false)
}

/// Gradually varied and not crossing.
pub fn are_side_gradually_varied(space: &DiscreteSpace, c: &CellChain, c2: &CellChain) -> Result<bool> {
    Ok(are_gradually_varied(space, c, c2)? && !crosses_over(space, c, c2)?)
}
