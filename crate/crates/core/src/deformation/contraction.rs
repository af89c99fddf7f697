use std::collections::{BTreeSet, HashMap};

use super::{apply_cell_move, are_side_gradually_varied, DeformationTrace, TraceKind};
use crate::complex::{CellChain, CellId, DiscreteSpace, VertexId};
use crate::error::{input, Result};

/// Outcome of [`verify_contraction`]; `reasons` lists every failed clause.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ContractionCheck {
    pub reasons: Vec<String>,
}

impl ContractionCheck {
    pub fn is_valid(&self) -> bool {
        self.reasons.is_empty()
    }
}

/// Checks a contraction of `cycle` to `p`: the trace starts at the cycle,
/// every step contains p, a vertex that has left the sequence never comes
/// back, consecutive steps are side-gradually varied, and the last step is
/// the single point p.
pub fn verify_contraction(space: &DiscreteSpace, cycle: &CellChain, p: VertexId, trace: &DeformationTrace) -> ContractionCheck {
    let mut reasons = Vec::new();
    let Some(first) = trace.steps.first() else {
        return ContractionCheck { reasons: vec!["empty trace".into()] };
    };
    if trace.kind != TraceKind::SideGradual {
        reasons.push(format!("trace kind is {:?}, expected side-gradual", trace.kind));
    }
    let same_start = match (first.edge_set(space), cycle.edge_set(space)) {
        (Ok(a), Ok(b)) => a == b && first.vertex_set(space) == cycle.vertex_set(space),
        _ => false,
    };
    if !same_start {
        reasons.push("first step is not the given cycle".into());
    }
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    let mut dropped: BTreeSet<VertexId> = BTreeSet::new();
    for (i, step) in trace.steps.iter().enumerate() {
        if let Err(e) = step.validate(space) {
            reasons.push(format!("step {i}: {e}"));
            continue;
        }
        let verts = step.vertex_set(space);
        if !verts.contains(&p) {
            reasons.push(format!("step {i} does not contain {p}"));
        }
        if let Some(q) = verts.intersection(&dropped).next() {
            reasons.push(format!("step {i} brings back dropped vertex {q}"));
        }
        dropped.extend(seen.difference(&verts).copied());
        seen.extend(verts);
    }
    for (i, w) in trace.steps.windows(2).enumerate() {
        match are_side_gradually_varied(space, &w[0], &w[1]) {
            Ok(true) => {}
            Ok(false) => reasons.push(format!("steps {i} and {} are not side-gradually varied", i + 1)),
            Err(e) => reasons.push(format!("steps {i} and {}: {e}", i + 1)),
        }
    }
    if trace.last().as_path() != Some((&[p][..], false)) {
        reasons.push(format!("last step is not the point {p}"));
    }
    ContractionCheck { reasons }
}

struct Search<'a> {
    space: &'a DiscreteSpace,
    p: VertexId,
    /// Best remaining depth already explored without success, per state.
    failed: HashMap<(BTreeSet<usize>, BTreeSet<VertexId>), usize>,
}

impl Search<'_> {
    fn successors(&self, cur: &CellChain, seen: &BTreeSet<VertexId>) -> Vec<(usize, CellChain)> {
        let space = self.space;
        let (walk, _) = cur.as_path().expect("cycle");
        let verts: BTreeSet<VertexId> = walk.iter().copied().collect();
        let edges = cur.edge_set(space).expect("valid cycle");
        let mut faces: BTreeSet<usize> = BTreeSet::new();
        for &e in &edges {
            faces.extend(space.cofaces(CellId::new(1, e)).iter().copied());
        }
        let mut out = Vec::new();
        for f in faces {
            let cell = &space.cells(2)[f];
            let boundary: BTreeSet<usize> = cell.boundary().iter().copied().collect();
            if boundary == edges {
                if cell.contains_vertex(self.p) {
                    out.push((f, CellChain::path(vec![self.p])));
                }
                continue;
            }
            let Ok(next) = apply_cell_move(space, cur, f) else { continue };
            let nv = next.vertex_set(space);
            if !nv.contains(&self.p) {
                continue;
            }
            // Vertices seen earlier but absent now must stay absent.
            let gone: BTreeSet<VertexId> = seen.difference(&verts).copied().collect();
            if nv.iter().any(|v| gone.contains(v)) {
                continue;
            }
            if !matches!(are_side_gradually_varied(space, cur, &next), Ok(true)) {
                continue;
            }
            out.push((f, next));
        }
        out
    }

    fn dfs(&mut self, cur: &CellChain, seen: &BTreeSet<VertexId>, depth: usize, path: &mut Vec<(usize, CellChain)>) -> bool {
        if cur.as_path().is_some_and(|(w, closed)| !closed && w.len() == 1) {
            return true;
        }
        if depth == 0 {
            return false;
        }
        let verts = cur.vertex_set(self.space);
        let gone: BTreeSet<VertexId> = seen.difference(&verts).copied().collect();
        let key = (cur.edge_set(self.space).expect("valid"), gone);
        if self.failed.get(&key).is_some_and(|&d| d >= depth) {
            return false;
        }
        for (f, next) in self.successors(cur, seen) {
            let mut seen2 = seen.clone();
            seen2.extend(next.vertex_set(self.space));
            path.push((f, next.clone()));
            if self.dfs(&next, &seen2, depth - 1, path) {
                return true;
            }
            path.pop();
        }
        self.failed.insert(key, depth);
        false
    }
}

/// Iterative-deepening search over single-cell moves for a contraction of
/// `cycle` to `p` with at most `budget` moves. `Ok(None)` is inconclusive.
pub fn search_contraction(space: &DiscreteSpace, cycle: &CellChain, p: VertexId, budget: usize) -> Result<Option<DeformationTrace>> {
    cycle.validate(space)?;
    match cycle.as_path() {
        Some((w, true)) if w.contains(&p) => {}
        Some((_, true)) => return input(format!("vertex {p} is not on the cycle")),
        _ => return input("contraction starts from a closed path"),
    }
    let mut search = Search { space, p, failed: HashMap::new() };
    let seen = cycle.vertex_set(space);
    for depth in 1..=budget {
        let mut path = Vec::new();
        if search.dfs(cycle, &seen, depth, &mut path) {
            let mut steps = vec![cycle.clone()];
            let mut moves = Vec::new();
            for (f, s) in path {
                steps.push(s);
                moves.push(BTreeSet::from([CellId::new(2, f)]));
            }
            return Ok(Some(DeformationTrace { kind: TraceKind::SideGradual, steps, moves }));
        }
    }
    Ok(None)
}
