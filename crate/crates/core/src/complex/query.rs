use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{CellChain, CellId, DiscreteSpace, VertexId};
use crate::error::{input, precondition, Result};

/// A set of cells of mixed dimension, as returned by star and link.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Subcomplex {
    pub cells: BTreeSet<CellId>,
}

impl Subcomplex {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, id: CellId) -> bool {
        self.cells.contains(&id)
    }

    /// Indices of the member cells of one dimension.
    pub fn of_dim(&self, dim: usize) -> BTreeSet<usize> {
        self.cells.range(CellId::new(dim, 0)..CellId::new(dim + 1, 0)).map(|c| c.index).collect()
    }

    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.of_dim(0)
    }
}

/// Direction of a sub-arc relative to a cycle's stored order. `Cw` means the
/// arc follows the stored order; the stored order of a vertex link is by
/// convention the clockwise one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleOrientation {
    Cw,
    Ccw,
}

impl CycleOrientation {
    pub fn flip(self) -> Self {
        match self {
            CycleOrientation::Cw => CycleOrientation::Ccw,
            CycleOrientation::Ccw => CycleOrientation::Cw,
        }
    }
}

/// One failed clause of the regular-manifold definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegularityViolation {
    /// Clause 1: the k-cells split into this many groups under adjacency
    /// through shared (k-1)-cells.
    NotConnected { components: usize },
    /// Clause 2: a (k-1)-cell lies in `count` k-cells (must be 1 or 2).
    FaceCount { face: usize, count: usize },
    /// Clause 3: the space has cells above dimension k.
    HigherCells { dim: usize, count: usize },
    /// Clause 4: the (k-1)-cells of a vertex link are not connected
    /// through (k-2)-cells, or the link is empty.
    LinkNotConnected { vertex: VertexId },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RegularityReport {
    pub violations: Vec<RegularityViolation>,
}

impl RegularityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Clause numbers (1-4) that failed, ascending, without repeats.
    pub fn failed_clauses(&self) -> Vec<u8> {
        let set: BTreeSet<u8> = self
            .violations
            .iter()
            .map(|v| match v {
                RegularityViolation::NotConnected { .. } => 1,
                RegularityViolation::FaceCount { .. } => 2,
                RegularityViolation::HigherCells { .. } => 3,
                RegularityViolation::LinkNotConnected { .. } => 4,
            })
            .collect();
        set.into_iter().collect()
    }
}

impl DiscreteSpace {
    fn check_vertices(&self, x: &BTreeSet<VertexId>) -> Result<()> {
        x.iter().try_for_each(|&v| self.check_vertex(v))
    }

    /// Edge indices of P(s): every edge with both endpoints in `s`.
    pub fn partial_graph(&self, s: &BTreeSet<VertexId>) -> Result<BTreeSet<usize>> {
        self.check_vertices(s)?;
        Ok(self.cells_within(1, s).into_iter().collect())
    }

    /// A simple closed path is minimal iff no proper vertex subset carries a
    /// cycle, which for a simple cycle means it has no chord.
    pub fn is_minimal_cycle(&self, c: &CellChain) -> Result<bool> {
        let Some((vs, true)) = c.as_path() else {
            return input("minimality is defined for closed paths");
        };
        c.validate(self)?;
        let set: BTreeSet<VertexId> = vs.iter().copied().collect();
        Ok(self.partial_graph(&set)?.len() == vs.len())
    }

    /// Every cell meeting `x`, together with all of its faces.
    pub fn star(&self, x: &BTreeSet<VertexId>) -> Result<Subcomplex> {
        if x.is_empty() {
            return input("star of an empty vertex set");
        }
        self.check_vertices(x)?;
        let mut touching = Vec::new();
        for &v in x {
            for d in 0..=self.top_dim() {
                touching.extend(self.cells_containing(v, d).iter().map(|&c| CellId::new(d, c)));
            }
        }
        Ok(Subcomplex { cells: self.closure(touching) })
    }

    /// The star with every cell touching `x` removed.
    pub fn link(&self, x: &BTreeSet<VertexId>) -> Result<Subcomplex> {
        let star = self.star(x)?;
        let cells = star
            .cells
            .into_iter()
            .filter(|&id| !self.cell(id).vertices.iter().any(|v| x.contains(v)))
            .collect();
        Ok(Subcomplex { cells })
    }

    /// The link of a vertex of an oriented 2-manifold as a walk in reference
    /// (clockwise) order, starting from its smallest vertex. The second value
    /// is false when the link is an open arc (a border vertex); then the walk
    /// runs from one end to the other.
    pub fn link_walk(&self, v: VertexId) -> Result<(Vec<VertexId>, bool)> {
        self.check_vertex(v)?;
        if self.top_dim() != 2 {
            return precondition("oriented vertex links need a 2-dimensional space");
        }
        // Each 2-cell around v contributes the arc b -> ... -> a of its walk
        // a -> v -> b.
        let mut arcs: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        let mut heads: BTreeSet<VertexId> = BTreeSet::new();
        for &f in self.cells_containing(v, 2) {
            let cyc = &self.cells[2][f].cycle;
            let n = cyc.len();
            let at = cyc.iter().position(|&w| w == v).expect("cell contains v");
            let arc: Vec<VertexId> = (1..n).map(|k| cyc[(at + k) % n]).collect();
            let start = arc[0];
            if arcs.insert(start, arc).is_some() {
                return precondition(format!("inconsistent orientation around vertex {v}"));
            }
        }
        if arcs.is_empty() {
            return precondition(format!("vertex {v} lies in no 2-cell"));
        }
        for arc in arcs.values() {
            heads.insert(*arc.last().unwrap());
        }
        let open_start = arcs.keys().copied().find(|s| !heads.contains(s));
        let first = open_start.unwrap_or_else(|| *arcs.keys().next().unwrap());
        let mut walk = Vec::new();
        let mut cur = first;
        let mut used = 0;
        while let Some(arc) = arcs.get(&cur) {
            walk.extend_from_slice(&arc[..arc.len() - 1]);
            cur = *arc.last().unwrap();
            used += 1;
            if cur == first || used > arcs.len() {
                break;
            }
        }
        let closed = open_start.is_none();
        if !closed {
            walk.push(cur);
        }
        if used != arcs.len() || (closed && cur != first) {
            return precondition(format!("link of vertex {v} is not a single cycle or arc"));
        }
        let distinct: BTreeSet<_> = walk.iter().collect();
        if distinct.len() != walk.len() {
            return precondition(format!("link of vertex {v} is not simple"));
        }
        if closed {
            let m = walk.iter().enumerate().min_by_key(|(_, &w)| w).map(|(i, _)| i).unwrap();
            walk.rotate_left(m);
        }
        Ok((walk, closed))
    }

    /// Checks the four regularity clauses for dimension `k`.
    pub fn check_regular(&self, k: usize) -> RegularityReport {
        let mut violations = Vec::new();
        let top = self.top_dim();
        if k == 0 || k > top {
            violations.push(RegularityViolation::NotConnected { components: 0 });
            return RegularityReport { violations };
        }
        let comps = self.top_cell_components(k);
        if comps != 1 {
            violations.push(RegularityViolation::NotConnected { components: comps });
        }
        for (face, cof) in self.cofaces[k - 1].iter().enumerate() {
            if k - 1 == 0 && cof.is_empty() {
                // isolated vertices are reported through clause 4
                continue;
            }
            if cof.is_empty() || cof.len() > 2 {
                violations.push(RegularityViolation::FaceCount { face, count: cof.len() });
            }
        }
        for d in k + 1..=top {
            if !self.cells[d].is_empty() {
                violations.push(RegularityViolation::HigherCells { dim: d, count: self.cells[d].len() });
            }
        }
        if k >= 2 {
            for v in 0..self.num_vertices() {
                if !self.link_connected(v, k) {
                    violations.push(RegularityViolation::LinkNotConnected { vertex: v });
                }
            }
        }
        RegularityReport { violations }
    }

    fn top_cell_components(&self, k: usize) -> usize {
        let n = self.cells[k].len();
        let mut seen = vec![false; n];
        let mut comps = 0;
        for root in 0..n {
            if seen[root] {
                continue;
            }
            comps += 1;
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(c) = queue.pop_front() {
                for &f in &self.cells[k][c].boundary {
                    for &g in &self.cofaces[k - 1][f] {
                        if !seen[g] {
                            seen[g] = true;
                            queue.push_back(g);
                        }
                    }
                }
            }
        }
        comps
    }

    fn link_connected(&self, v: VertexId, k: usize) -> bool {
        let link = match self.link(&BTreeSet::from([v])) {
            Ok(l) => l,
            Err(_) => return false,
        };
        let faces: Vec<usize> = link.of_dim(k - 1).into_iter().collect();
        if faces.is_empty() {
            return false;
        }
        let ridges = |c: usize| -> Vec<VertexId> {
            if k - 1 == 1 {
                self.cells[1][c].vertices.clone()
            } else {
                self.cells[k - 1][c].boundary.clone()
            }
        };
        let mut seen = vec![false; faces.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            let ra = ridges(faces[a]);
            for (j, &b) in faces.iter().enumerate() {
                if !seen[j] && ridges(b).iter().any(|r| ra.contains(r)) {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Regular and every (k-1)-cell in exactly two k-cells.
    pub fn is_closed_manifold(&self) -> Result<bool> {
        let k = self.top_dim();
        let report = self.check_regular(k);
        if !report.passed() {
            return precondition(format!("space is not a regular {k}-manifold: {:?}", report.violations));
        }
        Ok(self.cofaces[k - 1].iter().all(|c| c.len() == 2))
    }

    /// A path is a discrete curve when it contains no 2-cell's full vertex set.
    pub fn is_discrete_curve(&self, c: &CellChain) -> Result<bool> {
        c.validate(self)?;
        let set = c.vertex_set(self);
        Ok(self.cells_within(2, &set).is_empty())
    }

    /// Compares `sub_arc` with the stored order of the closed walk `cycle`.
    pub fn orientation_of_cycle(&self, cycle: &CellChain, sub_arc: &[VertexId]) -> Result<CycleOrientation> {
        let Some((walk, true)) = cycle.as_path() else {
            return input("reference cycle must be a closed path");
        };
        orientation_on_walk(walk, sub_arc)
    }
}

pub(crate) fn orientation_on_walk(walk: &[VertexId], sub_arc: &[VertexId]) -> Result<CycleOrientation> {
    if sub_arc.len() < 2 {
        return input("an arc needs at least one edge");
    }
    let n = walk.len();
    let pos = |v: VertexId| walk.iter().position(|&w| w == v);
    let Some(p0) = pos(sub_arc[0]) else {
        return input(format!("vertex {} is not on the cycle", sub_arc[0]));
    };
    let follows = |step: usize| sub_arc.iter().enumerate().all(|(i, &v)| walk[(p0 + step * i) % n] == v);
    if sub_arc.len() <= n && follows(1) {
        Ok(CycleOrientation::Cw)
    } else if sub_arc.len() <= n && follows(n - 1) {
        Ok(CycleOrientation::Ccw)
    } else {
        input(format!("arc {sub_arc:?} does not lie on the cycle"))
    }
}
