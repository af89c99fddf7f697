//! Local flatness of curves and submanifolds, focal points, and collars.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::complex::{CellChain, CellId, DiscreteSpace, VertexId};
use crate::error::{input, precondition, Error, Result};
use crate::metrics::CellMetrics;

/// Vertex set, closure and edges of a chain, precomputed for repeated
/// intersection tests.
#[derive(Debug, Clone)]
pub struct CurveData {
    pub vertices: BTreeSet<VertexId>,
    pub cells: BTreeSet<CellId>,
    pub edges: BTreeSet<usize>,
}

impl CurveData {
    pub fn new(space: &DiscreteSpace, c: &CellChain) -> Result<Self> {
        c.validate(space)?;
        if c.is_empty() {
            return input("empty chain");
        }
        let cells = space.closure(c.cell_ids(space)?);
        Ok(Self::from_closure(cells))
    }

    pub fn from_closure(cells: BTreeSet<CellId>) -> Self {
        let vertices = cells.iter().filter(|c| c.dim == 0).map(|c| c.index).collect();
        let edges = cells.iter().filter(|c| c.dim == 1).map(|c| c.index).collect();
        CurveData { vertices, cells, edges }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    /// p and q are joined by an edge of the chain.
    pub fn adjacent(&self, space: &DiscreteSpace, p: VertexId, q: VertexId) -> bool {
        space.edge_between(p, q).is_some_and(|e| self.edges.contains(&e))
    }
}

/// Why a pair of chain vertices breaks local flatness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlatnessViolation {
    /// The pair lies at distance 1 at `level` but is not an edge of the chain.
    TooClose { p: VertexId, q: VertexId, level: usize },
    /// The pair lies at distance 2 at `level` through `mediator`, whose link
    /// does not meet the chain in an arc through both.
    BadMediator { p: VertexId, q: VertexId, level: usize, mediator: VertexId },
}

impl FlatnessViolation {
    pub fn pair(&self) -> (VertexId, VertexId) {
        match *self {
            FlatnessViolation::TooClose { p, q, .. } | FlatnessViolation::BadMediator { p, q, .. } => (p, q),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlatnessReport {
    pub violations: Vec<FlatnessViolation>,
}

impl FlatnessReport {
    pub fn is_flat(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Link(a) restricted to the chain: its vertices and edges.
pub fn link_meet(space: &DiscreteSpace, a: VertexId, curve: &CurveData) -> Result<(BTreeSet<VertexId>, BTreeSet<usize>)> {
    let link = space.link(&BTreeSet::from([a]))?;
    let mut verts = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for id in link.cells.intersection(&curve.cells) {
        match id.dim {
            0 => {
                verts.insert(id.index);
            }
            1 => {
                edges.insert(id.index);
            }
            _ => {}
        }
    }
    Ok((verts, edges))
}

/// Whether a vertex set is connected through the given edges.
fn connected_by(space: &DiscreteSpace, verts: &BTreeSet<VertexId>, edges: &BTreeSet<usize>) -> bool {
    let Some(&start) = verts.iter().next() else { return false };
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &e in edges {
        let v = space.cells(1)[e].vertices();
        adj.entry(v[0]).or_default().push(v[1]);
        adj.entry(v[1]).or_default().push(v[0]);
    }
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in adj.get(&v).into_iter().flatten() {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == verts.len()
}

/// Link(a) meets the chain in a connected piece with at least one edge
/// containing p and q. A whole closed curve counts as such a piece.
pub fn is_arc_through(space: &DiscreteSpace, a: VertexId, curve: &CurveData, p: VertexId, q: VertexId) -> Result<bool> {
    let (verts, edges) = link_meet(space, a, curve)?;
    Ok(!edges.is_empty() && verts.contains(&p) && verts.contains(&q) && connected_by(space, &verts, &edges))
}

/// Mediators of a distance-2 pair at one level: common neighbours off the
/// chain at level 1; at higher levels the off-chain vertices of every
/// (i-1)-cell joining an i-cell at p to an i-cell at q.
fn mediators(space: &DiscreteSpace, curve: &CurveData, p: VertexId, q: VertexId, level: usize) -> BTreeSet<VertexId> {
    let mut out = BTreeSet::new();
    if level == 1 {
        let np = space.neighbors(p);
        for &a in space.neighbors(q) {
            if np.binary_search(&a).is_ok() && !curve.contains(a) {
                out.insert(a);
            }
        }
        return out;
    }
    let at_q: BTreeSet<usize> = space.cells_containing(q, level).iter().copied().collect();
    for &x1 in space.cells_containing(p, level) {
        for &f in space.cells(level)[x1].boundary() {
            let joins = space
                .cofaces(CellId::new(level - 1, f))
                .iter()
                .any(|x2| *x2 != x1 && at_q.contains(x2));
            if joins {
                out.extend(space.cells(level - 1)[f].vertices().iter().copied().filter(|v| !curve.contains(*v)));
            }
        }
    }
    out
}

fn check_flatness(space: &DiscreteSpace, c: &CellChain, levels: std::ops::RangeInclusive<usize>) -> Result<FlatnessReport> {
    check_curve_flatness(space, &CurveData::new(space, c)?, levels)
}

/// Flatness of precomputed chain data over the given distance levels.
pub fn check_curve_flatness(space: &DiscreteSpace, curve: &CurveData, levels: std::ops::RangeInclusive<usize>) -> Result<FlatnessReport> {
    let curve = curve.clone();
    let metrics = CellMetrics::new(space);
    let verts: Vec<VertexId> = curve.vertices.iter().copied().collect();
    let mut violations = Vec::new();
    let mut link_cache: BTreeMap<(VertexId, VertexId, VertexId), bool> = BTreeMap::new();
    for (i, &p) in verts.iter().enumerate() {
        let dist: Vec<Vec<Option<usize>>> =
            levels.clone().map(|l| metrics.distances_from(p, l)).collect::<Result<_>>()?;
        for &q in &verts[i + 1..] {
            if curve.adjacent(space, p, q) {
                continue;
            }
            let ds: Vec<(usize, usize)> = levels
                .clone()
                .zip(dist.iter())
                .filter_map(|(l, d)| d[q].map(|d| (l, d)))
                .collect();
            if let Some(&(level, _)) = ds.iter().find(|(l, d)| *d == 1 && *l == 1) {
                violations.push(FlatnessViolation::TooClose { p, q, level });
                continue;
            }
            let at_two: Vec<usize> = ds.iter().filter(|(_, d)| *d == 2).map(|(l, _)| *l).collect();
            if at_two.is_empty() {
                if let Some(&(level, _)) = ds.iter().find(|(_, d)| *d == 1) {
                    violations.push(FlatnessViolation::TooClose { p, q, level });
                }
                continue;
            }
            'levels: for level in at_two {
                for a in mediators(space, &curve, p, q, level) {
                    let ok = match link_cache.get(&(a, p, q)) {
                        Some(&ok) => ok,
                        None => {
                            let ok = is_arc_through(space, a, &curve, p, q)?;
                            link_cache.insert((a, p, q), ok);
                            ok
                        }
                    };
                    if !ok {
                        violations.push(FlatnessViolation::BadMediator { p, q, level, mediator: a });
                        break 'levels;
                    }
                }
            }
        }
    }
    Ok(FlatnessReport { violations })
}

/// Flatness on a triangulated space, where only graph distance matters.
pub fn is_locally_flat_triangulated(space: &DiscreteSpace, c: &CellChain) -> Result<FlatnessReport> {
    if !space.is_triangulated() {
        return precondition("the triangulated flatness test needs a triangulated space");
    }
    check_flatness(space, c, 1..=1)
}

/// Flatness with distances taken at every level 1..=k. A pair at distance 2
/// at several levels must pass the mediator test at each of them.
pub fn is_locally_flat(space: &DiscreteSpace, c: &CellChain) -> Result<FlatnessReport> {
    if c.dim() >= space.top_dim() {
        return input(format!("chain of dimension {} is not below the space dimension", c.dim()));
    }
    check_flatness(space, c, 1..=space.top_dim())
}

/// A vertex off the chain whose link meets the chain in a connected arc of
/// at least two edges, with that arc's vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FocalPoint {
    pub vertex: VertexId,
    pub arc: BTreeSet<VertexId>,
}

pub fn find_focal_points(space: &DiscreteSpace, c: &CellChain) -> Result<Vec<FocalPoint>> {
    let curve = CurveData::new(space, c)?;
    let mut candidates: BTreeSet<VertexId> = BTreeSet::new();
    for &v in &curve.vertices {
        candidates.extend(space.neighbors(v).iter().copied().filter(|w| !curve.contains(*w)));
        for d in 2..=space.top_dim() {
            for &cell in space.cells_containing(v, d) {
                candidates.extend(space.cells(d)[cell].vertices().iter().copied().filter(|w| !curve.contains(*w)));
            }
        }
    }
    let mut out = Vec::new();
    for a in candidates {
        let (verts, edges) = link_meet(space, a, &curve)?;
        if edges.len() >= 2 && connected_by(space, &verts, &edges) {
            out.push(FocalPoint { vertex: a, arc: verts });
        }
    }
    Ok(out)
}

/// Two sheets flanking a chain, each vertex paired with a chain vertex it
/// shares a cell with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollarCertificate {
    pub base: CellChain,
    pub sheets: [BTreeSet<VertexId>; 2],
    pub witness: BTreeMap<VertexId, VertexId>,
}

/// Builds a collar after confirming flatness.
pub fn build_collar(space: &DiscreteSpace, c: &CellChain) -> Result<CollarCertificate> {
    let report = is_locally_flat(space, c)?;
    if let Some(v) = report.violations.first() {
        return precondition(format!("chain is not locally flat: {v:?}"));
    }
    construct_collar(space, c)
}

/// Builds a collar from the shape of Link(C) alone, without consulting the
/// flatness test. Fails when the neighbourhood of C does not split into two
/// clean sheets.
pub fn construct_collar(space: &DiscreteSpace, c: &CellChain) -> Result<CollarCertificate> {
    let curve = CurveData::new(space, c)?;
    let no_collar = |msg: String| Error::Precondition(format!("no collar: {msg}"));
    let fail = |msg: String| Err(no_collar(msg));
    if c.dim() + 1 != space.top_dim() {
        return fail(format!("chain dimension {} is not one below the space dimension", c.dim()));
    }
    // C must be full: every cell spanned by its vertices belongs to it.
    for d in 1..=space.top_dim() {
        for cell in space.cells_within(d, &curve.vertices) {
            if !curve.cells.contains(&CellId::new(d, cell)) {
                return fail(format!("{d}-cell {cell} is spanned by chain vertices"));
            }
        }
    }
    let link = space.link(&curve.vertices)?;
    let link_verts = link.vertices();
    if link_verts.is_empty() {
        return fail("empty link".into());
    }
    let link_edges = link.of_dim(1);
    let closed = match c {
        CellChain::Path { closed, vertices } => *closed || vertices.len() == 1 && space.top_dim() == 1,
        CellChain::Cells { .. } => true,
    };
    let sheets: Vec<BTreeSet<VertexId>> = if closed {
        let comps = components(space, &link_verts, &link_edges);
        if comps.len() != 2 {
            return fail(format!("the link splits into {} pieces, expected 2", comps.len()));
        }
        comps
    } else {
        open_curve_sheets(space, c, &curve, &link_verts, &link_edges).map_err(no_collar)?
    };
    if space.top_dim() == 2 {
        for sheet in &sheets {
            let degs = degrees(space, sheet, &link_edges);
            if degs.values().any(|&d| d > 2) {
                return fail("a sheet branches".into());
            }
        }
    }
    let mut sheets = sheets;
    sheets.sort_by_key(|s| s.iter().next().copied());
    let mut witness = BTreeMap::new();
    for sheet in &sheets {
        for &w in sheet {
            match curve.vertices.iter().copied().find(|&v| space.share_cell(v, w)) {
                Some(v) => {
                    witness.insert(w, v);
                }
                None => return fail(format!("sheet vertex {w} is not next to the chain")),
            }
        }
    }
    let [a, b]: [BTreeSet<VertexId>; 2] = sheets.try_into().expect("two sheets");
    Ok(CollarCertificate { base: c.clone(), sheets: [a, b], witness })
}

fn open_curve_sheets(
    space: &DiscreteSpace,
    c: &CellChain,
    curve: &CurveData,
    link_verts: &BTreeSet<VertexId>,
    link_edges: &BTreeSet<usize>,
) -> std::result::Result<Vec<BTreeSet<VertexId>>, String> {
    let (walk, _) = c.as_path().expect("open chains are paths");
    let ends = [walk[0], walk[walk.len() - 1]];
    let degs = degrees(space, link_verts, link_edges);
    if degs.values().any(|&d| d != 2) || components(space, link_verts, link_edges).len() != 1 {
        return Err("the link of an open curve is not a single cycle".into());
    }
    // Caps: link vertices that see the chain only through one endpoint.
    let is_cap = |w: VertexId| {
        let mut touched: BTreeSet<VertexId> = BTreeSet::new();
        for d in 1..=space.top_dim() {
            for &cell in space.cells_containing(w, d) {
                touched.extend(space.cells(d)[cell].vertices().iter().copied().filter(|v| curve.contains(*v)));
            }
        }
        touched.len() <= 1 && touched.iter().all(|v| ends.contains(v))
    };
    let kept: BTreeSet<VertexId> = link_verts.iter().copied().filter(|&w| !is_cap(w)).collect();
    let comps = components(space, &kept, link_edges);
    if comps.len() != 2 {
        return Err(format!("the link minus its end caps has {} pieces, expected 2", comps.len()));
    }
    Ok(comps)
}

fn degrees(space: &DiscreteSpace, verts: &BTreeSet<VertexId>, edges: &BTreeSet<usize>) -> BTreeMap<VertexId, usize> {
    let mut deg: BTreeMap<VertexId, usize> = verts.iter().map(|&v| (v, 0)).collect();
    for &e in edges {
        let v = space.cells(1)[e].vertices();
        if verts.contains(&v[0]) && verts.contains(&v[1]) {
            *deg.get_mut(&v[0]).unwrap() += 1;
            *deg.get_mut(&v[1]).unwrap() += 1;
        }
    }
    deg
}

/// Connected pieces of `verts` under the edges among them.
fn components(space: &DiscreteSpace, verts: &BTreeSet<VertexId>, edges: &BTreeSet<usize>) -> Vec<BTreeSet<VertexId>> {
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &e in edges {
        let v = space.cells(1)[e].vertices();
        if verts.contains(&v[0]) && verts.contains(&v[1]) {
            adj.entry(v[0]).or_default().push(v[1]);
            adj.entry(v[1]).or_default().push(v[0]);
        }
    }
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    let mut out = Vec::new();
    for &root in verts {
        if seen.contains(&root) {
            continue;
        }
        let mut comp = BTreeSet::from([root]);
        seen.insert(root);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in adj.get(&v).into_iter().flatten() {
                if seen.insert(w) {
                    comp.insert(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Outcome of [`verify_collar`]; `reasons` lists every failed check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CollarCheck {
    pub reasons: Vec<String>,
}

impl CollarCheck {
    pub fn is_valid(&self) -> bool {
        self.reasons.is_empty()
    }
}

/// Re-checks a certificate from scratch: disjointness, distance one to the
/// base through the witness, connected sheets, and no self-intersection
/// (on surfaces every sheet vertex has at most two sheet neighbours).
pub fn verify_collar(space: &DiscreteSpace, c: &CellChain, cert: &CollarCertificate) -> CollarCheck {
    let mut reasons = Vec::new();
    let curve = match CurveData::new(space, c) {
        Ok(cd) => cd,
        Err(e) => return CollarCheck { reasons: vec![format!("base: {e}")] },
    };
    let [b1, b2] = &cert.sheets;
    for (k, sheet) in cert.sheets.iter().enumerate() {
        if sheet.is_empty() {
            reasons.push(format!("sheet {k} is empty"));
        }
        if let Some(&v) = sheet.iter().find(|&&v| v >= space.num_vertices()) {
            reasons.push(format!("sheet {k} has unknown vertex {v}"));
            return CollarCheck { reasons };
        }
        if let Some(v) = sheet.iter().find(|v| curve.contains(**v)) {
            reasons.push(format!("sheet {k} contains chain vertex {v}"));
        }
        for &w in sheet {
            match cert.witness.get(&w) {
                Some(&v) if curve.contains(v) && space.share_cell(v, w) && v != w => {}
                Some(&v) => reasons.push(format!("witness {v} of sheet vertex {w} is not at distance 1 on the chain")),
                None => reasons.push(format!("sheet vertex {w} has no witness")),
            }
        }
        let all_edges: BTreeSet<usize> = (0..space.num_cells(1)).collect();
        if components(space, sheet, &all_edges).len() > 1 {
            reasons.push(format!("sheet {k} is not connected"));
        }
        if space.top_dim() == 2 && degrees(space, sheet, &all_edges).values().any(|&d| d > 2) {
            reasons.push(format!("sheet {k} intersects itself"));
        }
    }
    if let Some(v) = b1.intersection(b2).next() {
        reasons.push(format!("sheets meet at vertex {v}"));
    }
    CollarCheck { reasons }
}
