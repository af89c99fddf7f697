use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{edge_direction, Cell, DiscreteSpace, VertexId};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
struct Pending {
    boundary: Vec<usize>,
    vertices: Vec<VertexId>,
    cycle: Option<Vec<VertexId>>,
}

/// Incremental constructor for [`DiscreteSpace`]. All structural checks run
/// in [`SpaceBuilder::build`].
#[derive(Debug, Clone)]
pub struct SpaceBuilder {
    num_vertices: usize,
    edges: Vec<[VertexId; 2]>,
    edge_lookup: HashMap<(VertexId, VertexId), usize>,
    higher: Vec<Vec<Pending>>,
    top_dim: usize,
    orient: bool,
}

fn load<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Load(msg.into()))
}

impl SpaceBuilder {
    pub fn new(num_vertices: usize) -> Self {
        SpaceBuilder {
            num_vertices,
            edges: Vec::new(),
            edge_lookup: HashMap::new(),
            higher: Vec::new(),
            top_dim: 1,
            orient: false,
        }
    }

    /// Declares the top dimension even when the upper registries are empty.
    pub fn top_dim(&mut self, k: usize) -> &mut Self {
        self.top_dim = self.top_dim.max(k);
        self
    }

    /// Makes `build` flip 2-cell orientations so that neighbours agree, when
    /// the top dimension is 2.
    pub fn auto_orient(&mut self) -> &mut Self {
        self.orient = true;
        self
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<usize> {
        if u >= self.num_vertices || v >= self.num_vertices {
            return load(format!("edge ({u}, {v}) uses an unknown vertex"));
        }
        if u == v {
            return load(format!("self-loop at vertex {u}"));
        }
        let key = (u.min(v), u.max(v));
        if self.edge_lookup.contains_key(&key) {
            return load(format!("duplicate edge ({}, {})", key.0, key.1));
        }
        let idx = self.edges.len();
        self.edges.push([key.0, key.1]);
        self.edge_lookup.insert(key, idx);
        Ok(idx)
    }

    /// Returns the edge index, adding the edge when missing.
    pub fn ensure_edge(&mut self, u: VertexId, v: VertexId) -> Result<usize> {
        match self.edge_lookup.get(&(u.min(v), u.max(v))) {
            Some(&i) => Ok(i),
            None => self.add_edge(u, v),
        }
    }

    /// Adds a 2-cell bounded by the closed walk `cycle`; its edges are
    /// created as needed and the walk order becomes the reference orientation.
    pub fn add_polygon(&mut self, cycle: &[VertexId]) -> Result<usize> {
        if cycle.len() < 3 {
            return load(format!("polygon {cycle:?} has fewer than 3 vertices"));
        }
        let n = cycle.len();
        let mut boundary = Vec::with_capacity(n);
        for i in 0..n {
            boundary.push(self.ensure_edge(cycle[i], cycle[(i + 1) % n])?);
        }
        let idx = self.push_cell(2, boundary)?;
        self.higher[0][idx].cycle = Some(cycle.to_vec());
        Ok(idx)
    }

    /// Adds a cell of dimension `dim >= 2` from boundary indices into the
    /// `dim - 1` registry. For a 2-cell, listing the edges in walk order fixes
    /// the reference orientation.
    pub fn add_cell(&mut self, dim: usize, boundary: Vec<usize>) -> Result<usize> {
        self.push_cell(dim, boundary)
    }

    /// Adds a cell whose boundary is every `dim - 1` cell spanned by
    /// `vertices`.
    pub fn add_cell_spanning(&mut self, dim: usize, vertices: &[VertexId]) -> Result<usize> {
        if dim < 2 {
            return load("cells added by span must have dimension at least 2");
        }
        let set: BTreeSet<VertexId> = vertices.iter().copied().collect();
        let boundary: Vec<usize> = if dim == 2 {
            self.edges
                .iter()
                .enumerate()
                .filter(|(_, e)| set.contains(&e[0]) && set.contains(&e[1]))
                .map(|(i, _)| i)
                .collect()
        } else {
            self.higher
                .get(dim - 3)
                .map(|reg| {
                    reg.iter()
                        .enumerate()
                        .filter(|(_, c)| c.vertices.iter().all(|v| set.contains(v)))
                        .map(|(i, _)| i)
                        .collect()
                })
                .unwrap_or_default()
        };
        self.push_cell(dim, boundary)
    }

    fn face_vertices(&self, dim: usize, idx: usize) -> &[VertexId] {
        if dim == 1 {
            &self.edges[idx]
        } else {
            &self.higher[dim - 2][idx].vertices
        }
    }

    fn registry_len(&self, dim: usize) -> usize {
        match dim {
            0 => self.num_vertices,
            1 => self.edges.len(),
            d => self.higher.get(d - 2).map_or(0, Vec::len),
        }
    }

    fn push_cell(&mut self, dim: usize, boundary: Vec<usize>) -> Result<usize> {
        if dim < 2 {
            return load(format!("add_cell needs dimension >= 2, got {dim}"));
        }
        if boundary.is_empty() {
            return load(format!("{dim}-cell with empty boundary"));
        }
        let faces = self.registry_len(dim - 1);
        if let Some(&b) = boundary.iter().find(|&&b| b >= faces) {
            return load(format!("{dim}-cell refers to unknown {}-cell {b}", dim - 1));
        }
        let mut vs: BTreeSet<VertexId> = BTreeSet::new();
        for &b in &boundary {
            vs.extend(self.face_vertices(dim - 1, b).iter().copied());
        }
        while self.higher.len() < dim - 1 {
            self.higher.push(Vec::new());
        }
        self.top_dim = self.top_dim.max(dim);
        let reg = &mut self.higher[dim - 2];
        reg.push(Pending { boundary, vertices: vs.into_iter().collect(), cycle: None });
        Ok(reg.len() - 1)
    }

    /// Validates everything and freezes the space.
    pub fn build(&self) -> Result<DiscreteSpace> {
        let top = self.top_dim;
        let mut cells: Vec<Vec<Cell>> = Vec::with_capacity(top + 1);
        cells.push(
            (0..self.num_vertices)
                .map(|v| Cell { dim: 0, vertices: vec![v], boundary: Vec::new(), cycle: Vec::new() })
                .collect(),
        );
        cells.push(
            self.edges
                .iter()
                .map(|e| Cell { dim: 1, vertices: e.to_vec(), boundary: e.to_vec(), cycle: Vec::new() })
                .collect(),
        );
        for d in 2..=top {
            let empty = Vec::new();
            let reg = self.higher.get(d - 2).unwrap_or(&empty);
            let mut out = Vec::with_capacity(reg.len());
            let mut seen: HashMap<&[VertexId], usize> = HashMap::new();
            for (i, p) in reg.iter().enumerate() {
                if let Some(j) = seen.insert(&p.vertices, i) {
                    return load(format!("{d}-cells {j} and {i} have the same vertex set {:?}", p.vertices));
                }
                out.push(check_cell(d, i, p, &cells)?);
            }
            cells.push(out);
        }
        if self.orient && top == 2 {
            orient_surface(&mut cells);
        }
        check_well_attached(&cells)?;
        Ok(DiscreteSpace::from_parts(cells))
    }
}

fn check_cell(d: usize, i: usize, p: &Pending, cells: &[Vec<Cell>]) -> Result<Cell> {
    let mut bset: BTreeSet<usize> = BTreeSet::new();
    for &b in &p.boundary {
        if !bset.insert(b) {
            return load(format!("{d}-cell {i} lists boundary cell {b} twice"));
        }
    }
    // Closedness: every (d-2)-face of the boundary is used exactly twice.
    let mut count: HashMap<usize, usize> = HashMap::new();
    for &b in &p.boundary {
        for &f in &cells[d - 1][b].boundary {
            *count.entry(f).or_default() += 1;
        }
    }
    if let Some((f, c)) = count.iter().find(|(_, &c)| c != 2) {
        return load(format!("{d}-cell {i} boundary is not closed: {}-cell {f} used {c} times", d - 2));
    }
    // Connectedness of the boundary through shared (d-2)-faces.
    let blist: Vec<usize> = bset.iter().copied().collect();
    let mut reached = vec![false; blist.len()];
    reached[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for (j, &b) in blist.iter().enumerate() {
            if !reached[j]
                && cells[d - 1][blist[a]].boundary.iter().any(|f| cells[d - 1][b].boundary.contains(f))
            {
                reached[j] = true;
                queue.push_back(j);
            }
        }
    }
    if reached.iter().any(|r| !r) {
        return load(format!("{d}-cell {i} boundary is not connected"));
    }
    // Minimality: no other (d-1)-cell lies inside the vertex set.
    let vset: BTreeSet<VertexId> = p.vertices.iter().copied().collect();
    for (j, c) in cells[d - 1].iter().enumerate() {
        if !bset.contains(&j) && c.vertices.iter().all(|v| vset.contains(v)) {
            return load(format!("{d}-cell {i} boundary is not minimal: {}-cell {j} lies inside it", d - 1));
        }
    }
    let (boundary, cycle) = if d == 2 {
        let cycle = match &p.cycle {
            Some(c) => {
                let distinct: BTreeSet<_> = c.iter().collect();
                if distinct.len() != c.len() {
                    return load(format!("2-cell {i} walk {c:?} repeats a vertex"));
                }
                c.clone()
            }
            None => walk_edges(&p.boundary, &cells[1]),
        };
        if cycle.len() != p.boundary.len() {
            return load(format!("2-cell {i} boundary is not a simple cycle"));
        }
        let n = cycle.len();
        let boundary: Vec<usize> = (0..n)
            .map(|k| {
                let (a, b) = (cycle[k], cycle[(k + 1) % n]);
                p.boundary
                    .iter()
                    .copied()
                    .find(|&e| {
                        let v = &cells[1][e].vertices;
                        (v[0] == a.min(b)) && (v[1] == a.max(b))
                    })
                    .ok_or_else(|| Error::Load(format!("2-cell {i} walk leaves its boundary")))
            })
            .collect::<Result<_>>()?;
        (boundary, cycle)
    } else {
        (p.boundary.clone(), Vec::new())
    };
    Ok(Cell { dim: d, vertices: p.vertices.clone(), boundary, cycle })
}

/// Walks a closed edge set. The start vertex is the one of the first listed
/// edge not shared with the second, so listing edges in walk order
/// reproduces that walk.
fn walk_edges(boundary: &[usize], edges: &[Cell]) -> Vec<VertexId> {
    let e0 = &edges[boundary[0]].vertices;
    let start = match boundary.get(1) {
        Some(&b1) => {
            let e1 = &edges[b1].vertices;
            if e1.contains(&e0[0]) && !e1.contains(&e0[1]) {
                e0[1]
            } else {
                e0[0]
            }
        }
        None => e0[0],
    };
    let mut used = vec![false; boundary.len()];
    let mut walk = vec![start];
    let mut cur = start;
    loop {
        let next = boundary.iter().enumerate().find(|(k, &e)| !used[*k] && edges[e].vertices.contains(&cur));
        let Some((k, &e)) = next else { break };
        used[k] = true;
        let v = &edges[e].vertices;
        cur = if v[0] == cur { v[1] } else { v[0] };
        if cur == start {
            break;
        }
        walk.push(cur);
    }
    walk
}

fn reverse_cell(c: &mut Cell) {
    // Keeping cycle[0] in place, edge k of the reversed walk is edge n-1-k of
    // the original one.
    c.cycle[1..].reverse();
    c.boundary.reverse();
}

/// Flips 2-cells so that each interior edge is walked in opposite directions
/// by its two 2-cells. Non-orientable inputs are left partially consistent.
fn orient_surface(cells: &mut [Vec<Cell>]) {
    let nf = cells[2].len();
    let mut faces_of_edge: Vec<Vec<usize>> = vec![Vec::new(); cells[1].len()];
    for (f, c) in cells[2].iter().enumerate() {
        for &e in &c.boundary {
            faces_of_edge[e].push(f);
        }
    }
    let mut done = vec![false; nf];
    for root in 0..nf {
        if done[root] {
            continue;
        }
        done[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(f) = queue.pop_front() {
            let boundary = cells[2][f].boundary.clone();
            for e in boundary {
                if faces_of_edge[e].len() != 2 {
                    continue;
                }
                let g = if faces_of_edge[e][0] == f { faces_of_edge[e][1] } else { faces_of_edge[e][0] };
                if done[g] {
                    continue;
                }
                let (u, v) = (cells[1][e].vertices[0], cells[1][e].vertices[1]);
                if edge_direction(&cells[2][f].cycle, u, v) == edge_direction(&cells[2][g].cycle, u, v) {
                    reverse_cell(&mut cells[2][g]);
                }
                done[g] = true;
                queue.push_back(g);
            }
        }
    }
}

/// Two cells of one dimension must meet in a vertex set whose partial graph
/// is connected.
fn check_well_attached(cells: &[Vec<Cell>]) -> Result<()> {
    let n = cells[0].len();
    let mut adj: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); n];
    for e in &cells[1] {
        adj[e.vertices[0]].insert(e.vertices[1]);
        adj[e.vertices[1]].insert(e.vertices[0]);
    }
    for (d, reg) in cells.iter().enumerate().skip(2) {
        let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, c) in reg.iter().enumerate() {
            for &v in &c.vertices {
                by_vertex[v].push(i);
            }
        }
        for (i, c) in reg.iter().enumerate() {
            let mut others: BTreeSet<usize> = BTreeSet::new();
            for &v in &c.vertices {
                others.extend(by_vertex[v].iter().copied().filter(|&j| j > i));
            }
            for j in others {
                let common: Vec<VertexId> =
                    c.vertices.iter().copied().filter(|v| reg[j].contains_vertex(*v)).collect();
                if !induces_connected(&common, &adj) {
                    return load(format!("{d}-cells {i} and {j} meet in a disconnected set {common:?}"));
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn induces_connected(set: &[VertexId], adj: &[BTreeSet<VertexId>]) -> bool {
    if set.len() <= 1 {
        return true;
    }
    let inside: BTreeSet<VertexId> = set.iter().copied().collect();
    let mut seen: BTreeSet<VertexId> = BTreeSet::from([set[0]]);
    let mut stack = vec![set[0]];
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if inside.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == inside.len()
}
