//! Line-oriented text formats for complexes with named chains, contraction
//! and deformation traces, and separation reports.
//!
//! ```text
//! DSC 1
//! dim 2
//! vertices 4
//! edges 6
//! 0 1
//! ...
//! cells 2 4
//! 0 1 2 | 0 3 1
//! ...
//! chain equator 1
//! 0 3 5
//! ```
//!
//! A 2-cell lists its boundary edges in the order of its oriented walk.
//! Chains list sorted cell indices on the line after their header; a 1-chain
//! that forms a simple path or cycle is read back as that path.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::complex::{CellChain, CellId, DiscreteSpace, SpaceBuilder};
use crate::deformation::{DeformationTrace, TraceKind};
use crate::error::{Error, Result};
use crate::separation::{ContractionTrace, Direction, Removal, SeparationReport};

/// A complex with named chains, in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub space: DiscreteSpace,
    pub chains: Vec<(String, CellChain)>,
}

impl Document {
    pub fn new(space: DiscreteSpace) -> Self {
        Document { space, chains: Vec::new() }
    }

    pub fn with_chain(mut self, name: &str, chain: CellChain) -> Self {
        self.chains.push((name.to_string(), chain));
        self
    }

    pub fn chain(&self, name: &str) -> Option<&CellChain> {
        self.chains.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn keyed(key: &str, rest: &str) -> String {
    if rest.is_empty() {
        key.to_string()
    } else {
        format!("{key} {rest}")
    }
}

fn chain_cells(space: &DiscreteSpace, c: &CellChain) -> Result<(usize, BTreeSet<usize>)> {
    match c {
        CellChain::Path { vertices, .. } if vertices.len() == 1 => Ok((0, BTreeSet::from([vertices[0]]))),
        CellChain::Path { .. } => Ok((1, c.edge_set(space)?)),
        CellChain::Cells { dim, cells } => Ok((*dim, cells.clone())),
    }
}

pub fn write_document(doc: &Document) -> Result<String> {
    let space = &doc.space;
    let mut out = String::new();
    let k = space.top_dim();
    writeln!(out, "DSC 1").unwrap();
    writeln!(out, "dim {k}").unwrap();
    writeln!(out, "vertices {}", space.num_vertices()).unwrap();
    writeln!(out, "edges {}", space.num_cells(1)).unwrap();
    for (u, v) in space.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    for d in 2..=k {
        writeln!(out, "cells {d} {}", space.num_cells(d)).unwrap();
        for c in space.cells(d) {
            writeln!(out, "{} | {}", join(c.vertices()), join(c.boundary())).unwrap();
        }
    }
    for (name, chain) in &doc.chains {
        chain.validate(space)?;
        let (dim, cells) = chain_cells(space, chain)?;
        writeln!(out, "chain {name} {dim}").unwrap();
        writeln!(out, "{}", join(cells)).unwrap();
    }
    Ok(out)
}

struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let mut lines: Vec<&str> = text.lines().collect();
        while lines.last().is_some_and(|l| l.trim().is_empty()) {
            lines.pop();
        }
        Lines { lines, pos: 0 }
    }

    fn done(&self) -> bool {
        self.pos >= self.lines.len()
    }

    /// Next line with its 1-based number.
    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.lines.get(self.pos) {
            Some(l) => {
                self.pos += 1;
                Ok((self.pos, l))
            }
            None => Err(err(self.pos + 1, 1, format!("unexpected end of file, expected {what}"))),
        }
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn number(line: usize, (col, tok): (usize, &str)) -> Result<usize> {
    tok.parse().map_err(|_| err(line, col, format!("expected a number, found {tok:?}")))
}

fn numbers(line: usize, toks: &[(usize, &str)]) -> Result<Vec<usize>> {
    toks.iter().map(|&t| number(line, t)).collect()
}

/// A line of the form `key n`.
fn header(lines: &mut Lines, key: &str) -> Result<(usize, usize)> {
    let (n, text) = lines.next(key)?;
    let t = tokens(text);
    match t.as_slice() {
        [(_, k), v] if *k == key => Ok((n, number(n, *v)?)),
        [(c, k), ..] if *k != key => Err(err(n, *c, format!("expected {key:?}, found {k:?}"))),
        _ => Err(err(n, 1, format!("expected `{key} <number>`"))),
    }
}

fn expect_magic(lines: &mut Lines, magic: &str) -> Result<()> {
    let (n, text) = lines.next("header")?;
    if text.trim_end() != format!("{magic} 1") {
        return Err(err(n, 1, format!("expected `{magic} 1`")));
    }
    Ok(())
}

/// Splits a line at its `|` tokens into `parts` groups.
fn split_bar(n: usize, text: &str, parts: usize) -> Result<Vec<Vec<(usize, &str)>>> {
    let t = tokens(text);
    let mut out = vec![Vec::new()];
    for tok in t {
        if tok.1 == "|" {
            out.push(Vec::new());
        } else {
            out.last_mut().unwrap().push(tok);
        }
    }
    if out.len() != parts {
        return Err(err(n, 1, format!("expected {} `|` separators", parts - 1)));
    }
    Ok(out)
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut lines = Lines::new(text);
    expect_magic(&mut lines, "DSC")?;
    let (dim_line, k) = header(&mut lines, "dim")?;
    if k < 1 {
        return Err(err(dim_line, 5, "dimension must be at least 1"));
    }
    let (_, nv) = header(&mut lines, "vertices")?;
    let (_, ne) = header(&mut lines, "edges")?;
    let mut b = SpaceBuilder::new(nv);
    b.top_dim(k);
    let load = |n: usize, e: Error| err(n, 1, e.to_string());
    for _ in 0..ne {
        let (n, text) = lines.next("an edge")?;
        let t = tokens(text);
        if t.len() != 2 {
            return Err(err(n, 1, "an edge line holds two vertex ids"));
        }
        let (u, v) = (number(n, t[0])?, number(n, t[1])?);
        b.add_edge(u, v).map_err(|e| load(n, e))?;
    }
    let mut listed = Vec::new();
    for d in 2..=k {
        let (n, text) = lines.next("a cells header")?;
        let t = tokens(text);
        let count = match t.as_slice() {
            [(_, "cells"), dt, ct] => {
                if number(n, *dt)? != d {
                    return Err(err(n, dt.0, format!("expected cells of dimension {d}")));
                }
                number(n, *ct)?
            }
            _ => return Err(err(n, 1, format!("expected `cells {d} <count>`"))),
        };
        for _ in 0..count {
            let (n, text) = lines.next("a cell")?;
            let halves = split_bar(n, text, 2)?;
            let verts = numbers(n, &halves[0])?;
            let boundary = numbers(n, &halves[1])?;
            let idx = b.add_cell(d, boundary).map_err(|e| load(n, e))?;
            listed.push((n, d, idx, verts));
        }
    }
    let mut pending = Vec::new();
    while !lines.done() {
        let (n, text) = lines.next("a chain")?;
        let t = tokens(text);
        let (name, dim) = match t.as_slice() {
            [(_, "chain"), (_, name), dt] => (name.to_string(), number(n, *dt)?),
            [(c, _), ..] => return Err(err(n, *c, "expected `chain <name> <dim>`")),
            [] => return Err(err(n, 1, "blank line")),
        };
        if dim > k {
            return Err(err(n, 1, format!("chain dimension {dim} exceeds {k}")));
        }
        let (m, body) = lines.next("chain cells")?;
        let ids = tokens(body);
        pending.push((n, m, name, dim, ids.iter().map(|&t| number(m, t).map(|x| (t.0, x))).collect::<Result<Vec<_>>>()?));
    }
    let last = lines.lines.len().max(1);
    let space = b.build().map_err(|e| err(last, 1, e.to_string()))?;
    for (n, d, idx, verts) in listed {
        if space.cells(d)[idx].vertices() != verts.as_slice() {
            return Err(err(n, 1, format!("listed vertices {verts:?} do not match the boundary")));
        }
    }
    let mut doc = Document::new(space);
    for (n, m, name, dim, ids) in pending {
        if doc.chain(&name).is_some() {
            return Err(err(n, 7, format!("duplicate chain {name:?}")));
        }
        let len = doc.space.num_cells(dim);
        if let Some(&(c, x)) = ids.iter().find(|&&(_, x)| x >= len) {
            return Err(err(m, c, format!("no {dim}-cell {x}")));
        }
        let cells: BTreeSet<usize> = ids.iter().map(|&(_, x)| x).collect();
        let chain = match dim {
            0 if cells.len() == 1 => CellChain::path(cells.into_iter().collect()),
            1 => {
                let c = CellChain::Cells { dim, cells };
                c.to_path(&doc.space).unwrap_or(c)
            }
            _ => CellChain::Cells { dim, cells },
        };
        doc.chains.push((name, chain));
    }
    Ok(doc)
}

pub fn write_trace(trace: &ContractionTrace) -> String {
    let mut out = String::new();
    writeln!(out, "DSCTRACE 1").unwrap();
    writeln!(out, "dim {}", trace.dim).unwrap();
    writeln!(out, "seed {}", trace.seed).unwrap();
    let dir = match trace.direction {
        Direction::Contract => "contract",
        Direction::Expand => "expand",
    };
    writeln!(out, "direction {dir}").unwrap();
    writeln!(out, "{}", keyed("start", &join(&trace.start))).unwrap();
    writeln!(out, "steps {}", trace.steps.len()).unwrap();
    for r in &trace.steps {
        writeln!(out, "{} | {} | {}", r.cell, join(&r.replaced), join(&r.replacement)).unwrap();
    }
    out
}

pub fn parse_trace(text: &str) -> Result<ContractionTrace> {
    let mut lines = Lines::new(text);
    expect_magic(&mut lines, "DSCTRACE")?;
    let (_, dim) = header(&mut lines, "dim")?;
    let (_, seed) = header(&mut lines, "seed")?;
    let (n, text) = lines.next("direction")?;
    let direction = match tokens(text).as_slice() {
        [(_, "direction"), (_, "contract")] => Direction::Contract,
        [(_, "direction"), (_, "expand")] => Direction::Expand,
        _ => return Err(err(n, 1, "expected `direction contract|expand`")),
    };
    let (n, text) = lines.next("start")?;
    let t = tokens(text);
    if t.first().map(|t| t.1) != Some("start") {
        return Err(err(n, 1, "expected `start <cells>`"));
    }
    let start = numbers(n, &t[1..])?.into_iter().collect();
    let (_, count) = header(&mut lines, "steps")?;
    let mut steps = Vec::with_capacity(count);
    for _ in 0..count {
        let (n, text) = lines.next("a step")?;
        let parts = split_bar(n, text, 3)?;
        let cell = match numbers(n, &parts[0])?.as_slice() {
            [c] => *c,
            _ => return Err(err(n, 1, "a step starts with one cell id")),
        };
        steps.push(Removal {
            cell,
            replaced: numbers(n, &parts[1])?.into_iter().collect(),
            replacement: numbers(n, &parts[2])?.into_iter().collect(),
        });
    }
    if !lines.done() {
        return Err(err(lines.pos + 1, 1, "trailing content"));
    }
    Ok(ContractionTrace { dim, seed, direction, start, steps })
}

fn kind_name(kind: TraceKind) -> &'static str {
    match kind {
        TraceKind::Gradual => "gradual",
        TraceKind::Minimal => "minimal",
        TraceKind::SideGradual => "side-gradual",
    }
}

/// Writes a trace of chains: each step as `path`, `cycle` or `cells <dim>`
/// followed by ids, then one `move` line per transition listing `dim:index`.
pub fn write_deformation(trace: &DeformationTrace) -> String {
    let mut out = String::new();
    writeln!(out, "DSCTRACE 1").unwrap();
    writeln!(out, "kind {}", kind_name(trace.kind)).unwrap();
    writeln!(out, "steps {}", trace.steps.len()).unwrap();
    for step in &trace.steps {
        let line = match step {
            CellChain::Path { vertices, closed: false } => keyed("path", &join(vertices)),
            CellChain::Path { vertices, closed: true } => keyed("cycle", &join(vertices)),
            CellChain::Cells { dim, cells } => keyed(&format!("cells {dim}"), &join(cells)),
        };
        writeln!(out, "{line}").unwrap();
    }
    writeln!(out, "moves {}", trace.moves.len()).unwrap();
    for m in &trace.moves {
        writeln!(out, "{}", keyed("move", &join(m.iter().map(|c| format!("{}:{}", c.dim, c.index))))).unwrap();
    }
    out
}

pub fn parse_deformation(text: &str) -> Result<DeformationTrace> {
    let mut lines = Lines::new(text);
    expect_magic(&mut lines, "DSCTRACE")?;
    let (n, line) = lines.next("kind")?;
    let kind = match tokens(line).as_slice() {
        [(_, "kind"), (_, "gradual")] => TraceKind::Gradual,
        [(_, "kind"), (_, "minimal")] => TraceKind::Minimal,
        [(_, "kind"), (_, "side-gradual")] => TraceKind::SideGradual,
        _ => return Err(err(n, 1, "expected `kind gradual|minimal|side-gradual`")),
    };
    let (_, count) = header(&mut lines, "steps")?;
    let mut steps = Vec::with_capacity(count);
    for _ in 0..count {
        let (n, line) = lines.next("a step")?;
        let t = tokens(line);
        let step = match t.first().map(|t| t.1) {
            Some("path") => CellChain::path(numbers(n, &t[1..])?),
            Some("cycle") => CellChain::cycle(numbers(n, &t[1..])?),
            Some("cells") if t.len() >= 2 => CellChain::cells(number(n, t[1])?, numbers(n, &t[2..])?),
            _ => return Err(err(n, 1, "expected `path`, `cycle` or `cells <dim>`")),
        };
        steps.push(step);
    }
    let (_, count) = header(&mut lines, "moves")?;
    let mut moves = Vec::with_capacity(count);
    for _ in 0..count {
        let (n, line) = lines.next("a move")?;
        let t = tokens(line);
        if t.first().map(|t| t.1) != Some("move") {
            return Err(err(n, 1, "expected `move <dim:index>...`"));
        }
        let mut set = BTreeSet::new();
        for &(col, tok) in &t[1..] {
            let bad = || err(n, col, format!("expected dim:index, found {tok:?}"));
            let (d, i) = tok.split_once(':').ok_or_else(bad)?;
            set.insert(CellId::new(d.parse().map_err(|_| bad())?, i.parse().map_err(|_| bad())?));
        }
        moves.push(set);
    }
    if !lines.done() {
        return Err(err(lines.pos + 1, 1, "trailing content"));
    }
    Ok(DeformationTrace { kind, steps, moves })
}

pub fn write_separation(report: &SeparationReport) -> String {
    let mut out = String::new();
    writeln!(out, "DSCSEP 1").unwrap();
    writeln!(out, "components {}", report.components.len()).unwrap();
    for (i, (comp, ok)) in report.components.iter().zip(&report.boundary_check).enumerate() {
        let ok = if *ok { "yes" } else { "no" };
        writeln!(out, "component {i} size {} boundary {ok} cells {}", comp.len(), join(comp)).unwrap();
    }
    for (&(a, b), &odd) in &report.crossing_parities {
        writeln!(out, "parity {a} {b} {}", if odd { "odd" } else { "even" }).unwrap();
    }
    for w in &report.warnings {
        writeln!(out, "warning {w}").unwrap();
    }
    out
}
