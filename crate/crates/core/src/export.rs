//! OFF snapshots of complexes and contraction traces.
//!
//! Vertices get layered coordinates: breadth-first layers from vertex 0
//! (unreachable vertices form one extra layer), layer L sitting on the circle
//! of radius L + 1 at height L, its vertices spaced evenly in ascending id
//! order. Every snapshot lists all vertices so ids stay stable across files.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::complex::{CellId, DiscreteSpace, VertexId};
use crate::error::Result;
use crate::separation::ContractionTrace;

pub fn layered_layout(space: &DiscreteSpace) -> Vec<[f64; 3]> {
    let n = space.num_vertices();
    let mut layer: Vec<Option<usize>> = vec![None; n];
    if n > 0 {
        layer[0] = Some(0);
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &w in space.neighbors(v) {
                if layer[w].is_none() {
                    layer[w] = Some(layer[v].unwrap() + 1);
                    queue.push_back(w);
                }
            }
        }
    }
    let extra = layer.iter().flatten().max().map_or(0, |m| m + 1);
    let layer: Vec<usize> = layer.into_iter().map(|l| l.unwrap_or(extra)).collect();
    let mut out = vec![[0.0; 3]; n];
    for l in 0..=extra {
        let members: Vec<VertexId> = (0..n).filter(|&v| layer[v] == l).collect();
        for (i, &v) in members.iter().enumerate() {
            let theta = std::f64::consts::TAU * i as f64 / members.len() as f64;
            let r = (l + 1) as f64;
            out[v] = [r * theta.cos(), r * theta.sin(), l as f64];
        }
    }
    out
}

/// Polygons drawing a set of `dim`-cells: edges as 2-gons, 2-cells by their
/// walks, higher cells by the 2-cells of their closure.
pub fn polygons(space: &DiscreteSpace, dim: usize, cells: &BTreeSet<usize>) -> Vec<Vec<VertexId>> {
    match dim {
        0 => Vec::new(),
        1 => cells.iter().map(|&e| space.cells(1)[e].vertices().to_vec()).collect(),
        2 => cells.iter().map(|&f| space.cells(2)[f].cycle().to_vec()).collect(),
        _ => {
            let faces: BTreeSet<usize> = space
                .closure(cells.iter().map(|&c| CellId::new(dim, c)))
                .into_iter()
                .filter(|c| c.dim == 2)
                .map(|c| c.index)
                .collect();
            polygons(space, 2, &faces)
        }
    }
}

pub fn write_off(coords: &[[f64; 3]], faces: &[Vec<VertexId>]) -> String {
    let mut out = String::new();
    writeln!(out, "OFF").unwrap();
    writeln!(out, "{} {} 0", coords.len(), faces.len()).unwrap();
    for [x, y, z] in coords {
        writeln!(out, "{x:.6} {y:.6} {z:.6}").unwrap();
    }
    for f in faces {
        let ids: Vec<String> = f.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{} {}", f.len(), ids.join(" ")).unwrap();
    }
    out
}

/// The 2-skeleton of a complex (its edges when there are no 2-cells).
pub fn complex_off(space: &DiscreteSpace) -> String {
    let dim = if space.top_dim() >= 2 { 2 } else { 1 };
    let all = (0..space.num_cells(dim)).collect();
    write_off(&layered_layout(space), &polygons(space, dim, &all))
}

/// One OFF file per surface of the trace (steps + 1 of them) and a log with
/// one line per step.
pub fn trace_snapshots(space: &DiscreteSpace, trace: &ContractionTrace) -> Result<(Vec<String>, String)> {
    let coords = layered_layout(space);
    let surfaces = trace.surfaces()?;
    let files = surfaces.iter().map(|s| write_off(&coords, &polygons(space, trace.dim - 1, s))).collect();
    let mut log = String::new();
    writeln!(log, "seed {} direction {:?} start {} cells", trace.seed, trace.direction, trace.start.len()).unwrap();
    for (i, r) in trace.steps.iter().enumerate() {
        writeln!(
            log,
            "step {} cell {} replaced {:?} replacement {:?} surface {} cells",
            i + 1,
            r.cell,
            r.replaced,
            r.replacement,
            surfaces[i + 1].len()
        )
        .unwrap();
    }
    Ok((files, log))
}
