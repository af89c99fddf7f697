//! End-to-end acceptance run. Prints one PASS or FAIL line per criterion and
//! exits non-zero when any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic;
use std::time::Instant;

use jordan_cells::deformation::{
    apply_cell_move, are_gradually_varied, cell_boundary, decompose_minimal_moves, detour_sequence, xor_sum,
};
use jordan_cells::flatness::{build_collar, is_locally_flat, is_locally_flat_triangulated, verify_collar};
use jordan_cells::format::{write_document, Document};
use jordan_cells::generators::{
    cube_boundary, cube_vertex, equator, figure_case, grid, grid_vertex, octahedron, simplex_boundary, torus_grid, torus_meridian, Family,
};
use jordan_cells::metrics::CellMetrics;
use jordan_cells::separation::{
    components_of_complement, contract_to_cell, flatten_path, invert_trace, is_pseudo_manifold, surface_cells, verify_contraction_trace,
    SeparationReport,
};
use jordan_cells::{CellChain, CellId, DiscreteSpace};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Parity sets of every simple dual path between each ordered pair of top
/// cells, plus whether some path there avoids s.
fn dual_path_oracle(space: &DiscreteSpace, s: &BTreeSet<usize>) -> BTreeMap<(usize, usize), (BTreeSet<bool>, bool)> {
    let k = space.top_dim();
    let top = space.cells(k);
    let adj: Vec<Vec<(usize, usize)>> = (0..top.len())
        .map(|a| {
            (0..top.len())
                .filter(|&b| b != a)
                .flat_map(|b| top[a].boundary().iter().filter(move |f| top[b].boundary().contains(f)).map(move |&f| (b, f)))
                .collect()
        })
        .collect();
    fn walk(
        adj: &[Vec<(usize, usize)>],
        s: &BTreeSet<usize>,
        start: usize,
        at: usize,
        crossings: usize,
        visited: &mut [bool],
        out: &mut BTreeMap<(usize, usize), (BTreeSet<bool>, bool)>,
    ) {
        let e = out.entry((start, at)).or_default();
        e.0.insert(crossings % 2 == 1);
        e.1 |= crossings == 0;
        for &(b, f) in &adj[at] {
            if !visited[b] {
                visited[b] = true;
                walk(adj, s, start, b, crossings + s.contains(&f) as usize, visited, out);
                visited[b] = false;
            }
        }
    }
    let mut out = BTreeMap::new();
    for start in 0..top.len() {
        let mut visited = vec![false; top.len()];
        visited[start] = true;
        walk(&adj, s, start, start, 0, &mut visited, &mut out);
    }
    out
}

fn sphere_instances() -> Vec<(&'static str, DiscreteSpace, CellChain, Vec<usize>)> {
    let o = octahedron();
    let oe = equator(&o, &Family::Octahedron).unwrap();
    let s4 = simplex_boundary(4).unwrap();
    let se = equator(&s4, &Family::SimplexBoundary(4)).unwrap();
    vec![("octahedron", o, oe, vec![4, 4]), ("4-simplex boundary", s4, se, vec![1, 4])]
}

fn separation() -> Outcome {
    let mut pairs = 0;
    for (name, space, eq, expected) in sphere_instances() {
        let k = space.top_dim();
        let r = components_of_complement(&space, &eq, false).map_err(|e| e.to_string())?;
        let mut sizes = r.sizes();
        sizes.sort();
        ensure!(sizes == expected, "{name}: sizes {sizes:?}");
        let s = surface_cells(&space, &eq).map_err(|e| e.to_string())?;
        let oracle = dual_path_oracle(&space, &s);
        for a in 0..space.num_cells(k) {
            for b in 0..space.num_cells(k) {
                let (parities, avoids) = &oracle[&(a, b)];
                let split = r.component_of(a) != r.component_of(b);
                ensure!(parities.len() == 1 && parities.contains(&split) && *avoids == !split, "{name}: cells {a} {b}");
                pairs += 1;
            }
        }
        let on_s = eq.vertex_set(&space);
        let off: Vec<usize> = (0..space.num_vertices()).filter(|v| !on_s.contains(v)).collect();
        for (i, &x) in off.iter().enumerate() {
            for &y in &off[i + 1..] {
                let (cx, cy) = (space.cells_containing(x, k)[0], space.cells_containing(y, k)[0]);
                let (parities, _) = &oracle[&(cx, cy)];
                ensure!(parities.len() == 1, "{name}: vertices {x} {y}");
                if let Some(&odd) = r.crossing_parities.get(&(x, y)) {
                    ensure!(parities.contains(&odd), "{name}: reported parity of {x} {y}");
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("sizes 4/4 and 1/4; {pairs} cell and vertex pairs agree with every simple dual path"))
}

fn common_boundary() -> Outcome {
    for (name, space, eq, _) in sphere_instances() {
        let k = space.top_dim();
        let r: SeparationReport = components_of_complement(&space, &eq, false).map_err(|e| e.to_string())?;
        let s = surface_cells(&space, &eq).map_err(|e| e.to_string())?;
        ensure!(r.boundary_check.iter().all(|&b| b), "{name}: boundary_check {:?}", r.boundary_check);
        for &f in &s {
            for comp in &r.components {
                let n = space.cofaces(CellId::new(k - 1, f)).iter().filter(|c| comp.contains(c)).count();
                ensure!(n == 1, "{name}: cell {f} meets a component {n} times");
            }
        }
    }
    Ok("every cell of s bounds exactly one top cell of each component".into())
}

fn contraction_to_a_cell() -> Outcome {
    let space = simplex_boundary(4).unwrap();
    let eq = equator(&space, &Family::SimplexBoundary(4)).unwrap();
    let s = surface_cells(&space, &eq).unwrap();
    let r = components_of_complement(&space, &eq, false).map_err(|e| e.to_string())?;
    let comp = r.components.iter().find(|c| c.len() == 4).ok_or("no 4-cell component")?;
    let seed = *comp.iter().next().unwrap();
    let trace = contract_to_cell(&space, comp, &s, seed).map_err(|e| e.to_string())?;
    ensure!(trace.len() == 3, "{} steps", trace.len());
    ensure!(verify_contraction_trace(&space, &trace).is_empty(), "trace does not verify");
    let surfaces = trace.surfaces().map_err(|e| e.to_string())?;
    for (i, surf) in surfaces.iter().enumerate() {
        ensure!(is_pseudo_manifold(&space, 2, surf), "surface {i} is not a closed pseudo-manifold");
    }
    for (i, step) in trace.steps.iter().enumerate() {
        let a = CellChain::cells(2, surfaces[i].iter().copied());
        let b = CellChain::cells(2, surfaces[i + 1].iter().copied());
        let x = xor_sum(&space, &a, &b).map_err(|e| e.to_string())?;
        ensure!(x == cell_boundary(&space, CellId::new(3, step.cell)), "step {i}: xor_sum is not the removed cell's boundary");
    }
    let inverse = invert_trace(&trace).map_err(|e| e.to_string())?;
    let replayed = inverse.surfaces().map_err(|e| e.to_string())?;
    let text = |cells: &BTreeSet<usize>| write_document(&Document::new(space.clone()).with_chain("s", CellChain::cells(2, cells.iter().copied())));
    ensure!(
        text(replayed.last().unwrap()).unwrap() == write_document(&Document::new(space.clone()).with_chain("s", eq.clone())).unwrap(),
        "inverse replay does not end at s"
    );
    Ok("3 removals, pseudo-manifold surfaces, xor steps match, inverse replays to s".into())
}

fn distance_equality() -> Outcome {
    let mut checked = 0;
    for n in [3, 4] {
        let s = simplex_boundary(n).unwrap();
        let r = CellMetrics::new(&s).verify_distance_equality().map_err(|e| e.to_string())?;
        ensure!(r.mismatch.is_none(), "simplex {n}: {:?}", r.mismatch);
        checked += r.pairs_checked;
    }
    Ok(format!("{checked} (pair, level) checks, zero mismatches"))
}

fn flatness_and_collar() -> Outcome {
    let captions = [("fig2a", true), ("fig3a", false), ("fig3b", false), ("fig3c", false), ("fig5", true), ("fig6a", false), ("fig6b", false)];
    let mut cases: Vec<(String, DiscreteSpace, CellChain, Option<bool>)> = captions
        .iter()
        .map(|&(id, v)| {
            let c = figure_case(id).unwrap();
            (id.to_string(), c.space, c.curve, Some(v))
        })
        .collect();
    let o = octahedron();
    let eq = equator(&o, &Family::Octahedron).unwrap();
    cases.push(("octahedron equator".into(), o, eq, None));
    for (name, space, curve, verdict) in &cases {
        let flat = is_locally_flat(space, curve).map_err(|e| e.to_string())?.is_flat();
        if let Some(v) = verdict {
            ensure!(flat == *v, "{name}: flat={flat}, caption says {v}");
        }
        match build_collar(space, curve) {
            Ok(cert) => {
                ensure!(flat, "{name}: collar built for a non-flat curve");
                ensure!(verify_collar(space, curve, &cert).is_valid(), "{name}: collar does not verify");
            }
            Err(_) => ensure!(!flat, "{name}: flat but no collar"),
        }
    }
    let fig5 = figure_case("fig5").unwrap();
    ensure!(is_locally_flat_triangulated(&fig5.space, &fig5.curve).map_err(|e| e.to_string())?.is_flat(), "fig5 triangulated test");
    Ok(format!("{} cases: collar exists exactly when flat; captions matched", cases.len()))
}

/// A random self-avoiding walk on the grid, stopped at a dead end or after
/// `max_len` vertices.
fn random_curve(rng: &mut ChaCha8Rng, g: &DiscreteSpace, max_len: usize) -> CellChain {
    let mut walk = vec![rng.gen_range(0..g.num_vertices())];
    while walk.len() < max_len {
        let last = *walk.last().unwrap();
        let mut next: Vec<usize> = g.neighbors(last).iter().copied().filter(|v| !walk.contains(v)).collect();
        next.shuffle(rng);
        match next.first() {
            Some(&v) => walk.push(v),
            None => break,
        }
    }
    CellChain::path(walk)
}

fn rectangle_cycles(width: usize, height: usize) -> Vec<CellChain> {
    let mut out = Vec::new();
    for (x0, y0) in (0..width).flat_map(|x| (0..height).map(move |y| (x, y))) {
        for (x1, y1) in (x0 + 1..=width).flat_map(|x| (y0 + 1..=height).map(move |y| (x, y))) {
            let mut w = Vec::new();
            w.extend((x0..x1).map(|x| (x, y0)));
            w.extend((y0..y1).map(|y| (x1, y)));
            w.extend((x0 + 1..=x1).rev().map(|x| (x, y1)));
            w.extend((y0 + 1..=y1).rev().map(|y| (x0, y)));
            let half = w.len() / 2 + 1;
            let ids: Vec<usize> = w.iter().map(|&(x, y)| grid_vertex(width, x, y)).collect();
            out.push(CellChain::path(ids[..half].to_vec()));
            out.push(CellChain::cycle(ids));
        }
    }
    out
}

fn deformation_algebra() -> Outcome {
    let g = grid(6, 6, true).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let empty = CellChain::cells(1, BTreeSet::new());
    let edges = |c: &CellChain| CellChain::cells(1, c.edge_set(&g).unwrap());
    for i in 0..1000 {
        let c = random_curve(&mut rng, &g, 12);
        let d = random_curve(&mut rng, &g, 12);
        let cd = xor_sum(&g, &c, &d).map_err(|e| e.to_string())?;
        ensure!(xor_sum(&g, &cd, &d).unwrap() == edges(&c), "pair {i}: (C + D) + D != C");
        ensure!(xor_sum(&g, &cd, &c).unwrap() == edges(&d), "pair {i}: (C + D) + C != D");
        ensure!(xor_sum(&g, &c, &c).unwrap() == empty, "pair {i}: C + C != 0");
        ensure!(xor_sum(&g, &c, &empty).unwrap() == edges(&c), "pair {i}: C + 0 != C");
    }

    let mut moves = 0;
    let mut round_trips = 0;
    for triangulated in [false, true] {
        let g = grid(4, 3, triangulated).unwrap();
        for c in rectangle_cycles(4, 3) {
            let ce = c.edge_set(&g).unwrap();
            for f in 0..g.num_cells(2) {
                let Ok(next) = apply_cell_move(&g, &c, f) else { continue };
                if next.validate(&g).is_err() || next.as_path().is_some_and(|(w, _)| w.len() < 2) {
                    continue;
                }
                let a = cell_boundary(&g, CellId::new(2, f));
                ensure!(xor_sum(&g, &c, &next).unwrap() == a, "move {f}: XorSum is not the cell");
                ensure!(xor_sum(&g, &xor_sum(&g, &c, &a).unwrap(), &a).unwrap() == CellChain::cells(1, ce.clone()), "move {f}");
                ensure!(are_gradually_varied(&g, &c, &next).map_err(|e| e.to_string())?, "{c:?} across {f} is not gradually varied");
                moves += 1;
                let trace = decompose_minimal_moves(&g, &c, &next).map_err(|e| e.to_string())?;
                ensure!(trace.last().edge_set(&g).unwrap() == next.edge_set(&g).unwrap(), "decomposition of {c:?} across {f}");
                round_trips += 1;
            }
        }
    }
    let tg = grid(6, 3, true).unwrap();
    let on = |pts: &[(usize, usize)]| pts.iter().map(|&(x, y)| grid_vertex(6, x, y)).collect::<Vec<_>>();
    let straight = CellChain::path(on(&[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1), (5, 1), (6, 1)]));
    let bumped = CellChain::path(on(&[(0, 1), (1, 2), (1, 1), (2, 1), (3, 2), (3, 1), (4, 1), (5, 2), (5, 1), (6, 1)]));
    for (a, b) in [(&straight, &bumped), (&bumped, &straight)] {
        let t = decompose_minimal_moves(&tg, a, b).map_err(|e| e.to_string())?;
        ensure!(t.num_moves() == 3 && t.last().edge_set(&tg).unwrap() == b.edge_set(&tg).unwrap(), "three-bump decomposition");
        round_trips += 1;
    }
    Ok(format!("1000 curve pairs; {moves} single-cell moves gradually varied; {round_trips} decompositions round-trip"))
}

fn detours() -> Outcome {
    let s = simplex_boundary(4).unwrap();
    let abc = s.cells_within(2, &BTreeSet::from([0, 1, 2]))[0];
    let t = detour_sequence(&s, &CellChain::path(vec![0, 1, 2]), &CellChain::path(vec![0, 2]), abc).map_err(|e| e.to_string())?;
    let expected: Vec<CellChain> = [vec![0, 1, 2], vec![0, 3, 1, 2], vec![0, 3, 2], vec![0, 2]].into_iter().map(CellChain::path).collect();
    ensure!(t.steps == expected, "tetrahedron detour {:?}", t.steps);
    ensure!(t.moves.iter().all(|m| !m.contains(&CellId::new(2, abc))), "tetrahedron detour used the forbidden cell");

    let c = cube_boundary(4).unwrap();
    let v = |b: &str| cube_vertex(b);
    let abcd = c.cells_within(2, &BTreeSet::from([v("0000"), v("1000"), v("1100"), v("0100")]))[0];
    let c0 = CellChain::path(vec![v("0000"), v("1000"), v("1100")]);
    let c1 = CellChain::path(vec![v("0000"), v("0100"), v("1100")]);
    let t = detour_sequence(&c, &c0, &c1, abcd).map_err(|e| e.to_string())?;
    ensure!(t.num_moves() == 5, "cube detour took {} moves", t.num_moves());
    ensure!(t.moves.iter().all(|m| !m.contains(&CellId::new(2, abcd))), "cube detour used the forbidden cell");
    ensure!(t.last().edge_set(&c).unwrap() == c1.edge_set(&c).unwrap(), "cube detour ends elsewhere");
    Ok("ABC, ADBC, ADC, AC on the tetrahedron; 5 moves around the cube".into())
}

fn negative_control() -> Outcome {
    let t = torus_grid(4, 4).unwrap();
    let m = torus_meridian(4, 4, 0);
    let r = components_of_complement(&t, &m, false).map_err(|e| e.to_string())?;
    ensure!(r.components.len() == 1, "meridian gives {} components", r.components.len());
    ensure!(t.is_minimal_cycle(&m).map_err(|e| e.to_string())?, "meridian is not minimal");
    let me = m.edge_set(&t).unwrap();
    ensure!(
        t.cells(2).iter().all(|c| c.boundary().iter().copied().collect::<BTreeSet<_>>() != me),
        "a 2-cell is bounded by the meridian"
    );
    Ok("meridian: 1 component, minimal, bounds no 2-cell".into())
}

fn path_flattening() -> Outcome {
    let c = cube_boundary(4).unwrap();
    let facet = equator(&c, &Family::CubeBoundary(4)).unwrap();
    let on_s = facet.vertex_set(&c);
    let surface = c.closure_space(&surface_cells(&c, &facet).unwrap().iter().map(|&f| CellId::new(2, f)).collect::<BTreeSet<_>>());
    let path = |bits: &[&str]| CellChain::path(bits.iter().map(|b| cube_vertex(b)).collect());
    let fixtures = [
        (path(&["0001", "0000", "0100", "1100", "1000", "1001"]), path(&["0001", "0101", "1101", "1001"])),
        (
            path(&["0001", "0000", "0100", "1100", "1000", "1010", "0010", "0011"]),
            path(&["0001", "0101", "1101", "1001", "1011", "0011"]),
        ),
    ];
    for (i, (p_i, p_prev)) in fixtures.iter().enumerate() {
        let walk = p_i.as_path().unwrap().0;
        let entry = *walk.iter().find(|v| on_s.contains(v)).unwrap();
        let r = flatten_path(&c, &facet, p_i, p_prev).map_err(|e| e.to_string())?;
        ensure!(r.iterations >= 1, "fixture {i} was already flat");
        let new = r.path.as_path().unwrap().0;
        ensure!(r.entry == entry && new.contains(&entry), "fixture {i} lost the entry vertex");
        let inside: Vec<usize> = new.iter().copied().filter(|v| on_s.contains(v)).collect();
        let piece = CellChain::path(inside.clone());
        let surface = surface.as_ref().map_err(|e| e.to_string())?;
        let flat = is_locally_flat(surface, &piece).map_err(|e| e.to_string())?;
        ensure!(flat.is_flat(), "fixture {i}: intersection {inside:?} is not flat in s");
        for (j, step) in r.bridge.steps.iter().enumerate() {
            let meets = step.vertex_set(&c).iter().any(|v| on_s.contains(v));
            ensure!(meets == (j + 1 == r.bridge.len()), "fixture {i}: bridge step {j} touches s");
        }
    }
    Ok("2 fixtures: intersections flat in s, entry kept, bridges avoid s".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("separation", separation),
        ("common boundary", common_boundary),
        ("contraction to a cell", contraction_to_a_cell),
        ("graph and cell distance agree", distance_equality),
        ("flatness iff collar", flatness_and_collar),
        ("deformation algebra", deformation_algebra),
        ("detours", detours),
        ("negative control", negative_control),
        ("path flattening", path_flattening),
    ];
    panic::set_hook(Box::new(|_| {}));
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(run).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    println!("acceptance: {} of {} passed in {secs:.1}s", criteria.len() - failed, criteria.len());
    if failed > 0 || secs > 60.0 {
        std::process::exit(1);
    }
}
