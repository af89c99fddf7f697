use std::collections::BTreeSet;

use jordan_cells::flatness::{
    build_collar, construct_collar, find_focal_points, is_locally_flat, is_locally_flat_triangulated, verify_collar, CollarCertificate,
    FlatnessViolation,
};
use jordan_cells::generators::{
    cube_boundary, equator, figure_case, grid, grid_vertex, octahedron, torus_grid, torus_meridian, Family, FIGURE_IDS, NORTH, SOUTH,
};
use jordan_cells::{CellChain, DiscreteSpace, Error};

/// Pairs of chain vertices that must be reported as too close: not joined
/// by a chain edge, and either joined by an edge of the space, or sharing a
/// higher cell while no level puts them at distance 2. Distances 1 and 2 at a
/// level are read off directly from the cells holding p and q.
fn close_pairs(space: &DiscreteSpace, c: &CellChain) -> BTreeSet<(usize, usize)> {
    let verts: Vec<usize> = c.vertex_set(space).into_iter().collect();
    let chain_edges = c.edge_set(space).unwrap();
    let holding = |v: usize, d: usize| -> Vec<usize> { (0..space.num_cells(d)).filter(|&x| space.cells(d)[x].contains_vertex(v)).collect() };
    let mut out = BTreeSet::new();
    for (i, &p) in verts.iter().enumerate() {
        for &q in &verts[i + 1..] {
            let edge = space.edge_between(p, q);
            if edge.is_some_and(|e| chain_edges.contains(&e)) {
                continue;
            }
            if edge.is_some() {
                out.insert((p, q));
                continue;
            }
            let np: BTreeSet<usize> = space.neighbors(p).iter().copied().collect();
            let mut two = space.neighbors(q).iter().any(|a| np.contains(a));
            let mut one = false;
            for d in 2..=space.top_dim() {
                let (hp, hq) = (holding(p, d), holding(q, d));
                if hp.iter().any(|x| hq.contains(x)) {
                    one = true;
                } else if hp.iter().any(|&x| hq.iter().any(|&y| space.cells(d)[x].boundary().iter().any(|f| space.cells(d)[y].boundary().contains(f)))) {
                    two = true;
                }
            }
            if one && !two {
                out.insert((p, q));
            }
        }
    }
    out
}

fn too_close(violations: &[FlatnessViolation]) -> BTreeSet<(usize, usize)> {
    violations
        .iter()
        .filter(|v| matches!(v, FlatnessViolation::TooClose { .. }))
        .map(|v| {
            let (p, q) = v.pair();
            (p.min(q), p.max(q))
        })
        .collect()
}

#[test]
fn figure_verdicts() {
    for id in FIGURE_IDS {
        let case = figure_case(id).unwrap();
        let report = is_locally_flat(&case.space, &case.curve).unwrap();
        if let Some(flat) = case.expected_flat {
            assert_eq!(report.is_flat(), flat, "{id}: {:?}", report.violations);
        }
        assert_eq!(too_close(&report.violations), close_pairs(&case.space, &case.curve), "{id}");
        if case.space.is_triangulated() {
            let tri = is_locally_flat_triangulated(&case.space, &case.curve).unwrap();
            assert_eq!(tri.is_flat(), report.is_flat(), "{id}");
        }
    }
}

#[test]
fn fig4_row_between_runs_is_not_flat() {
    let case = figure_case("fig4").unwrap();
    let report = is_locally_flat(&case.space, &case.curve).unwrap();
    assert!(!report.is_flat());
    assert!(report.violations.iter().any(|v| matches!(v, FlatnessViolation::BadMediator { .. })));
}

#[test]
fn fig6b_fails_only_through_two_cells() {
    let case = figure_case("fig6b").unwrap();
    let report = is_locally_flat(&case.space, &case.curve).unwrap();
    let ends = (grid_vertex(4, 1, 1), grid_vertex(4, 1, 3));
    assert!(report.violations.iter().any(|v| v.pair() == ends || v.pair() == (ends.1, ends.0)));
    assert!(report.violations.iter().all(|v| match *v {
        FlatnessViolation::BadMediator { level, .. } | FlatnessViolation::TooClose { level, .. } => level == 2,
    }));
}

#[test]
fn collar_exists_exactly_for_flat_figures() {
    for id in FIGURE_IDS {
        let case = figure_case(id).unwrap();
        let flat = is_locally_flat(&case.space, &case.curve).unwrap().is_flat();
        match construct_collar(&case.space, &case.curve) {
            Ok(cert) => {
                assert!(flat, "{id} has a collar but is not flat");
                assert!(verify_collar(&case.space, &case.curve, &cert).is_valid(), "{id}");
                assert_eq!(build_collar(&case.space, &case.curve).unwrap(), cert);
            }
            Err(Error::Precondition(_)) => {
                assert!(!flat, "{id} is flat but has no collar");
                assert!(matches!(build_collar(&case.space, &case.curve), Err(Error::Precondition(_))));
            }
            Err(e) => panic!("{id}: {e}"),
        }
    }
}

#[test]
fn fig2a_sheets_are_the_neighbouring_rows() {
    let case = figure_case("fig2a").unwrap();
    let cert = build_collar(&case.space, &case.curve).unwrap();
    let row = |y| (1..=4).map(|x| grid_vertex(5, x, y)).collect::<BTreeSet<_>>();
    let mut sheets = cert.sheets.to_vec();
    sheets.sort();
    let mut expected = vec![row(1), row(3)];
    expected.sort();
    assert_eq!(sheets, expected);
}

#[test]
fn verify_collar_rejects_bad_certificates() {
    let case = figure_case("fig2a").unwrap();
    let good = build_collar(&case.space, &case.curve).unwrap();

    let mut on_curve = good.clone();
    on_curve.sheets[0].insert(grid_vertex(5, 2, 2));
    on_curve.witness.insert(grid_vertex(5, 2, 2), grid_vertex(5, 1, 2));
    assert!(!verify_collar(&case.space, &case.curve, &on_curve).is_valid());

    let mut overlapping = good.clone();
    let shared = *overlapping.sheets[0].iter().next().unwrap();
    overlapping.sheets[1].insert(shared);
    assert!(!verify_collar(&case.space, &case.curve, &overlapping).is_valid());

    let mut far = good.clone();
    let w = grid_vertex(5, 0, 0);
    far.sheets[0].insert(w);
    far.witness.insert(w, grid_vertex(5, 4, 2));
    assert!(!verify_collar(&case.space, &case.curve, &far).is_valid());

    // the hairpin: the mouth vertex sees both prongs, so it lands on both sides
    let hairpin = figure_case("fig2b").unwrap();
    let at = |x, y| grid_vertex(6, x, y);
    let inner: BTreeSet<usize> = [at(1, 2), at(2, 2), at(3, 2)].into();
    let mut outer: BTreeSet<usize> = BTreeSet::from([at(1, 2)]);
    for x in 0..=5 {
        outer.insert(at(x, 0));
        outer.insert(at(x, 4));
    }
    for y in 0..=4 {
        outer.insert(at(0, y));
        outer.insert(at(5, y));
    }
    let curve_verts = hairpin.curve.vertex_set(&hairpin.space);
    let witness = inner
        .iter()
        .chain(outer.iter())
        .filter_map(|&w| curve_verts.iter().find(|&&v| hairpin.space.share_cell(v, w)).map(|&v| (w, v)))
        .collect();
    let cert = CollarCertificate { base: hairpin.curve.clone(), sheets: [inner, outer], witness };
    let check = verify_collar(&hairpin.space, &hairpin.curve, &cert);
    assert!(check.reasons.iter().any(|r| r.contains("sheets meet")), "{:?}", check.reasons);
}

#[test]
fn fig5_has_one_focal_point() {
    let case = figure_case("fig5").unwrap();
    let focal = find_focal_points(&case.space, &case.curve).unwrap();
    let vertices: Vec<usize> = focal.iter().map(|f| f.vertex).collect();
    assert_eq!(vertices, vec![14]);
    let arc = &focal[0].arc;
    assert!(arc.contains(&grid_vertex(5, 2, 3)) && arc.contains(&grid_vertex(5, 3, 2)));
}

#[test]
fn octahedron_equator_sheets_are_the_poles() {
    let o = octahedron();
    let eq = equator(&o, &Family::Octahedron).unwrap();
    assert!(is_locally_flat(&o, &eq).unwrap().is_flat());
    let cert = build_collar(&o, &eq).unwrap();
    let mut sheets = cert.sheets.to_vec();
    sheets.sort();
    assert_eq!(sheets, vec![BTreeSet::from([NORTH]), BTreeSet::from([SOUTH])]);
}

#[test]
fn single_edge_in_a_triangulated_disk() {
    let g = grid(4, 4, true).unwrap();
    let e = CellChain::path(vec![grid_vertex(4, 1, 2), grid_vertex(4, 2, 2)]);
    assert!(is_locally_flat(&g, &e).unwrap().is_flat());
    let cert = build_collar(&g, &e).unwrap();
    assert!(verify_collar(&g, &e, &cert).is_valid());
    // the two triangles on the edge give one apex on each side
    let mut sheets = cert.sheets.to_vec();
    sheets.sort();
    assert_eq!(sheets, vec![BTreeSet::from([grid_vertex(4, 1, 1)]), BTreeSet::from([grid_vertex(4, 2, 3)])]);
}

#[test]
fn open_flat_curves_have_sheets_next_to_the_curve() {
    let g = grid(6, 6, false).unwrap();
    let curves = [
        vec![(1, 1), (2, 1), (3, 1), (4, 1)],
        vec![(1, 1), (2, 1), (2, 2), (2, 3), (3, 3), (4, 3)],
        vec![(2, 1), (2, 2), (2, 3), (2, 4), (2, 5)],
    ];
    for pts in curves {
        let c = CellChain::path(pts.iter().map(|&(x, y)| grid_vertex(6, x, y)).collect());
        assert!(is_locally_flat(&g, &c).unwrap().is_flat(), "{pts:?}");
        let cert = build_collar(&g, &c).unwrap();
        assert!(verify_collar(&g, &c, &cert).is_valid());
        for sheet in &cert.sheets {
            for &w in sheet {
                let v = cert.witness[&w];
                assert!(c.vertex_set(&g).contains(&v));
                assert!(g.share_cell(v, w));
            }
        }
    }
}

#[test]
fn closed_surface_curves() {
    let t = torus_grid(4, 4).unwrap();
    let m = torus_meridian(4, 4, 0);
    assert!(is_locally_flat(&t, &m).unwrap().is_flat());
    assert!(verify_collar(&t, &m, &build_collar(&t, &m).unwrap()).is_valid());
    // the corner band of the 3-cube has four chords that are cube edges
    let c = cube_boundary(3).unwrap();
    let eq = equator(&c, &Family::CubeBoundary(3)).unwrap();
    let report = is_locally_flat(&c, &eq).unwrap();
    assert_eq!(too_close(&report.violations), BTreeSet::from([(0, 2), (1, 3), (4, 5), (6, 7)]));
    assert_eq!(too_close(&report.violations), close_pairs(&c, &eq));
}

#[test]
fn flatness_rejects_bad_input() {
    let o = octahedron();
    assert!(matches!(is_locally_flat(&o, &CellChain::cells(2, BTreeSet::from([0]))), Err(Error::Input(_))));
    let sq = grid(3, 3, false).unwrap();
    let c = CellChain::path(vec![0, 1]);
    assert!(matches!(is_locally_flat_triangulated(&sq, &c), Err(Error::Precondition(_))));
}
