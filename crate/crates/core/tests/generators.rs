use std::collections::BTreeSet;

use jordan_cells::deformation::xor_decomposition;
use jordan_cells::format::{write_document, Document};
use jordan_cells::generators::{
    cube_boundary, cube_vertex, equator, grid, octahedron, simplex_boundary, strip, torus_grid, torus_meridian, Family,
};
use jordan_cells::metrics::CellMetrics;
use jordan_cells::{DiscreteSpace, Error};

fn counts(space: &DiscreteSpace) -> Vec<usize> {
    (0..=space.top_dim()).map(|d| space.num_cells(d)).collect()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn cell_counts() {
    assert_eq!(counts(&simplex_boundary(3).unwrap()), vec![4, 6, 4]);
    assert_eq!(counts(&simplex_boundary(4).unwrap()), vec![5, 10, 10, 5]);
    assert_eq!(counts(&cube_boundary(3).unwrap()), vec![8, 12, 6]);
    assert_eq!(counts(&cube_boundary(4).unwrap()), vec![16, 32, 24, 8]);
    assert_eq!(counts(&octahedron()), vec![6, 12, 8]);
    assert_eq!(counts(&torus_grid(3, 4).unwrap()), vec![12, 24, 12]);
    assert_eq!(counts(&grid(3, 2, false).unwrap()), vec![12, 17, 6]);
    assert_eq!(counts(&grid(3, 2, true).unwrap()), vec![12, 23, 12]);
    assert_eq!(counts(&strip(5).unwrap()), vec![18, 37, 20]);
    for n in 2..=6 {
        let s = simplex_boundary(n).unwrap();
        let expected: Vec<usize> = (0..n).map(|d| binomial(n + 1, d + 1)).collect();
        assert_eq!(counts(&s), expected, "simplex {n}");
    }
    for n in 2..=5 {
        let c = cube_boundary(n).unwrap();
        let expected: Vec<usize> = (0..n).map(|d| binomial(n, d) << (n - d)).collect();
        assert_eq!(counts(&c), expected, "cube {n}");
    }
}

#[test]
fn closed_families_are_closed_manifolds() {
    for s in [simplex_boundary(3).unwrap(), simplex_boundary(4).unwrap(), cube_boundary(3).unwrap(), cube_boundary(4).unwrap(), octahedron(), torus_grid(4, 5).unwrap()] {
        assert!(s.check_regular(s.top_dim()).passed());
        assert!(s.is_closed_manifold().unwrap());
    }
    let g = grid(3, 3, true).unwrap();
    assert!(!g.is_closed_manifold().unwrap());
    assert_eq!(torus_grid(4, 4).unwrap().is_oriented(), Some(true));
    assert_eq!(octahedron().is_oriented(), Some(true));
}

#[test]
fn the_torus_meridian_is_a_minimal_cycle_bounding_nothing() {
    for (m, n) in [(3, 3), (4, 5), (6, 4)] {
        let t = torus_grid(m, n).unwrap();
        let mer = torus_meridian(m, n, 2);
        mer.validate(&t).unwrap();
        let (walk, closed) = mer.as_path().unwrap();
        assert!(closed);
        assert_eq!(walk.len(), m);
        // no shorter cycle through its vertices: consecutive ones are the only edges
        let metrics = CellMetrics::new(&t);
        for i in 0..m {
            for j in i + 1..m {
                let around = (j - i).min(m - (j - i));
                assert_eq!(metrics.graph_distance(walk[i], walk[j]).unwrap(), Some(around));
            }
        }
        // its edges are not a sum of 2-cell boundaries: every subset of the
        // faces is tried when the torus is small enough
        let empty = jordan_cells::CellChain::path(vec![walk[0]]);
        assert_eq!(xor_decomposition(&t, &mer, &empty).unwrap(), None);
        let target = mer.edge_set(&t).unwrap();
        let nf = t.num_cells(2);
        if nf <= 16 {
            for mask in 0u32..1 << nf {
                let mut sum: BTreeSet<usize> = BTreeSet::new();
                for f in (0..nf).filter(|f| mask >> f & 1 == 1) {
                    sum = sum.symmetric_difference(&t.cells(2)[f].boundary().iter().copied().collect()).copied().collect();
                }
                assert_ne!(sum, target);
            }
        }
    }
}

#[test]
fn generators_are_deterministic() {
    for fam in [Family::SimplexBoundary(4), Family::CubeBoundary(4), Family::Octahedron, Family::TorusGrid(3, 4), Family::Strip(3)] {
        let a = write_document(&Document::new(fam.generate().unwrap())).unwrap();
        let b = write_document(&Document::new(fam.generate().unwrap())).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn parameter_ranges() {
    for bad in [simplex_boundary(1), simplex_boundary(7), cube_boundary(1), cube_boundary(6), torus_grid(2, 4), torus_grid(4, 33), grid(0, 3, false), grid(3, 33, true)] {
        assert!(matches!(bad, Err(Error::Input(_))));
    }
    assert!(matches!(equator(&torus_grid(3, 3).unwrap(), &Family::TorusGrid(3, 3)), Err(Error::Input(_))));
}

#[test]
fn cube_vertices_from_bit_strings() {
    assert_eq!(cube_vertex("0000"), 0);
    assert_eq!(cube_vertex("1000"), 1);
    assert_eq!(cube_vertex("0011"), 12);
    assert_eq!(cube_vertex("1111"), 15);
}
