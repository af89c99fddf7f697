use jordan_cells::deformation::{decompose_minimal_moves, search_contraction};
use jordan_cells::format::{parse_deformation, parse_document, parse_trace, write_deformation, write_document, write_separation, write_trace, Document};
use jordan_cells::generators::{equator, figure_case, grid, grid_vertex, torus_meridian, Family, FIGURE_IDS};
use jordan_cells::separation::{components_of_complement, contract_to_cell, invert_trace, surface_cells};
use jordan_cells::{CellChain, Error};

fn families() -> Vec<Family> {
    vec![
        Family::SimplexBoundary(2),
        Family::SimplexBoundary(3),
        Family::SimplexBoundary(4),
        Family::SimplexBoundary(5),
        Family::CubeBoundary(3),
        Family::CubeBoundary(4),
        Family::Octahedron,
        Family::TorusGrid(3, 5),
        Family::Strip(4),
        Family::Grid { width: 3, height: 2, triangulated: false },
        Family::Grid { width: 3, height: 2, triangulated: true },
    ]
}

fn round_trip(doc: &Document) {
    let text = write_document(doc).unwrap();
    let back = parse_document(&text).unwrap();
    assert_eq!(back.space, doc.space);
    assert_eq!(back.chains.len(), doc.chains.len());
    for ((n1, c1), (n2, c2)) in doc.chains.iter().zip(&back.chains) {
        assert_eq!(n1, n2);
        assert_eq!(c1.cell_ids(&doc.space).unwrap(), c2.cell_ids(&back.space).unwrap());
    }
    assert_eq!(write_document(&back).unwrap(), text);
}

#[test]
fn documents_round_trip_byte_for_byte() {
    for fam in families() {
        let space = fam.generate().unwrap();
        let mut doc = Document::new(space);
        if let Family::TorusGrid(m, n) = fam {
            doc = doc.with_chain("meridian", torus_meridian(m, n, 1));
        } else if let Ok(eq) = equator(&doc.space, &fam) {
            doc = doc.with_chain("equator", eq);
        }
        round_trip(&doc);
    }
    for id in FIGURE_IDS {
        let case = figure_case(id).unwrap();
        round_trip(&Document::new(case.space).with_chain("curve", case.curve));
    }
}

#[test]
fn chains_of_every_dimension_round_trip() {
    let g = grid(3, 3, true).unwrap();
    let doc = Document::new(g)
        .with_chain("point", CellChain::path(vec![5]))
        .with_chain("open", CellChain::path(vec![0, 1, 5, 6]))
        .with_chain("loop", CellChain::cycle(vec![0, 1, 5]))
        .with_chain("scatter", CellChain::cells(1, [0, 7, 9]))
        .with_chain("patch", CellChain::cells(2, [0, 1, 4]));
    round_trip(&doc);
    let back = parse_document(&write_document(&doc).unwrap()).unwrap();
    assert_eq!(back.chain("point"), Some(&CellChain::path(vec![5])));
    assert!(back.chain("open").unwrap().as_path().is_some_and(|(w, closed)| !closed && w.len() == 4));
    assert!(back.chain("loop").unwrap().as_path().is_some_and(|(w, closed)| closed && w.len() == 3));
    assert!(back.chain("scatter").unwrap().as_path().is_none());
    assert_eq!(back.chain("missing"), None);
}

#[test]
fn contraction_traces_round_trip() {
    for fam in [Family::Octahedron, Family::SimplexBoundary(4), Family::CubeBoundary(4)] {
        let space = fam.generate().unwrap();
        let eq = equator(&space, &fam).unwrap();
        let s = surface_cells(&space, &eq).unwrap();
        let report = components_of_complement(&space, &eq, false).unwrap();
        let k = space.top_dim();
        for comp in &report.components {
            let seed = *comp.iter().find(|&&c| space.cells(k)[c].boundary().iter().any(|f| s.contains(f))).unwrap();
            let trace = contract_to_cell(&space, comp, &s, seed).unwrap();
            for t in [trace.clone(), invert_trace(&trace).unwrap()] {
                let text = write_trace(&t);
                let back = parse_trace(&text).unwrap();
                assert_eq!(back, t);
                assert_eq!(write_trace(&back), text);
            }
        }
        let text = write_separation(&report);
        assert!(text.starts_with("DSCSEP 1\n"));
    }
}

#[test]
fn deformation_traces_round_trip() {
    let g = grid(6, 3, true).unwrap();
    let on = |pts: &[(usize, usize)]| pts.iter().map(|&(x, y)| grid_vertex(6, x, y)).collect::<Vec<_>>();
    let straight = CellChain::path(on(&[(0, 1), (1, 1), (2, 1), (3, 1)]));
    let bumped = CellChain::path(on(&[(0, 1), (1, 2), (1, 1), (2, 1), (3, 2), (3, 1)]));
    let minimal = decompose_minimal_moves(&g, &straight, &bumped).unwrap();
    let sq = grid(4, 4, false).unwrap();
    let cycle = CellChain::cycle(vec![6, 7, 8, 13, 18, 17, 16, 11]);
    let side = search_contraction(&sq, &cycle, 6, 6).unwrap().unwrap();
    for t in [minimal, side] {
        let text = write_deformation(&t);
        let back = parse_deformation(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(write_deformation(&back), text);
    }
}

fn parse_error(text: &str) -> (usize, usize) {
    match parse_document(text) {
        Err(Error::Parse { line, column, .. }) => (line, column),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn parse_errors_carry_positions() {
    let space = Family::Octahedron.generate().unwrap();
    let text = write_document(&Document::new(space)).unwrap();
    let lines: Vec<&str> = text.lines().collect();

    let truncated = lines[..8].join("\n") + "\n";
    assert_eq!(parse_error(&truncated), (9, 1));

    let bad = text.replacen("\n0 2\n", "\n0 x\n", 1);
    assert_eq!(parse_error(&bad), (5, 3));

    assert_eq!(parse_error("DSC 2\n").0, 1);
    assert_eq!(parse_error("").0, 1);
    let bad_cell = text.replacen("0 2 3 | 0 1 2", "0 2 3 | 0 1 99", 1);
    assert!(matches!(parse_document(&bad_cell), Err(Error::Parse { .. })));

    assert!(matches!(parse_trace("DSCTRACE 1\ndim 2\nseed x\n"), Err(Error::Parse { line: 3, .. })));
    assert!(matches!(parse_deformation("DSCTRACE 1\nkind sideways\n"), Err(Error::Parse { line: 2, .. })));
}
