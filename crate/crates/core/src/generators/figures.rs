//! Hand-encoded figure cases. Positions are written (x, y) on planar grids
//! built by [`grid`]; a triangulated grid joins (x, y) to its four axis
//! neighbours and to (x + 1, y + 1), (x - 1, y - 1).

use super::{grid, grid_vertex};
use crate::complex::{CellChain, DiscreteSpace, SpaceBuilder, VertexId};
use crate::error::{input, Result};

/// A complex, a curve in it, and the flatness verdict the figure states.
/// `expected_flat` is `None` when the figure gives no verdict.
#[derive(Debug, Clone)]
pub struct FigureCase {
    pub id: &'static str,
    pub space: DiscreteSpace,
    pub curve: CellChain,
    pub expected_flat: Option<bool>,
    pub note: &'static str,
}

pub const FIGURE_IDS: [&str; 9] = ["fig2a", "fig2b", "fig3a", "fig3b", "fig3c", "fig4", "fig5", "fig6a", "fig6b"];

fn on_grid(width: usize, pts: &[(usize, usize)]) -> CellChain {
    CellChain::path(pts.iter().map(|&(x, y)| grid_vertex(width, x, y)).collect())
}

pub fn figure_case(id: &str) -> Result<FigureCase> {
    let case = match id {
        // 5x4 squares. Straight curve along y = 2; the rows y = 1 and y = 3
        // form the two sheets.
        "fig2a" => FigureCase {
            id: "fig2a",
            space: grid(5, 4, false)?,
            curve: on_grid(5, &[(1, 2), (2, 2), (3, 2), (4, 2)]),
            expected_flat: Some(true),
            note: "straight curve with two parallel sheets",
        },
        // 6x4 squares. A hairpin around the channel (2..3, 2) whose mouth
        // vertex (1, 2) touches both prongs; the inner sheet would close up
        // on itself there.
        "fig2b" => FigureCase {
            id: "fig2b",
            space: grid(6, 4, false)?,
            curve: on_grid(6, &[(1, 1), (2, 1), (3, 1), (4, 1), (4, 2), (4, 3), (3, 3), (2, 3), (1, 3)]),
            expected_flat: Some(false),
            note: "collar boundary meets itself at the mouth",
        },
        // 7x7 triangulated. A = (2, 2), C = (3, 2) consecutive on the curve,
        // which later returns to B = (3, 3): A-B and C-B are edges of M.
        "fig3a" => FigureCase {
            id: "fig3a",
            space: grid(7, 7, true)?,
            curve: on_grid(7, &[(1, 2), (2, 2), (3, 2), (4, 2), (5, 3), (5, 4), (4, 4), (3, 3)]),
            expected_flat: Some(false),
            note: "curve holds A, C and later B with A-B an edge of M",
        },
        // 6x6 triangulated. A = (2, 2), C = (3, 2), B = (3, 3) consecutive;
        // ACB is a 2-cell.
        "fig3b" => FigureCase {
            id: "fig3b",
            space: grid(6, 6, true)?,
            curve: on_grid(6, &[(1, 2), (2, 2), (3, 2), (3, 3), (3, 4)]),
            expected_flat: Some(false),
            note: "curve runs A, C, B around a triangle",
        },
        // 7x7 triangulated. A = (3, 2) and B = (4, 3) share a diagonal edge
        // while the curve reaches B from A only after a long detour.
        "fig3c" => FigureCase {
            id: "fig3c",
            space: grid(7, 7, true)?,
            curve: on_grid(
                7,
                &[
                    (1, 2),
                    (2, 2),
                    (3, 2),
                    (3, 1),
                    (4, 1),
                    (5, 1),
                    (6, 2),
                    (6, 3),
                    (6, 4),
                    (6, 5),
                    (5, 5),
                    (4, 4),
                    (4, 3),
                ],
            ),
            expected_flat: Some(false),
            note: "curve of the form A ... C ... B with A-B an edge of M",
        },
        // 7x5 triangulated. Two parallel runs along y = 1 and y = 3 joined
        // at x = 5; every vertex of row y = 2 touches both runs.
        "fig4" => FigureCase {
            id: "fig4",
            space: grid(7, 5, true)?,
            curve: on_grid(7, &[(1, 1), (2, 1), (3, 1), (4, 1), (5, 2), (5, 3), (4, 3), (3, 3), (2, 3), (1, 3)]),
            expected_flat: None,
            note: "single row of points between two runs of the curve",
        },
        // 5x5 triangulated. Corner at (3, 3); the inner point (2, 2) is the
        // only vertex off the curve between (2, 3) and (3, 2).
        "fig5" => FigureCase {
            id: "fig5",
            space: grid(5, 5, true)?,
            curve: on_grid(5, &[(1, 3), (2, 3), (3, 3), (3, 2), (3, 1)]),
            expected_flat: Some(true),
            note: "corner kept flat by one focal point",
        },
        // 4x4 squares. A U around the inner vertex (2, 2); the mouth vertex
        // (1, 2) sees both prongs.
        "fig6a" => FigureCase {
            id: "fig6a",
            space: grid(4, 4, false)?,
            curve: on_grid(4, &[(1, 1), (2, 1), (3, 1), (3, 2), (3, 3), (2, 3), (1, 3)]),
            expected_flat: Some(false),
            note: "collar pinched at the mouth vertex",
        },
        "fig6b" => fig6b(),
        other => return input(format!("unknown figure case {other:?}; known: {FIGURE_IDS:?}")),
    };
    Ok(case)
}

/// The fig6a square grid with an extra vertex p' = 25 subdividing the edge
/// (1, 1)-(1, 2). The two squares on that edge become pentagons:
///   [(0,1), (1,1), p', (1,2), (0,2)] and [(1,1), (2,1), (2,2), (1,2), p'].
/// The ends (1, 1), (1, 3) are now 3 apart in the graph but still 2 apart
/// through 2-cells.
fn fig6b() -> FigureCase {
    let w = 4;
    let id = |x: usize, y: usize| grid_vertex(w, x, y);
    let p_prime: VertexId = (w + 1) * (w + 1);
    let mut b = SpaceBuilder::new(p_prime + 1);
    for y in 0..w {
        for x in 0..w {
            let mut cycle = vec![id(x, y), id(x + 1, y), id(x + 1, y + 1), id(x, y + 1)];
            if (x, y) == (0, 1) {
                cycle.insert(2, p_prime);
            } else if (x, y) == (1, 1) {
                cycle.push(p_prime);
            }
            b.add_polygon(&cycle).expect("fig6b polygon");
        }
    }
    FigureCase {
        id: "fig6b",
        space: b.build().expect("fig6b is well formed"),
        curve: on_grid(w, &[(1, 1), (2, 1), (3, 1), (3, 2), (3, 3), (2, 3), (1, 3)]),
        expected_flat: Some(false),
        note: "inserted point fixes edge distance but not 2-cell distance",
    }
}
