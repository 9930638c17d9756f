//! Cylindrical drawings: the annulus model and the monochromatic plane
//! spanning tree procedure for 2-colored instances.

pub mod layout;
pub mod sweep;

pub use layout::{
    compile_layout, layout_rotations, normalize, rotation_order_check, side_meetings, Angle, Circle,
    CylindricalLayout,
};
pub use sweep::{
    cycle_color, step1_cycle_colors, sweep_phase0, sweep_phase1, sweep_run, CycleColor, Direction,
    InvariantFailure, Sweep, SweepOptions, SweepState,
};

use crate::book::{solve_book, BookLayout};
use crate::drawing::{bfs_spanning_tree, CrossingTable, Drawing, Edge, EdgeSet};
use crate::error::SolveError;
use crate::report::{InvariantCheck, SolveReport, Status};
use crate::search::nonspanning_fallback;

/// Solves a 2-colored cylindrical layout: the sweep when both cycles are
/// monochromatic in different colors, the reductions otherwise.
pub fn solve_cylindrical(l: &CylindricalLayout, opts: SweepOptions) -> Result<SolveReport, SolveError> {
    if l.coloring().k() != 2 {
        return Err(SolveError::WrongColorCount { expected: 2, got: l.coloring().k() });
    }
    let d = compile_layout(l)?;
    if step1_cycle_colors(l).is_ok() {
        Ok(sweep_run(&d, l, opts))
    } else {
        step2_reduce(&d, l, opts)
    }
}

struct Removal {
    vertex: usize,
    cycle_edges: [Edge; 2],
}

/// Handles layouts with an empty circle or cycles that are not
/// monochromatic in distinct colors.
///
/// One empty circle makes the drawing a 1-page book drawing. Otherwise
/// vertices whose two cycle edges differ in color are removed until both
/// cycles are monochromatic, the remainder is solved, and the removed
/// vertices are re-attached in reverse order through their uncrossed cycle
/// edge of the tree's color.
pub fn step2_reduce(d: &Drawing, l: &CylindricalLayout, opts: SweepOptions) -> Result<SolveReport, SolveError> {
    let n = l.n();
    if l.n_inner() == 0 || l.n_outer() == 0 {
        let book = BookLayout::one_page((0..n).collect(), l.coloring().clone())?;
        let report = solve_book(&book)?;
        return Ok(report.with_checks(vec![InvariantCheck::new("single-circle", true, "solved as a 1-page book drawing")]));
    }

    let c = l.coloring();
    let mut alive = vec![true; n];
    let mut removed = Vec::new();
    'reduce: loop {
        for circle in [Circle::Inner, Circle::Outer] {
            let members: Vec<usize> = l.circle_vertices(circle).filter(|&v| alive[v]).collect();
            let len = members.len();
            if len < 3 {
                continue;
            }
            for p in 0..len {
                let prev = Edge::new(members[(p + len - 1) % len], members[p]);
                let next = Edge::new(members[p], members[(p + 1) % len]);
                if c.color(prev) != c.color(next) {
                    alive[members[p]] = false;
                    removed.push(Removal { vertex: members[p], cycle_edges: [prev, next] });
                    continue 'reduce;
                }
            }
        }
        break;
    }

    let keep: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let (sub, map) = l.restrict(&keep)?;
    let sub_d = compile_layout(&sub)?;
    let mut checks = vec![InvariantCheck::new("reduction", true, format!("{} vertices removed", removed.len()))];

    let inner = cycle_color(&sub, Circle::Inner);
    let outer = cycle_color(&sub, Circle::Outer);
    let sub_report = if step1_cycle_colors(&sub).is_ok() {
        sweep_run(&sub_d, &sub, opts)
    } else {
        let (CycleColor::Mono(a), CycleColor::Mono(b)) = (inner, outer) else {
            return Ok(SolveReport::counterexample(format!(
                "reduction left non-monochromatic cycles {inner:?} / {outer:?}"
            )));
        };
        debug_assert_eq!(a, b);
        let side = sub
            .circle_vertices(Circle::Inner)
            .flat_map(|u| sub.circle_vertices(Circle::Outer).map(move |w| Edge::new(u, w)))
            .find(|&e| sub.coloring().color(e) == a);
        match side {
            Some(e) => {
                let mut graph: EdgeSet = sub.cycle_edges(Circle::Inner).into_iter().collect();
                graph.extend(sub.cycle_edges(Circle::Outer));
                graph.insert(e);
                let tree = bfs_spanning_tree(sub.n(), &graph).expect("cycles joined by a side edge span");
                checks.push(InvariantCheck::new("same-color-cycles", true, format!("joined by {e}")));
                SolveReport::found(tree, sub.coloring())
            }
            None => {
                checks.push(InvariantCheck::new("same-color-cycles", true, "no side edge of the cycle color"));
                nonspanning_fallback(&sub_d, sub.coloring())
            }
        }
    };
    if sub_report.status != Status::TreeFound {
        return Ok(sub_report.with_checks(checks));
    }
    let Some(color) = sub_report.color else {
        return Ok(SolveReport::counterexample("reduced instance returned a bichromatic tree").with_checks(checks));
    };

    let table = CrossingTable::new(d);
    let mut tree = sub_report.tree.relabel(&map);
    for r in removed.iter().rev() {
        alive[r.vertex] = true;
        let Some(&e) = r.cycle_edges.iter().find(|&&e| c.color(e) == color) else {
            return Ok(SolveReport::counterexample(format!(
                "vertex {} has no cycle edge of color {color}",
                r.vertex
            ))
            .with_checks(checks));
        };
        if !table.is_uncrossed_within(e, &alive) {
            checks.push(InvariantCheck::new("uncrossed-reattach", false, format!("{e} is crossed")));
            return Ok(SolveReport::counterexample(format!("re-attachment edge {e} is crossed")).with_checks(checks));
        }
        tree.insert(e);
    }
    checks.push(InvariantCheck::new("uncrossed-reattach", true, format!("{} re-attachments", removed.len())));
    let mut report = SolveReport::found(tree, c);
    report.checked_invariants = sub_report.checked_invariants;
    report.witness = sub_report.witness;
    Ok(report.with_checks(checks))
}
