//! Hypochromatic plane spanning trees of monotone drawings with
//! ⌈(n+5)/6⌉ colors: split the x-order into overlapping groups of at most
//! seven vertices, drop a color no group needs, and glue the group trees.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::drawing::{induced_subdrawing, is_plane, is_spanning_tree, merge_colors, Drawing, EdgeColoring, EdgeSet};
use crate::error::SolveError;
use crate::pseudolinear::{compile_points, PointDrawing};
use crate::report::{InvariantCheck, SolveReport};
use crate::search::{find_plane_tree, SearchMode};

pub const DEFAULT_GROUP_STEP: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    CompiledFromPoints,
    TrustedCrossingSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneDrawing {
    drawing: Drawing,
    /// Vertices by increasing x.
    order: Vec<usize>,
    provenance: Provenance,
}

impl MonotoneDrawing {
    pub fn from_points(p: &PointDrawing) -> Self {
        MonotoneDrawing {
            drawing: compile_points(p),
            order: p.x_order(),
            provenance: Provenance::CompiledFromPoints,
        }
    }

    /// A drawing whose labels declare the x-order. The slab property is
    /// not checked here; the solver verifies planarity of its union.
    pub fn trusted(drawing: Drawing) -> Result<Self, SolveError> {
        let order = drawing.x_order().ok_or(SolveError::MissingOrder)?;
        Ok(MonotoneDrawing { drawing, order, provenance: Provenance::TrustedCrossingSet })
    }

    pub fn drawing(&self) -> &Drawing {
        &self.drawing
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }
}

pub fn colors_needed(n: usize) -> usize {
    (n + 5).div_ceil(6)
}

/// Positions in the x-order of each group; consecutive groups share one
/// vertex.
pub fn group_partition(n: usize, d: usize) -> Vec<Vec<usize>> {
    assert!(n >= 2 && d >= 2, "need n >= 2 and d >= 2");
    let groups = (n - 1).div_ceil(d);
    (0..groups).map(|i| (d * i..=(d * i + d).min(n - 1)).collect()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupTree {
    Monochromatic(usize),
    Avoiding(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupOutcome {
    /// Original vertex ids, in x-order.
    pub vertices: Vec<usize>,
    pub kind: GroupTree,
    /// In original vertex ids.
    pub tree: EdgeSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneReport {
    pub report: SolveReport,
    pub removed: Option<usize>,
    pub keep: BTreeSet<usize>,
    pub groups: Vec<GroupOutcome>,
}

struct Prepared {
    vertices: Vec<usize>,
    sub: Drawing,
    color: EdgeColoring,
    mono: Option<(EdgeSet, usize)>,
}

pub fn solve_monotone(m: &MonotoneDrawing, c: &EdgeColoring) -> Result<MonotoneReport, SolveError> {
    solve_monotone_with(m, c, DEFAULT_GROUP_STEP)
}

pub fn solve_monotone_with(m: &MonotoneDrawing, c: &EdgeColoring, d: usize) -> Result<MonotoneReport, SolveError> {
    let n = m.drawing.n();
    if c.n() != n {
        return Err(crate::error::DrawingError::SizeMismatch { drawing: n, coloring: c.n() }.into());
    }
    if d + 1 > 7 || d < 2 {
        return Err(SolveError::GroupTooLarge(d + 1));
    }
    let needed = if n < 2 { 2 } else { (n - 1).div_ceil(d) + 1 };
    if c.k() < needed {
        return Err(SolveError::WrongColorCount { expected: needed, got: c.k() });
    }
    if n < 2 {
        return Ok(MonotoneReport {
            report: SolveReport::found(EdgeSet::new(), c),
            removed: None,
            keep: BTreeSet::new(),
            groups: Vec::new(),
        });
    }

    let prepared: Vec<Prepared> = group_partition(n, d)
        .into_par_iter()
        .map(|positions| {
            let vertices: Vec<usize> = positions.iter().map(|&p| m.order[p]).collect();
            let (sub, color) = induced_subdrawing(&m.drawing, c, &vertices)?;
            let r = find_plane_tree(&sub, &color, SearchMode::Monochromatic(None))?;
            let mono = r.is_found().then(|| (r.tree.relabel(&vertices), r.color.expect("monochromatic")));
            Ok(Prepared { vertices, sub, color, mono })
        })
        .collect::<Result<_, SolveError>>()?;

    let keep: BTreeSet<usize> = prepared.iter().filter_map(|g| g.mono.as_ref().map(|t| t.1)).collect();
    let Some(removed) = (0..c.k()).find(|x| !keep.contains(x)) else {
        return Ok(MonotoneReport {
            report: SolveReport::counterexample(format!("every color {keep:?} is needed by some group")),
            removed: None,
            keep,
            groups: Vec::new(),
        });
    };

    let outcomes: Vec<Result<GroupOutcome, String>> = prepared
        .into_par_iter()
        .map(|g| {
            if let Some((tree, color)) = g.mono {
                return Ok(GroupOutcome { vertices: g.vertices, kind: GroupTree::Monochromatic(color), tree });
            }
            let merged = merge_colors(&g.color, removed);
            let r = find_plane_tree(&g.sub, &merged, SearchMode::Avoid(0)).map_err(|e| e.to_string())?;
            if !r.is_found() {
                return Err(format!(
                    "group {:?} has no monochromatic plane spanning tree and none avoiding color {removed}",
                    g.vertices
                ));
            }
            Ok(GroupOutcome { tree: r.tree.relabel(&g.vertices), vertices: g.vertices, kind: GroupTree::Avoiding(removed) })
        })
        .collect();

    let mut groups = Vec::with_capacity(outcomes.len());
    for o in outcomes {
        match o {
            Ok(g) => groups.push(g),
            Err(why) => {
                return Ok(MonotoneReport { report: SolveReport::counterexample(why), removed: Some(removed), keep, groups });
            }
        }
    }

    let mut union = EdgeSet::new();
    for g in &groups {
        union.extend(g.tree.iter().copied());
    }
    let plane = is_plane(&m.drawing, &union);
    let spanning = is_spanning_tree(n, &union);
    let avoids = !c.colors_of(&union).contains(&removed);
    let checks = vec![
        InvariantCheck::new("removed-color", true, format!("r={removed} keep={keep:?}")),
        InvariantCheck::new("union-plane", plane, ""),
        InvariantCheck::new("union-spanning", spanning, ""),
        InvariantCheck::new("union-avoids", avoids, format!("color {removed}")),
    ];
    let report = if plane && spanning && avoids {
        let mut r = SolveReport::found(union, c);
        r.avoided_colors.insert(removed);
        r.with_checks(checks)
    } else {
        SolveReport::counterexample(format!("group union is not a plane spanning tree avoiding {removed}")).with_checks(checks)
    };
    Ok(MonotoneReport { report, removed: Some(removed), keep, groups })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::Edge;
    use crate::pseudolinear::Point;

    fn convex(n: usize, c: EdgeColoring) -> MonotoneDrawing {
        let pts = (0..n as i64).map(|x| Point::new(x, x * x)).collect();
        MonotoneDrawing::from_points(&PointDrawing::new(pts, c).unwrap())
    }

    #[test]
    fn partition_examples() {
        assert_eq!(group_partition(13, 6), vec![(0..=6).collect::<Vec<_>>(), (6..=12).collect()]);
        assert_eq!(group_partition(7, 6), vec![(0..=6).collect::<Vec<_>>()]);
        assert_eq!(group_partition(8, 6), vec![(0..=6).collect::<Vec<_>>(), vec![6, 7]]);
        assert_eq!(group_partition(2, 6), vec![vec![0, 1]]);
    }

    #[test]
    fn colors_needed_examples() {
        assert_eq!(colors_needed(7), 2);
        assert_eq!(colors_needed(13), 3);
        assert_eq!(colors_needed(2), 2);
        assert_eq!(colors_needed(8), 3);
    }

    #[test]
    fn single_group() {
        let n = 7;
        let c = EdgeColoring::from_fn(n, 2, |e| (e.u() * 3 + e.v()) % 2).unwrap();
        let m = convex(n, c.clone());
        let r = solve_monotone(&m, &c).unwrap();
        assert!(r.report.is_found());
        assert_eq!(r.groups.len(), 1);
        assert!(r.report.output_violations(m.drawing(), &c).is_empty());
    }

    #[test]
    fn three_color_convex() {
        let n = 13;
        let c = EdgeColoring::from_fn(n, 3, |e| match e.v() - e.u() {
            1 => 0,
            2 | 3 => 1,
            _ => 2,
        })
        .unwrap();
        let m = convex(n, c.clone());
        let r = solve_monotone(&m, &c).unwrap();
        assert!(r.report.is_found(), "{}", r.report.to_text());
        assert!(!r.report.avoided_colors.is_empty());
        assert!(r.report.output_violations(m.drawing(), &c).is_empty());
        for g in &r.groups {
            let (sub, sc) = induced_subdrawing(m.drawing(), &c, &g.vertices).unwrap();
            assert!(find_plane_tree(&sub, &sc, SearchMode::Hypochromatic).unwrap().is_found());
        }
    }

    #[test]
    fn all_one_color() {
        for n in [2, 5, 8, 14, 20] {
            let k = colors_needed(n);
            let c = EdgeColoring::uniform(n, k, 0).unwrap();
            let m = convex(n, c.clone());
            let r = solve_monotone(&m, &c).unwrap();
            assert_eq!(r.keep, BTreeSet::from([0]));
            assert_eq!(r.report.avoided_colors, (1..k).collect());
        }
    }

    #[test]
    fn too_few_colors() {
        let c = EdgeColoring::uniform(8, 2, 0).unwrap();
        let m = convex(8, c.clone());
        assert!(matches!(solve_monotone(&m, &c), Err(SolveError::WrongColorCount { expected: 3, got: 2 })));
    }

    #[test]
    fn trusted_needs_order() {
        let d = Drawing::new(4, [(Edge::new(0, 2), Edge::new(1, 3))]);
        assert_eq!(MonotoneDrawing::trusted(d), Err(SolveError::MissingOrder));
    }
}
