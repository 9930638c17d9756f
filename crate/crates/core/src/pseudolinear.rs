//! Straight-line drawings on integer points and the inductive
//! monochromatic plane spanning tree procedure over the x-order.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use crate::drawing::{all_edges, CrossingTable, Drawing, Edge, EdgeColoring, EdgeSet, VertexLabel};
use crate::error::{LayoutError, SolveError};
use crate::report::{InvariantCheck, SolveReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

/// Sign of the determinant of `(b - a, c - a)`: positive for a left turn.
pub fn orient(a: Point, b: Point, c: Point) -> Ordering {
    let det = (b.x - a.x) as i128 * (c.y - a.y) as i128 - (b.y - a.y) as i128 * (c.x - a.x) as i128;
    det.cmp(&0)
}

/// Proper crossing of segments `ab` and `cd` (no shared endpoints, general
/// position).
pub fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    orient(a, b, c) != orient(a, b, d)
        && orient(c, d, a) != orient(c, d, b)
        && orient(a, b, c) != Ordering::Equal
        && orient(c, d, a) != Ordering::Equal
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointDrawing {
    points: Vec<Point>,
    color: EdgeColoring,
}

impl PointDrawing {
    /// Rejects duplicate x-coordinates and collinear triples.
    pub fn new(points: Vec<Point>, color: EdgeColoring) -> Result<Self, LayoutError> {
        let n = points.len();
        if color.n() != n {
            return Err(crate::error::DrawingError::SizeMismatch { drawing: n, coloring: color.n() }.into());
        }
        for i in 0..n {
            for j in i + 1..n {
                if points[i].x == points[j].x {
                    return Err(LayoutError::DuplicateX(i, j));
                }
                for k in j + 1..n {
                    if orient(points[i], points[j], points[k]) == Ordering::Equal {
                        return Err(LayoutError::Collinear(i, j, k));
                    }
                }
            }
        }
        Ok(PointDrawing { points, color })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn coloring(&self) -> &EdgeColoring {
        &self.color
    }

    pub fn with_coloring(mut self, color: EdgeColoring) -> Result<Self, LayoutError> {
        if color.n() != self.n() {
            return Err(crate::error::DrawingError::SizeMismatch { drawing: self.n(), coloring: color.n() }.into());
        }
        self.color = color;
        Ok(self)
    }

    /// Vertices by increasing x.
    pub fn x_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by_key(|&v| self.points[v].x);
        order
    }
}

/// Counterclockwise angular comparison of directions around the origin,
/// starting from the positive x-axis.
fn angular_cmp(a: Point, b: Point) -> Ordering {
    let half = |p: Point| p.y < 0 || (p.y == 0 && p.x < 0);
    half(a)
        .cmp(&half(b))
        .then_with(|| orient(Point::new(0, 0), b, a))
}

pub fn compile_points(p: &PointDrawing) -> Drawing {
    let n = p.n();
    let pts = &p.points;
    let edges: Vec<Edge> = all_edges(n).collect();
    let mut crossings = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if !e.is_adjacent(&f) && segments_cross(pts[e.u()], pts[e.v()], pts[f.u()], pts[f.v()]) {
                crossings.push((e, f));
            }
        }
    }
    let rotations = (0..n)
        .map(|v| {
            let mut others: Vec<usize> = (0..n).filter(|&w| w != v).collect();
            let rel = |w: usize| Point::new(pts[w].x - pts[v].x, pts[w].y - pts[v].y);
            others.sort_by(|&a, &b| angular_cmp(rel(a), rel(b)));
            others
        })
        .collect();
    let order = p.x_order();
    let mut labels = vec![VertexLabel::XRank(0); n];
    for (rank, &v) in order.iter().enumerate() {
        labels[v] = VertexLabel::XRank(rank);
    }
    Drawing::new(n, crossings).with_rotations(rotations).with_labels(labels)
}

/// Convex hull (counterclockwise, starting from the leftmost point) of the
/// given vertices.
pub fn convex_hull(pts: &[Point], vs: &[usize]) -> Vec<usize> {
    let mut sorted = vs.to_vec();
    sorted.sort_by_key(|&v| (pts[v].x, pts[v].y));
    if sorted.len() < 3 {
        return sorted;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &v in &sorted {
        while lower.len() >= 2
            && orient(pts[lower[lower.len() - 2]], pts[lower[lower.len() - 1]], pts[v]) != Ordering::Greater
        {
            lower.pop();
        }
        lower.push(v);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &v in sorted.iter().rev() {
        while upper.len() >= 2
            && orient(pts[upper[upper.len() - 2]], pts[upper[upper.len() - 1]], pts[v]) != Ordering::Greater
        {
            upper.pop();
        }
        upper.push(v);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

type Partial = (EdgeSet, usize);

struct Solver<'a> {
    pts: &'a [Point],
    color: &'a EdgeColoring,
    table: CrossingTable,
    memo: HashMap<u64, Partial>,
    hull_checks: usize,
    reattachments: usize,
}

impl Solver<'_> {
    fn members(&self, set: u64) -> Vec<usize> {
        let mut vs: Vec<usize> = (0..self.pts.len()).filter(|&v| set >> v & 1 == 1).collect();
        vs.sort_by_key(|&v| self.pts[v].x);
        vs
    }

    fn alive(&self, set: u64) -> Vec<bool> {
        (0..self.pts.len()).map(|v| set >> v & 1 == 1).collect()
    }

    fn solve(&mut self, set: u64) -> Result<Partial, String> {
        if let Some(hit) = self.memo.get(&set) {
            return Ok(hit.clone());
        }
        let out = self.solve_uncached(set)?;
        self.memo.insert(set, out.clone());
        Ok(out)
    }

    fn solve_uncached(&mut self, set: u64) -> Result<Partial, String> {
        let vs = self.members(set);
        let c = self.color;
        if vs.len() == 2 {
            let e = Edge::new(vs[0], vs[1]);
            return Ok(([e].into_iter().collect(), c.color(e)));
        }
        let alive = self.alive(set);

        // a vertex with uncrossed edges of both colors can be removed
        for &v in &vs {
            let uncrossed: Vec<Edge> = vs
                .iter()
                .filter(|&&w| w != v)
                .map(|&w| Edge::new(v, w))
                .filter(|&e| self.table.is_uncrossed_within(e, &alive))
                .collect();
            let colors: BTreeSet<usize> = uncrossed.iter().map(|&e| c.color(e)).collect();
            if colors.len() == 2 {
                let (mut tree, col) = self.solve(set & !(1 << v))?;
                let attach = uncrossed
                    .iter()
                    .filter(|&&e| c.color(e) == col)
                    .min_by_key(|e| (self.pts[e.other(v)].x - self.pts[v].x).abs())
                    .copied()
                    .expect("both colors present");
                tree.insert(attach);
                self.reattachments += 1;
                return Ok((tree, col));
            }
        }

        let hull = convex_hull(self.pts, &vs);
        let hull_edges: Vec<Edge> = (0..hull.len())
            .map(|i| Edge::new(hull[i], hull[(i + 1) % hull.len()]))
            .collect();
        if let Some(e) = hull_edges.iter().find(|&&e| !self.table.is_uncrossed_within(e, &alive)) {
            return Err(format!("hull edge {e} is crossed"));
        }
        let hull_colors: BTreeSet<usize> = hull_edges.iter().map(|&e| c.color(e)).collect();
        if hull_colors.len() != 1 {
            return Err(format!("hull {hull:?} is not monochromatic"));
        }
        self.hull_checks += 1;
        let h = *hull_colors.iter().next().unwrap();
        if hull.len() == vs.len() {
            return Ok((hull_edges[..hull_edges.len() - 1].iter().copied().collect(), h));
        }

        let m = vs.len();
        let prefix = |i: usize| vs[..i].iter().fold(0u64, |acc, &v| acc | 1 << v);
        let suffix = |i: usize| vs[i - 1..].iter().fold(0u64, |acc, &v| acc | 1 << v);
        // left[i], right[i] for 1-based i in 2..=m-1
        let mut left = vec![None; m + 1];
        let mut right = vec![None; m + 1];
        for i in 2..m {
            let l = self.solve(prefix(i))?;
            let r = self.solve(suffix(i))?;
            if l.1 == r.1 {
                let mut tree = l.0;
                tree.extend(r.0.iter().copied());
                return Ok((tree, l.1));
            }
            left[i] = Some(l);
            right[i] = Some(r);
        }
        for i in 2..m - 1 {
            let (l, r) = (left[i].as_ref().unwrap(), right[i + 1].as_ref().unwrap());
            if l.1 != h || r.1 != h {
                continue;
            }
            let (a, b) = (vs[i - 1], vs[i]);
            let direct = Edge::new(a, b);
            let join = if c.color(direct) == h {
                direct
            } else {
                self.spanning_hull_edge(&hull_edges, a, b)
                    .ok_or_else(|| format!("no hull edge spans the slab between {a} and {b}"))?
            };
            let mut tree = l.0.clone();
            tree.extend(r.0.iter().copied());
            tree.insert(join);
            return Ok((tree, h));
        }
        Err(format!("no index joins two color-{h} trees over {vs:?}"))
    }

    /// Hull edge whose x-range covers the slab between `a` and `b`; the one
    /// above the segment `ab` when both chains qualify.
    fn spanning_hull_edge(&self, hull_edges: &[Edge], a: usize, b: usize) -> Option<Edge> {
        let (pa, pb) = (self.pts[a], self.pts[b]);
        let spanning: Vec<Edge> = hull_edges
            .iter()
            .copied()
            .filter(|e| {
                let (x0, x1) = {
                    let (p, q) = (self.pts[e.u()].x, self.pts[e.v()].x);
                    (p.min(q), p.max(q))
                };
                x0 <= pa.x && pb.x <= x1
            })
            .collect();
        let above = |e: &Edge| {
            let (mut p, mut q) = (self.pts[e.u()], self.pts[e.v()]);
            if p.x > q.x {
                std::mem::swap(&mut p, &mut q);
            }
            let probe = if e.contains(a) { pb } else { pa };
            orient(p, q, probe) == Ordering::Less
        };
        spanning.iter().find(|e| above(e)).or(spanning.first()).copied()
    }
}

/// Monochromatic plane spanning tree of a 2-colored straight-line drawing.
pub fn solve_pseudolinear(p: &PointDrawing) -> Result<SolveReport, SolveError> {
    let c = &p.color;
    if c.k() != 2 {
        return Err(SolveError::WrongColorCount { expected: 2, got: c.k() });
    }
    let n = p.n();
    assert!(n <= 64, "vertex sets are tracked as 64-bit masks");
    if n <= 1 {
        return Ok(SolveReport::found(EdgeSet::new(), c));
    }
    let d = compile_points(p);
    let mut solver = Solver {
        pts: &p.points,
        color: c,
        table: CrossingTable::new(&d),
        memo: HashMap::new(),
        hull_checks: 0,
        reattachments: 0,
    };
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    match solver.solve(full) {
        Ok((tree, _)) => {
            let checks = vec![
                InvariantCheck::new("hull", true, format!("{} hulls uncrossed and monochromatic", solver.hull_checks)),
                InvariantCheck::new("reattach", true, format!("{} vertices", solver.reattachments)),
            ];
            Ok(SolveReport::found(tree, c).with_checks(checks))
        }
        Err(why) => Ok(SolveReport::counterexample(why).with_checks(vec![InvariantCheck::new("induction", false, "")])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::{is_plane, is_spanning_tree, validate_drawing};

    fn pts(coords: &[(i64, i64)]) -> Vec<Point> {
        coords.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    fn convex(n: usize) -> Vec<Point> {
        // points on the parabola y = x^2 are in convex position
        (0..n as i64).map(|x| Point::new(x, x * x)).collect()
    }

    #[test]
    fn crossing_counts() {
        let sq = pts(&[(0, 0), (3, 1), (1, 4), (4, 3)]);
        let p = PointDrawing::new(sq, EdgeColoring::uniform(4, 2, 0).unwrap()).unwrap();
        assert_eq!(compile_points(&p).crossings().len(), 1);
        let tri = PointDrawing::new(pts(&[(0, 0), (2, 1), (1, 3)]), EdgeColoring::uniform(3, 2, 0).unwrap()).unwrap();
        assert!(compile_points(&tri).crossings().is_empty());
        for n in 4..9 {
            let p = PointDrawing::new(convex(n), EdgeColoring::uniform(n, 2, 0).unwrap()).unwrap();
            let d = compile_points(&p);
            let c4 = n * (n - 1) * (n - 2) * (n - 3) / 24;
            assert_eq!(d.crossings().len(), c4);
            assert!(validate_drawing(&d).is_empty());
        }
    }

    #[test]
    fn rejects_degenerate_points() {
        let c = EdgeColoring::uniform(3, 2, 0).unwrap();
        assert_eq!(
            PointDrawing::new(pts(&[(0, 0), (1, 1), (2, 2)]), c.clone()),
            Err(LayoutError::Collinear(0, 1, 2))
        );
        assert_eq!(PointDrawing::new(pts(&[(0, 0), (0, 1), (2, 5)]), c), Err(LayoutError::DuplicateX(0, 1)));
    }

    #[test]
    fn rotation_is_counterclockwise() {
        let p = PointDrawing::new(pts(&[(0, 0), (2, 1), (1, 3), (-1, -2)]), EdgeColoring::uniform(4, 2, 0).unwrap())
            .unwrap();
        let d = compile_points(&p);
        assert_eq!(d.rotation(0).unwrap(), &[1, 2, 3]);
        assert_eq!(d.x_order().unwrap(), vec![3, 0, 2, 1]);
    }

    #[test]
    fn hull_is_ccw() {
        let p = pts(&[(0, 0), (4, -1), (2, 1), (5, 4), (1, 5)]);
        assert_eq!(convex_hull(&p, &[0, 1, 2, 3, 4]), vec![0, 1, 3, 4]);
    }

    #[test]
    fn all_red_instance() {
        let p = PointDrawing::new(pts(&[(0, 0), (4, -1), (2, 1), (5, 4), (1, 5)]), EdgeColoring::uniform(5, 2, 0).unwrap())
            .unwrap();
        let r = solve_pseudolinear(&p).unwrap();
        assert!(r.is_found());
        assert_eq!(r.color, Some(0));
        let d = compile_points(&p);
        assert!(is_plane(&d, &r.tree) && is_spanning_tree(5, &r.tree));
    }

    #[test]
    fn convex_red_hull_blue_diagonals() {
        let n = 6;
        let c = EdgeColoring::from_fn(n, 2, |e| usize::from(!(e.v() == e.u() + 1 || (e.u() == 0 && e.v() == n - 1))))
            .unwrap();
        let p = PointDrawing::new(convex(n), c.clone()).unwrap();
        let r = solve_pseudolinear(&p).unwrap();
        assert_eq!(r.color, Some(0));
        assert!(r.tree.is_subset(&c.class(0)));
        assert!(is_spanning_tree(n, &r.tree));
    }

    #[test]
    fn interior_point_instances() {
        // one interior point; sweep all 2-colorings of K_5
        let p = pts(&[(0, 0), (6, -1), (3, 2), (7, 5), (1, 6)]);
        let d0 = PointDrawing::new(p.clone(), EdgeColoring::uniform(5, 2, 0).unwrap()).unwrap();
        let d = compile_points(&d0);
        for mask in 0u32..1024 {
            let c = EdgeColoring::new(5, 2, (0..10).map(|i| (mask >> i & 1) as usize).collect()).unwrap();
            let pd = d0.clone().with_coloring(c.clone()).unwrap();
            let r = solve_pseudolinear(&pd).unwrap();
            assert!(r.is_found(), "mask {mask}: {}", r.to_text());
            assert!(r.output_violations(&d, &c).is_empty(), "mask {mask}");
            assert!(r.color.is_some());
        }
    }
}
