//! Annulus realization of cylindrical drawings.
//!
//! Vertices sit on an inner and an outer circle at angles measured in units
//! of π. A side edge `(u, w)` is the radial-linear curve whose angle moves
//! from `angle(u)` to `angle(u) + δ(u, w)` as the radius goes from the inner
//! to the outer circle, where `δ(u, w) ≡ angle(w) - angle(u) (mod 2)`.
//! Inner edges are chords inside the inner circle, outer edges run outside
//! the outer circle, so both kinds cross exactly when their endpoints
//! interleave along their circle.

use num_rational::Rational64;
use num_traits::Signed;

use crate::drawing::{Drawing, Edge, EdgeColoring, VertexLabel};
use crate::error::LayoutError;

/// Angle in units of π.
pub type Angle = Rational64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Circle {
    Inner,
    Outer,
}

impl Circle {
    pub fn opposite(self) -> Circle {
        match self {
            Circle::Inner => Circle::Outer,
            Circle::Outer => Circle::Inner,
        }
    }
}

/// Vertices `0..n_inner` are inner, `n_inner..n` outer, each block in
/// increasing angle order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CylindricalLayout {
    inner: Vec<Angle>,
    outer: Vec<Angle>,
    /// Row-major by inner position, then outer position.
    windings: Vec<Angle>,
    color: EdgeColoring,
}

fn two() -> Angle {
    Angle::from_integer(2)
}

/// Residue of `a` in `[0, 2)`.
pub fn normalize(a: Angle) -> Angle {
    let q = (a / two()).floor();
    a - q * two()
}

impl CylindricalLayout {
    pub fn new(
        inner: Vec<Angle>,
        outer: Vec<Angle>,
        windings: Vec<Angle>,
        color: EdgeColoring,
    ) -> Result<Self, LayoutError> {
        if inner.is_empty() && outer.is_empty() {
            return Err(LayoutError::Empty);
        }
        for (name, angles) in [("inner", &inner), ("outer", &outer)] {
            for (i, a) in angles.iter().enumerate() {
                if a.is_negative() || *a >= two() {
                    return Err(LayoutError::AngleOutOfRange(a.to_string()));
                }
                if i > 0 && angles[i - 1] >= *a {
                    return Err(LayoutError::AnglesNotIncreasing { circle: name, index: i });
                }
            }
        }
        let n = inner.len() + outer.len();
        if color.n() != n {
            return Err(crate::error::DrawingError::SizeMismatch {
                drawing: n,
                coloring: color.n(),
            }
            .into());
        }
        if windings.len() != inner.len() * outer.len() {
            let (i, j) = (windings.len() / outer.len().max(1), windings.len() % outer.len().max(1));
            return Err(LayoutError::MissingWinding {
                inner: i,
                outer: inner.len() + j,
            });
        }
        let layout = CylindricalLayout {
            inner,
            outer,
            windings,
            color,
        };
        for i in 0..layout.inner.len() {
            for j in 0..layout.outer.len() {
                let diff = layout.winding(i, j) - (layout.outer[j] - layout.inner[i]);
                if !(diff / two()).is_integer() {
                    return Err(LayoutError::WindingIncongruent {
                        inner: i,
                        outer: layout.inner.len() + j,
                    });
                }
            }
        }
        Ok(layout)
    }

    /// Windings chosen as the residue in `[0, 2)` of the angle difference.
    pub fn minimal_windings(inner: &[Angle], outer: &[Angle]) -> Vec<Angle> {
        inner
            .iter()
            .flat_map(|a| outer.iter().map(move |b| normalize(*b - *a)))
            .collect()
    }

    pub fn n(&self) -> usize {
        self.inner.len() + self.outer.len()
    }

    pub fn n_inner(&self) -> usize {
        self.inner.len()
    }

    pub fn n_outer(&self) -> usize {
        self.outer.len()
    }

    pub fn inner_angles(&self) -> &[Angle] {
        &self.inner
    }

    pub fn outer_angles(&self) -> &[Angle] {
        &self.outer
    }

    pub fn coloring(&self) -> &EdgeColoring {
        &self.color
    }

    pub fn with_coloring(mut self, color: EdgeColoring) -> Result<Self, LayoutError> {
        if color.n() != self.n() {
            return Err(crate::error::DrawingError::SizeMismatch {
                drawing: self.n(),
                coloring: color.n(),
            }
            .into());
        }
        self.color = color;
        Ok(self)
    }

    pub fn circle(&self, v: usize) -> Circle {
        if v < self.inner.len() {
            Circle::Inner
        } else {
            Circle::Outer
        }
    }

    /// Position of `v` along its own circle.
    pub fn position(&self, v: usize) -> usize {
        match self.circle(v) {
            Circle::Inner => v,
            Circle::Outer => v - self.inner.len(),
        }
    }

    pub fn vertex(&self, circle: Circle, position: usize) -> usize {
        match circle {
            Circle::Inner => position,
            Circle::Outer => self.inner.len() + position,
        }
    }

    pub fn circle_len(&self, circle: Circle) -> usize {
        match circle {
            Circle::Inner => self.inner.len(),
            Circle::Outer => self.outer.len(),
        }
    }

    pub fn circle_vertices(&self, circle: Circle) -> std::ops::Range<usize> {
        match circle {
            Circle::Inner => 0..self.inner.len(),
            Circle::Outer => self.inner.len()..self.n(),
        }
    }

    pub fn angle(&self, v: usize) -> Angle {
        match self.circle(v) {
            Circle::Inner => self.inner[v],
            Circle::Outer => self.outer[v - self.inner.len()],
        }
    }

    /// δ for inner position `i` and outer position `j`.
    pub fn winding(&self, i: usize, j: usize) -> Angle {
        self.windings[i * self.outer.len() + j]
    }

    pub fn windings(&self) -> &[Angle] {
        &self.windings
    }

    pub fn is_side_edge(&self, e: Edge) -> bool {
        self.circle(e.u()) != self.circle(e.v())
    }

    /// δ of a side edge given by its vertex ids.
    pub fn side_winding(&self, e: Edge) -> Angle {
        debug_assert!(self.is_side_edge(e));
        self.winding(e.u(), e.v() - self.inner.len())
    }

    /// Edges between circle-consecutive vertices.
    pub fn cycle_edges(&self, circle: Circle) -> Vec<Edge> {
        let len = self.circle_len(circle);
        match len {
            0 | 1 => Vec::new(),
            2 => vec![Edge::new(self.vertex(circle, 0), self.vertex(circle, 1))],
            _ => (0..len)
                .map(|p| Edge::new(self.vertex(circle, p), self.vertex(circle, (p + 1) % len)))
                .collect(),
        }
    }

    /// Layout induced by `keep` (vertex ids, any order). Returns the new
    /// layout and the map from new ids to old ids.
    pub fn restrict(&self, keep: &[usize]) -> Result<(CylindricalLayout, Vec<usize>), LayoutError> {
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let inner_pos: Vec<usize> = sorted.iter().copied().filter(|&v| v < self.n_inner()).collect();
        let outer_pos: Vec<usize> = sorted
            .iter()
            .copied()
            .filter(|&v| v >= self.n_inner())
            .map(|v| v - self.n_inner())
            .collect();
        let inner = inner_pos.iter().map(|&i| self.inner[i]).collect();
        let outer = outer_pos.iter().map(|&j| self.outer[j]).collect();
        let windings = inner_pos
            .iter()
            .flat_map(|&i| outer_pos.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.winding(i, j))
            .collect();
        let m = sorted.len();
        let color = EdgeColoring::from_fn(m, self.color.k(), |e| {
            self.color.color(Edge::new(sorted[e.u()], sorted[e.v()]))
        })?;
        Ok((CylindricalLayout::new(inner, outer, windings, color)?, sorted))
    }
}

/// Number of integers strictly between `a` and `b`.
fn integers_between(a: Angle, b: Angle) -> u64 {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let count = hi.ceil().to_integer() - lo.floor().to_integer() - 1;
    count.max(0) as u64
}

/// Interior meetings of two side edges: the number of times the angle
/// difference of the two curves passes a multiple of 2π for t in (0, 1).
pub fn side_meetings(l: &CylindricalLayout, e: Edge, f: Edge) -> u64 {
    let start = l.angle(e.u()) - l.angle(f.u());
    let end = start + l.side_winding(e) - l.side_winding(f);
    integers_between(start / two(), end / two())
}

fn interleave(a: (usize, usize), b: (usize, usize)) -> bool {
    let inside = |x: usize| a.0 < x && x < a.1;
    inside(b.0) != inside(b.1) && ![a.0, a.1].contains(&b.0) && ![a.0, a.1].contains(&b.1)
}

fn chord_crossings(l: &CylindricalLayout, circle: Circle, out: &mut Vec<(Edge, Edge)>) {
    let len = l.circle_len(circle);
    for p in 0..len {
        for r in p + 2..len {
            for q in p + 1..r {
                for s in r + 1..len {
                    debug_assert!(interleave((p, r), (q, s)));
                    out.push((
                        Edge::new(l.vertex(circle, p), l.vertex(circle, r)),
                        Edge::new(l.vertex(circle, q), l.vertex(circle, s)),
                    ));
                }
            }
        }
    }
}

fn side_order(l: &CylindricalLayout, v: usize) -> Vec<usize> {
    let mut sides: Vec<usize> = l.circle_vertices(l.circle(v).opposite()).collect();
    sides.sort_by_key(|&w| l.side_winding(Edge::new(v, w)));
    sides
}

/// Counterclockwise rotation of every vertex.
///
/// At an inner vertex the side edges come first by increasing δ, followed by
/// the inner neighbors in counterclockwise circle order starting from the
/// successor. At an outer vertex the side edges come first by increasing δ,
/// followed by the outer neighbors in clockwise circle order starting from
/// the predecessor.
pub fn layout_rotations(l: &CylindricalLayout) -> Vec<Vec<usize>> {
    (0..l.n())
        .map(|v| {
            let circle = l.circle(v);
            let len = l.circle_len(circle);
            let p = l.position(v);
            let mut rot = side_order(l, v);
            for step in 1..len {
                let q = match circle {
                    Circle::Inner => (p + step) % len,
                    Circle::Outer => (p + len - step) % len,
                };
                rot.push(l.vertex(circle, q));
            }
            rot
        })
        .collect()
}

/// Compiles a layout to its combinatorial drawing. Rejects layouts whose
/// side edges meet more than the simplicity axioms allow.
pub fn compile_layout(l: &CylindricalLayout) -> Result<Drawing, LayoutError> {
    let mut crossings = Vec::new();
    chord_crossings(l, Circle::Inner, &mut crossings);
    chord_crossings(l, Circle::Outer, &mut crossings);
    let sides: Vec<Edge> = l
        .circle_vertices(Circle::Inner)
        .flat_map(|u| l.circle_vertices(Circle::Outer).map(move |w| Edge::new(u, w)))
        .collect();
    for (a, &e) in sides.iter().enumerate() {
        for &f in &sides[a + 1..] {
            let start = l.angle(e.u()) - l.angle(f.u());
            let end = start + l.side_winding(e) - l.side_winding(f);
            let adjacent = e.is_adjacent(&f);
            if !adjacent && ((start / two()).is_integer() || (end / two()).is_integer()) {
                return Err(LayoutError::NotSimple {
                    e: e.to_string(),
                    f: f.to_string(),
                    count: u64::MAX,
                });
            }
            let count = integers_between(start / two(), end / two());
            let limit = if adjacent { 0 } else { 1 };
            if count > limit {
                return Err(LayoutError::NotSimple {
                    e: e.to_string(),
                    f: f.to_string(),
                    count,
                });
            }
            if count == 1 {
                crossings.push((e, f));
            }
        }
    }
    let labels = (0..l.n())
        .map(|v| match l.circle(v) {
            Circle::Inner => VertexLabel::Inner,
            Circle::Outer => VertexLabel::Outer,
        })
        .collect();
    Ok(Drawing::new(l.n(), crossings)
        .with_rotations(layout_rotations(l))
        .with_labels(labels))
}

/// Opposite-circle vertices in the rotation order of `v`; errors unless the
/// sequence is a circular shift of their circle order (counterclockwise for
/// an inner `v`, clockwise for an outer one).
pub fn rotation_order_check(d: &Drawing, v: usize) -> Result<Vec<usize>, String> {
    let labels = d.labels().ok_or("drawing has no circle labels")?;
    let rot = d.rotation(v).ok_or("drawing has no rotations")?;
    let mine = labels[v];
    let opposite = |w: &usize| labels[*w] != mine && matches!(labels[*w], VertexLabel::Inner | VertexLabel::Outer);
    let seq: Vec<usize> = rot.iter().copied().filter(opposite).collect();
    // seen from an outer vertex the inner circle is traversed clockwise
    let mut circle_order: Vec<usize> = (0..d.n()).filter(|w| w != &v && opposite(w)).collect();
    if mine == VertexLabel::Outer {
        circle_order.reverse();
    }
    if seq.is_empty() {
        return Err(format!("vertex {v} has no side edges"));
    }
    let start = circle_order.iter().position(|&w| w == seq[0]).ok_or("rotation mismatch")?;
    let shifted: Vec<usize> = circle_order[start..]
        .iter()
        .chain(&circle_order[..start])
        .copied()
        .collect();
    if shifted == seq {
        Ok(seq)
    } else {
        Err(format!(
            "rotation of {v} lists {seq:?}, not a circular shift of {circle_order:?}"
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::validate_drawing;

    fn r(p: i64, q: i64) -> Angle {
        Angle::new(p, q)
    }

    fn layout(inner: &[Angle], outer: &[Angle], windings: Option<Vec<Angle>>) -> CylindricalLayout {
        let n = inner.len() + outer.len();
        let w = windings.unwrap_or_else(|| CylindricalLayout::minimal_windings(inner, outer));
        CylindricalLayout::new(inner.to_vec(), outer.to_vec(), w, EdgeColoring::uniform(n, 2, 0).unwrap())
            .unwrap()
    }

    #[test]
    fn crossing_count_example() {
        // e: starts at 0, δ = π/2; f: starts at π/4, δ = -π/2
        let l = layout(&[r(0, 1), r(1, 4)], &[r(1, 2), r(7, 4)], Some(vec![r(1, 2), r(-1, 4), r(1, 4), r(-1, 2)]));
        let e = Edge::new(0, 2);
        let f = Edge::new(1, 3);
        assert_eq!(side_meetings(&l, e, f), 1);
        let d = compile_layout(&l).unwrap();
        assert!(d.crosses(e, f));
    }

    #[test]
    fn integer_counting() {
        assert_eq!(integers_between(r(-1, 8), r(3, 8)), 1);
        assert_eq!(integers_between(r(0, 1), r(1, 2)), 0);
        assert_eq!(integers_between(r(0, 1), r(1, 1)), 0);
        assert_eq!(integers_between(r(-3, 2), r(1, 2)), 2);
        assert_eq!(integers_between(r(1, 3), r(1, 3)), 0);
    }

    #[test]
    fn inner_chords_cross_when_interleaved() {
        let l = layout(&[r(0, 1), r(1, 2), r(1, 1), r(3, 2)], &[r(1, 4)], None);
        let d = compile_layout(&l).unwrap();
        assert!(d.crosses(Edge::new(0, 2), Edge::new(1, 3)));
        assert!(!d.crosses(Edge::new(0, 1), Edge::new(2, 3)));
    }

    #[test]
    fn radial_fan_three_plus_three() {
        // aligned angles with minimal windings: u_i w_i are radial segments
        let angles = [r(0, 1), r(2, 3), r(4, 3)];
        let l = layout(&angles, &angles, None);
        let d = compile_layout(&l).unwrap();
        assert!(validate_drawing(&d).is_empty());
        for a in 0..3 {
            for b in 0..3 {
                if a != b {
                    assert!(!d.crosses(Edge::new(a, 3 + a), Edge::new(b, 3 + b)));
                }
            }
        }
        // brute-force count of side crossings from the closed form
        let mut count = 0;
        for e in [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)] {
            for f in [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)] {
                let (e, f) = (Edge::new(e.0, e.1), Edge::new(f.0, f.1));
                if e < f {
                    let m = side_meetings(&l, e, f);
                    if e.is_adjacent(&f) {
                        assert_eq!(m, 0);
                    }
                    count += m;
                }
            }
        }
        assert_eq!(count as usize, d.crossings().len());
    }

    #[test]
    fn rejects_adjacent_crossing_windings() {
        // two side edges at inner vertex 0 whose δ differ by more than 2
        let inner = [r(0, 1)];
        let outer = [r(1, 2), r(1, 1)];
        let bad = CylindricalLayout::new(
            inner.to_vec(),
            outer.to_vec(),
            vec![r(1, 2), r(3, 1)],
            EdgeColoring::uniform(3, 2, 0).unwrap(),
        )
        .unwrap();
        assert!(matches!(compile_layout(&bad), Err(LayoutError::NotSimple { .. })));
    }

    #[test]
    fn rejects_incongruent_winding() {
        let err = CylindricalLayout::new(
            vec![r(0, 1)],
            vec![r(1, 2)],
            vec![r(1, 3)],
            EdgeColoring::uniform(2, 2, 0).unwrap(),
        );
        assert!(matches!(err, Err(LayoutError::WindingIncongruent { .. })));
        let err = CylindricalLayout::new(vec![r(1, 1), r(1, 2)], vec![], vec![], EdgeColoring::uniform(2, 2, 0).unwrap());
        assert!(matches!(err, Err(LayoutError::AnglesNotIncreasing { .. })));
        let err = CylindricalLayout::new(vec![r(2, 1)], vec![], vec![], EdgeColoring::uniform(1, 2, 0).unwrap());
        assert!(err.is_err());
    }

    #[test]
    fn rotation_examples() {
        let l = layout(&[r(0, 1), r(1, 1)], &[r(1, 3), r(2, 3), r(5, 3)], None);
        let d = compile_layout(&l).unwrap();
        let order = rotation_order_check(&d, 0).unwrap();
        assert_eq!(order, vec![2, 3, 4]);
        for v in 0..5 {
            rotation_order_check(&d, v).unwrap();
        }
        // one outer vertex: singleton list
        let l1 = layout(&[r(0, 1), r(1, 1)], &[r(1, 2)], None);
        let d1 = compile_layout(&l1).unwrap();
        assert_eq!(rotation_order_check(&d1, 0).unwrap(), vec![2]);
    }

    #[test]
    fn wrapped_winding_still_a_circular_shift() {
        // one inner vertex: any window of length < 2 is valid; shift the
        // edge to the last outer vertex by -2 so it wraps the other way.
        let inner = [r(0, 1)];
        let outer = [r(1, 3), r(2, 3), r(5, 3)];
        let mut w = CylindricalLayout::minimal_windings(&inner, &outer);
        w[2] -= two();
        let l = layout(&inner, &outer, Some(w));
        let d = compile_layout(&l).unwrap();
        let order = rotation_order_check(&d, 0).unwrap();
        assert_eq!(order, vec![3, 1, 2]);
    }

    #[test]
    fn restrict_renumbers() {
        let l = layout(&[r(0, 1), r(1, 2), r(1, 1)], &[r(1, 4), r(5, 4)], None);
        let (sub, map) = l.restrict(&[4, 0, 2]).unwrap();
        assert_eq!(map, vec![0, 2, 4]);
        assert_eq!(sub.n_inner(), 2);
        assert_eq!(sub.n_outer(), 1);
        assert_eq!(sub.winding(1, 0), l.winding(2, 1));
    }

    #[test]
    fn normalize_into_range() {
        assert_eq!(normalize(r(-1, 2)), r(3, 2));
        assert_eq!(normalize(r(5, 2)), r(1, 2));
        assert_eq!(normalize(r(2, 1)), r(0, 1));
    }
}
