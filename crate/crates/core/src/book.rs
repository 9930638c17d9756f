//! 2-page book drawings: vertices on a horizontal spine, every edge drawn as
//! an arc on the top or the bottom page.

use std::fmt;

use crate::drawing::{all_edges, edge_count, CrossingTable, Drawing, Edge, EdgeColoring, EdgeSet, VertexLabel};
use crate::error::{LayoutError, SolveError};
use crate::report::{InvariantCheck, SolveReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Page {
    Top,
    Bottom,
}

impl fmt::Display for Page {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Page::Top => "top",
            Page::Bottom => "bottom",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BookLayout {
    /// `spine[i]` is the vertex at spine position `i`.
    spine: Vec<usize>,
    /// Indexed by [`Edge::index`].
    pages: Vec<Page>,
    color: EdgeColoring,
}

impl BookLayout {
    pub fn new(spine: Vec<usize>, pages: Vec<Page>, color: EdgeColoring) -> Result<Self, LayoutError> {
        let n = spine.len();
        let mut seen = vec![false; n];
        for &v in &spine {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(LayoutError::BadSpine(n));
            }
        }
        if pages.len() != edge_count(n) {
            let missing = Edge::from_index(pages.len().min(edge_count(n).saturating_sub(1)), n.max(2));
            return Err(LayoutError::MissingPage(missing.to_string()));
        }
        if color.n() != n {
            return Err(crate::error::DrawingError::SizeMismatch { drawing: n, coloring: color.n() }.into());
        }
        Ok(BookLayout { spine, pages, color })
    }

    /// Every edge on one page: the convex (1-page) special case.
    pub fn one_page(spine: Vec<usize>, color: EdgeColoring) -> Result<Self, LayoutError> {
        let pages = vec![Page::Top; edge_count(spine.len())];
        Self::new(spine, pages, color)
    }

    pub fn n(&self) -> usize {
        self.spine.len()
    }

    pub fn spine(&self) -> &[usize] {
        &self.spine
    }

    pub fn page(&self, e: Edge) -> Page {
        self.pages[e.index(self.n())]
    }

    pub fn pages(&self) -> &[Page] {
        &self.pages
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

    /// Spine position of every vertex.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.n()];
        for (i, &v) in self.spine.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

/// Two edges cross iff they share a page and their spine positions
/// interleave.
pub fn compile_book(b: &BookLayout) -> Drawing {
    let n = b.n();
    let pos = b.positions();
    let span = |e: Edge| {
        let (x, y) = (pos[e.u()], pos[e.v()]);
        (x.min(y), x.max(y))
    };
    let edges: Vec<Edge> = all_edges(n).collect();
    let mut crossings = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        let (a, c) = span(e);
        for &f in &edges[i + 1..] {
            if e.is_adjacent(&f) || b.page(e) != b.page(f) {
                continue;
            }
            let (x, y) = span(f);
            if (a < x && x < c && c < y) || (x < a && a < y && y < c) {
                crossings.push((e, f));
            }
        }
    }
    let rotations = (0..n)
        .map(|v| {
            let p = pos[v];
            let on = |page: Page, q: usize| q != p && b.page(Edge::new(v, b.spine[q])) == page;
            let mut rot = Vec::with_capacity(n - 1);
            rot.extend((p + 1..n).filter(|&q| on(Page::Top, q)));
            rot.extend((0..p).filter(|&q| on(Page::Top, q)));
            rot.extend((0..p).rev().filter(|&q| on(Page::Bottom, q)));
            rot.extend((p + 1..n).rev().filter(|&q| on(Page::Bottom, q)));
            rot.into_iter().map(|q| b.spine[q]).collect()
        })
        .collect();
    let labels = pos.iter().map(|&p| VertexLabel::Spine(p)).collect();
    Drawing::new(n, crossings).with_rotations(rotations).with_labels(labels)
}

struct Removal {
    vertex: usize,
    /// Edges at `vertex` uncrossed in the subdrawing it was removed from.
    uncrossed: Vec<Edge>,
}

/// Monochromatic plane spanning tree of a 2-colored book drawing.
///
/// Vertices with uncrossed edges of both colors are peeled off (lowest spine
/// position first); the consecutive-spine path of what remains is uncrossed
/// and monochromatic, and each peeled vertex is hung back on by an uncrossed
/// edge of the path's color.
pub fn solve_book(b: &BookLayout) -> Result<SolveReport, SolveError> {
    let c = &b.color;
    if c.k() != 2 {
        return Err(SolveError::WrongColorCount { expected: 2, got: c.k() });
    }
    let n = b.n();
    if n == 1 {
        return Ok(SolveReport::found(EdgeSet::new(), c));
    }
    let d = compile_book(b);
    let table = CrossingTable::new(&d);
    let pos = b.positions();
    let mut alive = vec![true; n];
    let mut removed: Vec<Removal> = Vec::new();

    let uncrossed_at = |v: usize, alive: &[bool]| -> Vec<Edge> {
        (0..n)
            .filter(|&w| w != v && alive[w])
            .map(|w| Edge::new(v, w))
            .filter(|&e| table.is_uncrossed_within(e, alive))
            .collect()
    };

    'peel: loop {
        for &v in &b.spine {
            if !alive[v] {
                continue;
            }
            let uncrossed = uncrossed_at(v, &alive);
            let has = |col: usize| uncrossed.iter().any(|&e| c.color(e) == col);
            if has(0) && has(1) {
                alive[v] = false;
                removed.push(Removal { vertex: v, uncrossed });
                continue 'peel;
            }
        }
        break;
    }

    let rest: Vec<usize> = b.spine.iter().copied().filter(|&v| alive[v]).collect();
    let path: Vec<Edge> = rest.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
    let colors: std::collections::BTreeSet<usize> = path.iter().map(|&e| c.color(e)).collect();
    let uncrossed = path.iter().all(|&e| table.is_uncrossed_within(e, &alive));
    if colors.len() != 1 || !uncrossed {
        return Ok(SolveReport::counterexample(format!(
            "residual spine path {path:?} is not an uncrossed monochromatic path (colors {colors:?})"
        ))
        .with_checks(vec![InvariantCheck::new("spine-path", false, format!("{} vertices left", rest.len()))]));
    }
    let color = *colors.iter().next().unwrap();
    let mut tree: EdgeSet = path.into_iter().collect();
    for r in removed.iter().rev() {
        let attach = r
            .uncrossed
            .iter()
            .filter(|&&e| c.color(e) == color)
            .min_by_key(|e| {
                let w = e.other(r.vertex);
                (pos[w].abs_diff(pos[r.vertex]), pos[w])
            });
        match attach {
            Some(&e) => {
                tree.insert(e);
            }
            None => {
                return Ok(SolveReport::counterexample(format!(
                    "removed vertex {} has no uncrossed color-{color} edge",
                    r.vertex
                )));
            }
        }
    }
    let checks = vec![
        InvariantCheck::new("spine-path", true, format!("{} vertices left", rest.len())),
        InvariantCheck::new("reattach", true, format!("{} vertices", removed.len())),
    ];
    Ok(SolveReport::found(tree, c).with_checks(checks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::{is_plane, is_spanning_tree, validate_drawing};

    fn layout(n: usize, top: &[(usize, usize)], color: EdgeColoring) -> BookLayout {
        let pages = all_edges(n)
            .map(|e| if top.contains(&(e.u(), e.v())) { Page::Top } else { Page::Bottom })
            .collect();
        BookLayout::new((0..n).collect(), pages, color).unwrap()
    }

    #[test]
    fn crossing_rule() {
        let c = EdgeColoring::uniform(4, 2, 0).unwrap();
        let both_top = layout(4, &[(0, 2), (1, 3)], c.clone());
        let d = compile_book(&both_top);
        assert!(d.crosses(Edge::new(0, 2), Edge::new(1, 3)));
        let split = layout(4, &[(0, 2)], c);
        assert!(!compile_book(&split).crosses(Edge::new(0, 2), Edge::new(1, 3)));
        assert!(validate_drawing(&d).is_empty());
    }

    #[test]
    fn consecutive_spine_edges_uncrossed() {
        let n = 6;
        let c = EdgeColoring::uniform(n, 2, 0).unwrap();
        let d = compile_book(&BookLayout::one_page((0..n).collect(), c).unwrap());
        for (e, f) in d.crossings() {
            assert!(e.v() - e.u() > 1 && f.v() - f.u() > 1);
        }
        // convex: one crossing per 4-subset
        assert_eq!(d.crossings().len(), 15);
    }

    #[test]
    fn monochromatic_instance_gives_spine_path() {
        let n = 5;
        let c = EdgeColoring::uniform(n, 2, 1).unwrap();
        let b = BookLayout::one_page(vec![2, 0, 4, 1, 3], c);
        let r = solve_book(&b.unwrap()).unwrap();
        assert!(r.is_found());
        assert_eq!(r.color, Some(1));
        let path: EdgeSet = [(2, 0), (0, 4), (4, 1), (1, 3)].iter().map(|&(a, b)| Edge::new(a, b)).collect();
        assert_eq!(r.tree, path);
    }

    #[test]
    fn two_vertices() {
        let c = EdgeColoring::uniform(2, 2, 0).unwrap();
        let r = solve_book(&BookLayout::one_page(vec![0, 1], c).unwrap()).unwrap();
        assert_eq!(r.tree.len(), 1);
    }

    #[test]
    fn peeling_and_reattachment() {
        // spine path 0-1-2-3 alternating colors forces peeling
        let n = 4;
        let c = EdgeColoring::from_fn(n, 2, |e| (e.u() + e.v()) % 2).unwrap();
        let b = layout(n, &[(0, 2)], c.clone());
        let r = solve_book(&b).unwrap();
        assert!(r.is_found(), "{r:?}");
        let d = compile_book(&b);
        assert!(is_plane(&d, &r.tree));
        assert!(is_spanning_tree(n, &r.tree));
        assert_eq!(c.colors_of(&r.tree).len(), 1);
    }

    #[test]
    fn rotation_is_a_permutation() {
        let c = EdgeColoring::uniform(5, 2, 0).unwrap();
        let b = layout(5, &[(0, 3), (1, 4), (2, 4)], c);
        let d = compile_book(&b);
        assert!(validate_drawing(&d).is_empty());
        // vertex 0: top-right 3, then bottom-right descending 4, 2, 1
        assert_eq!(d.rotation(0).unwrap(), &[3, 4, 2, 1]);
    }

    #[test]
    fn rejects_bad_spine() {
        let c = EdgeColoring::uniform(3, 2, 0).unwrap();
        assert!(BookLayout::one_page(vec![0, 0, 1], c.clone()).is_err());
        assert!(BookLayout::new(vec![0, 1, 2], vec![Page::Top], c).is_err());
    }

    #[test]
    fn wrong_color_count() {
        let c = EdgeColoring::uniform(3, 3, 0).unwrap();
        let b = BookLayout::one_page(vec![0, 1, 2], c).unwrap();
        assert!(matches!(solve_book(&b), Err(SolveError::WrongColorCount { .. })));
    }
}
