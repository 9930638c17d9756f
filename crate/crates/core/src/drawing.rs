//! Abstract combinatorial model of an edge-colored simple drawing of K_n.
//!
//! A [`Drawing`] stores only what the solvers consume: the set of crossing
//! edge pairs (which fixes the weak isomorphism class), optional rotations,
//! and optional vertex role labels. Geometric layouts live in their own
//! modules and compile down to this type.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::DrawingError;

/// An edge of K_n, canonically stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Panics on a loop; use [`Edge::try_new`] for untrusted input.
    pub fn new(a: usize, b: usize) -> Self {
        Self::try_new(a, b).expect("loop edge")
    }

    pub fn try_new(a: usize, b: usize) -> Result<Self, DrawingError> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Ok(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => Err(DrawingError::LoopEdge(a)),
        }
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn contains(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite `x`. `x` must be an endpoint.
    pub fn other(&self, x: usize) -> usize {
        debug_assert!(self.contains(x));
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn is_adjacent(&self, other: &Edge) -> bool {
        self.contains(other.u) || self.contains(other.v)
    }

    /// Position of this edge in the lexicographic order of all edges of K_n.
    pub fn index(&self, n: usize) -> usize {
        debug_assert!(self.v < n);
        self.u * n - self.u * (self.u + 1) / 2 + (self.v - self.u - 1)
    }

    pub fn from_index(mut index: usize, n: usize) -> Self {
        let mut u = 0;
        loop {
            let row = n - u - 1;
            if index < row {
                return Edge { u, v: u + 1 + index };
            }
            index -= row;
            u += 1;
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

pub fn edge_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// All edges of K_n in index order.
pub fn all_edges(n: usize) -> impl Iterator<Item = Edge> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| Edge { u, v }))
}

/// Canonical unordered pair of edges (first < second).
pub fn crossing_pair(e: Edge, f: Edge) -> (Edge, Edge) {
    if e <= f {
        (e, f)
    } else {
        (f, e)
    }
}

/// Role tag for a vertex, carried through serialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexLabel {
    Inner,
    Outer,
    Spine(usize),
    XRank(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawing {
    n: usize,
    crossings: Vec<(Edge, Edge)>,
    rotations: Option<Vec<Vec<usize>>>,
    labels: Option<Vec<VertexLabel>>,
}

impl Drawing {
    /// Builds a drawing from crossing pairs. Pairs are canonicalized and
    /// sorted; nothing is validated here (see [`validate_drawing`]).
    pub fn new(n: usize, crossings: impl IntoIterator<Item = (Edge, Edge)>) -> Self {
        let mut crossings: Vec<_> = crossings
            .into_iter()
            .map(|(e, f)| crossing_pair(e, f))
            .collect();
        crossings.sort();
        Drawing {
            n,
            crossings,
            rotations: None,
            labels: None,
        }
    }

    pub fn with_rotations(mut self, rotations: Vec<Vec<usize>>) -> Self {
        self.rotations = Some(rotations);
        self
    }

    pub fn with_labels(mut self, labels: Vec<VertexLabel>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn crossings(&self) -> &[(Edge, Edge)] {
        &self.crossings
    }

    pub fn rotations(&self) -> Option<&[Vec<usize>]> {
        self.rotations.as_deref()
    }

    pub fn rotation(&self, v: usize) -> Option<&[usize]> {
        self.rotations.as_ref().map(|r| r[v].as_slice())
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    pub fn crosses(&self, e: Edge, f: Edge) -> bool {
        self.crossings.binary_search(&crossing_pair(e, f)).is_ok()
    }

    /// Vertices sorted by x-rank, if every vertex carries an `XRank` label.
    pub fn x_order(&self) -> Option<Vec<usize>> {
        let labels = self.labels.as_ref()?;
        let mut ranked = Vec::with_capacity(self.n);
        for (v, l) in labels.iter().enumerate() {
            match l {
                VertexLabel::XRank(r) => ranked.push((*r, v)),
                _ => return None,
            }
        }
        ranked.sort();
        Some(ranked.into_iter().map(|(_, v)| v).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    VertexOutOfRange { pair: (Edge, Edge) },
    AdjacentEdgesCross { pair: (Edge, Edge) },
    DuplicateCrossing { pair: (Edge, Edge) },
    RotationCount { got: usize },
    RotationNotPermutation { vertex: usize },
    LabelCount { got: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange { pair } => {
                write!(f, "vertex out of range in crossing {} {}", pair.0, pair.1)
            }
            Violation::AdjacentEdgesCross { pair } => {
                write!(f, "adjacent edges cross: {} {}", pair.0, pair.1)
            }
            Violation::DuplicateCrossing { pair } => {
                write!(f, "crossing listed twice: {} {}", pair.0, pair.1)
            }
            Violation::RotationCount { got } => {
                write!(f, "rotation system has {got} entries")
            }
            Violation::RotationNotPermutation { vertex } => {
                write!(f, "rotation of vertex {vertex} is not a permutation of the other vertices")
            }
            Violation::LabelCount { got } => write!(f, "label list has {got} entries"),
        }
    }
}

/// Checks the local simplicity axioms. An empty result means the drawing is
/// valid. Global realizability of the crossing set is not checked.
pub fn validate_drawing(d: &Drawing) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut prev: Option<(Edge, Edge)> = None;
    for &pair in &d.crossings {
        if prev == Some(pair) {
            out.push(Violation::DuplicateCrossing { pair });
        }
        prev = Some(pair);
        if pair.0.v >= d.n || pair.1.v >= d.n {
            out.push(Violation::VertexOutOfRange { pair });
        } else if pair.0.is_adjacent(&pair.1) {
            out.push(Violation::AdjacentEdgesCross { pair });
        }
    }
    if let Some(rot) = &d.rotations {
        if rot.len() != d.n {
            out.push(Violation::RotationCount { got: rot.len() });
        } else {
            for (v, r) in rot.iter().enumerate() {
                let mut seen = vec![false; d.n];
                let ok = r.len() + 1 == d.n
                    && r.iter().all(|&w| {
                        w < d.n && w != v && !std::mem::replace(&mut seen[w], true)
                    });
                if !ok {
                    out.push(Violation::RotationNotPermutation { vertex: v });
                }
            }
        }
    }
    if let Some(labels) = &d.labels {
        if labels.len() != d.n {
            out.push(Violation::LabelCount { got: labels.len() });
        }
    }
    out
}

/// A set of edges kept in canonical order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct EdgeSet(BTreeSet<Edge>);

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.0.insert(e)
    }

    pub fn remove(&mut self, e: &Edge) -> bool {
        self.0.remove(e)
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.0.contains(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.0.iter()
    }

    pub fn vertices(&self) -> BTreeSet<usize> {
        self.0.iter().flat_map(|e| [e.u, e.v]).collect()
    }

    pub fn extend(&mut self, other: impl IntoIterator<Item = Edge>) {
        self.0.extend(other)
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Maps vertex indices through `map` (used to lift results from a
    /// subdrawing back to its host).
    pub fn relabel(&self, map: &[usize]) -> EdgeSet {
        self.0.iter().map(|e| Edge::new(map[e.u], map[e.v])).collect()
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = &'a Edge;
    type IntoIter = std::collections::btree_set::Iter<'a, Edge>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// True iff no crossing pair of `d` has both edges in `s`.
pub fn is_plane(d: &Drawing, s: &EdgeSet) -> bool {
    d.crossings
        .iter()
        .all(|(e, f)| !(s.contains(e) && s.contains(f)))
}

/// True iff `s` has exactly `n - 1` edges and connects all `n` vertices.
pub fn is_spanning_tree(n: usize, s: &EdgeSet) -> bool {
    if n == 0 || s.len() != n - 1 || s.iter().any(|e| e.v >= n) {
        return false;
    }
    let mut uf = UnionFind::new(n);
    s.iter().all(|e| uf.union(e.u, e.v))
}

/// A total map from the edges of K_n to colors `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    n: usize,
    k: usize,
    colors: Vec<usize>,
}

impl EdgeColoring {
    /// `colors` is indexed by [`Edge::index`].
    pub fn new(n: usize, k: usize, colors: Vec<usize>) -> Result<Self, DrawingError> {
        if k < 2 {
            return Err(DrawingError::TooFewColors(k));
        }
        if colors.len() != edge_count(n) {
            return Err(DrawingError::ColoringSize {
                expected: edge_count(n),
                got: colors.len(),
            });
        }
        if let Some(&color) = colors.iter().find(|&&c| c >= k) {
            return Err(DrawingError::ColorOutOfRange { color, k });
        }
        Ok(EdgeColoring { n, k, colors })
    }

    pub fn from_fn(n: usize, k: usize, f: impl Fn(Edge) -> usize) -> Result<Self, DrawingError> {
        Self::new(n, k, all_edges(n).map(f).collect())
    }

    pub fn uniform(n: usize, k: usize, color: usize) -> Result<Self, DrawingError> {
        Self::from_fn(n, k, |_| color)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn color(&self, e: Edge) -> usize {
        self.colors[e.index(self.n)]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.colors
    }

    pub fn class(&self, color: usize) -> EdgeSet {
        all_edges(self.n).filter(|&e| self.color(e) == color).collect()
    }

    /// Colors used by the edges of `s`.
    pub fn colors_of(&self, s: &EdgeSet) -> BTreeSet<usize> {
        s.iter().map(|&e| self.color(e)).collect()
    }

    /// Swaps colors 0 and 1 of a 2-coloring.
    pub fn complement(&self) -> EdgeColoring {
        assert_eq!(self.k, 2, "complement is defined for 2-colorings");
        EdgeColoring {
            n: self.n,
            k: 2,
            colors: self.colors.iter().map(|c| 1 - c).collect(),
        }
    }
}

/// Connected components of one color class, each sorted, ordered by their
/// smallest vertex.
pub fn color_class_components(n: usize, c: &EdgeColoring, color: usize) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(n);
    for e in all_edges(n) {
        if c.color(e) == color {
            uf.union(e.u, e.v);
        }
    }
    uf.components()
}

/// Collapses a k-coloring to two colors: 0 is the `keep` class, 1 is the
/// union of every other class.
pub fn merge_colors(c: &EdgeColoring, keep: usize) -> EdgeColoring {
    assert!(keep < c.k, "keep color {keep} out of range for k={}", c.k);
    EdgeColoring {
        n: c.n,
        k: 2,
        colors: c.colors.iter().map(|&x| usize::from(x != keep)).collect(),
    }
}

/// Restricts a colored drawing to the vertices `vs`, renumbered `0..vs.len()`
/// in the given order.
pub fn induced_subdrawing(
    d: &Drawing,
    c: &EdgeColoring,
    vs: &[usize],
) -> Result<(Drawing, EdgeColoring), DrawingError> {
    if c.n != d.n {
        return Err(DrawingError::SizeMismatch {
            drawing: d.n,
            coloring: c.n,
        });
    }
    if vs.len() < 2 {
        return Err(DrawingError::TooFewVertices(vs.len()));
    }
    let mut new_index = vec![usize::MAX; d.n];
    for (i, &v) in vs.iter().enumerate() {
        if v >= d.n {
            return Err(DrawingError::VertexOutOfRange { vertex: v, n: d.n });
        }
        if new_index[v] != usize::MAX {
            return Err(DrawingError::DuplicateVertex(v));
        }
        new_index[v] = i;
    }
    let map_edge = |e: &Edge| -> Option<Edge> {
        let (a, b) = (new_index[e.u], new_index[e.v]);
        (a != usize::MAX && b != usize::MAX).then(|| Edge::new(a, b))
    };
    let crossings = d
        .crossings
        .iter()
        .filter_map(|(e, f)| Some((map_edge(e)?, map_edge(f)?)));
    let mut sub = Drawing::new(vs.len(), crossings);
    if let Some(rot) = &d.rotations {
        sub.rotations = Some(
            vs.iter()
                .map(|&v| {
                    rot[v]
                        .iter()
                        .filter(|&&w| new_index[w] != usize::MAX)
                        .map(|&w| new_index[w])
                        .collect()
                })
                .collect(),
        );
    }
    if let Some(labels) = &d.labels {
        sub.labels = Some(restrict_labels(labels, vs));
    }
    let m = vs.len();
    let colors = all_edges(m)
        .map(|e| c.color(Edge::new(vs[e.u], vs[e.v])))
        .collect();
    Ok((sub, EdgeColoring { n: m, k: c.k, colors }))
}

// Ranked labels are re-ranked among the kept vertices.
fn restrict_labels(labels: &[VertexLabel], vs: &[usize]) -> Vec<VertexLabel> {
    fn spine(l: &VertexLabel) -> Option<usize> {
        if let VertexLabel::Spine(r) = l { Some(*r) } else { None }
    }
    fn xrank(l: &VertexLabel) -> Option<usize> {
        if let VertexLabel::XRank(r) = l { Some(*r) } else { None }
    }
    let kept: Vec<VertexLabel> = vs.iter().map(|&v| labels[v]).collect();
    let rerank = |r: usize, kind: fn(&VertexLabel) -> Option<usize>| {
        kept.iter().filter_map(kind).filter(|&o| o < r).count()
    };
    kept.iter()
        .map(|&l| match l {
            VertexLabel::Spine(r) => VertexLabel::Spine(rerank(r, spine)),
            VertexLabel::XRank(r) => VertexLabel::XRank(rerank(r, xrank)),
            other => other,
        })
        .collect()
}

/// Dense crossing lookup keyed by edge index, built once per drawing.
#[derive(Debug, Clone)]
pub struct CrossingTable {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl CrossingTable {
    pub fn new(d: &Drawing) -> Self {
        let m = edge_count(d.n);
        let words = m.div_ceil(64).max(1);
        let mut bits = vec![0u64; m * words];
        for (e, f) in &d.crossings {
            if e.v >= d.n || f.v >= d.n {
                continue;
            }
            let (i, j) = (e.index(d.n), f.index(d.n));
            bits[i * words + j / 64] |= 1 << (j % 64);
            bits[j * words + i / 64] |= 1 << (i % 64);
        }
        CrossingTable { n: d.n, words, bits }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn crosses(&self, e: Edge, f: Edge) -> bool {
        let (i, j) = (e.index(self.n), f.index(self.n));
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// True iff `e` crosses no edge with both endpoints in `alive`.
    pub fn is_uncrossed_within(&self, e: Edge, alive: &[bool]) -> bool {
        let i = e.index(self.n);
        let row = &self.bits[i * self.words..(i + 1) * self.words];
        for (w, &word) in row.iter().enumerate() {
            let mut word = word;
            while word != 0 {
                let j = w * 64 + word.trailing_zeros() as usize;
                word &= word - 1;
                let f = Edge::from_index(j, self.n);
                if alive[f.u] && alive[f.v] {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_plane(&self, s: &EdgeSet) -> bool {
        let edges: Vec<Edge> = s.iter().copied().collect();
        edges
            .iter()
            .enumerate()
            .all(|(i, &e)| edges[i + 1..].iter().all(|&f| !self.crosses(e, f)))
    }
}

/// Breadth-first spanning tree of the graph `(0..n, s)`, from vertex 0 with
/// neighbors visited in increasing order. `None` if `s` is disconnected.
pub fn bfs_spanning_tree(n: usize, s: &EdgeSet) -> Option<EdgeSet> {
    let mut adj = vec![Vec::new(); n];
    for e in s {
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    let mut seen = vec![false; n];
    let mut tree = EdgeSet::new();
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                tree.insert(Edge::new(x, y));
                queue.push_back(y);
            }
        }
    }
    seen.iter().all(|&s| s).then_some(tree)
}

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    pub(crate) fn components(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            let r = self.find(v);
            groups[r].push(v);
        }
        groups.retain(|g| !g.is_empty());
        groups.sort_by_key(|g| g[0]);
        groups
    }
}
