//! Brute-force engine: spanning-tree enumeration, plane-tree search under
//! color predicates, the fallback for non-spanning color classes, and
//! exhaustive checking of every 2-coloring of a small drawing.

use std::fs;
use std::path::Path;

use rayon::prelude::*;

use crate::drawing::{
    all_edges, color_class_components, edge_count, CrossingTable, Drawing, Edge, EdgeColoring,
    EdgeSet, UnionFind,
};
use crate::error::SolveError;
use crate::io::{self, ParseError};
use crate::report::SolveReport;

/// Largest n enumerated without the override flag.
pub const ENUMERATION_LIMIT: usize = 10;
/// Hard ceiling: trees are held as `u128` edge masks.
pub const ENUMERATION_CEILING: usize = 16;
/// Largest n verified exhaustively without the long-run flag.
pub const DESK_SCALE_LIMIT: usize = 6;
/// Largest n the exhaustive verifier accepts at all.
pub const VERIFY_CEILING: usize = 8;

/// Environment variable enabling long runs (`1`/`true`).
pub const LONG_RUN_ENV: &str = "PLANE_TREES_LONG_RUN";
/// Environment variable setting the verifier's worker count.
pub const THREADS_ENV: &str = "PLANE_TREES_THREADS";

pub fn long_run_from_env() -> bool {
    std::env::var(LONG_RUN_ENV)
        .map(|v| matches!(v.trim(), "1" | "true" | "yes"))
        .unwrap_or(false)
}

pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok()
}

fn check_guard(n: usize, allow_large: bool) -> Result<(), SolveError> {
    let limit = if allow_large {
        ENUMERATION_CEILING
    } else {
        ENUMERATION_LIMIT
    };
    if n > limit {
        return Err(SolveError::Guard { n, limit });
    }
    Ok(())
}

/// Labeled spanning trees of K_n as `u128` edge masks (bit `i` is the edge
/// with [`Edge::index`] `i`), in lexicographic order of their Prüfer
/// sequences.
#[derive(Debug, Clone)]
pub struct TreeMasks {
    n: usize,
    seq: Vec<usize>,
    done: bool,
}

impl TreeMasks {
    fn new(n: usize) -> Self {
        TreeMasks {
            n,
            seq: vec![0; n.saturating_sub(2)],
            done: n == 0,
        }
    }

    fn decode(&self) -> u128 {
        let n = self.n;
        if n == 1 {
            return 0;
        }
        let mut degree = vec![1usize; n];
        for &x in &self.seq {
            degree[x] += 1;
        }
        let mut mask = 0u128;
        for &x in &self.seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            mask |= 1 << Edge::new(leaf, x).index(n);
            degree[leaf] = 0;
            degree[x] -= 1;
        }
        let mut rest = (0..n).filter(|&v| degree[v] == 1);
        let (a, b) = (rest.next().unwrap(), rest.next().unwrap());
        mask | 1 << Edge::new(a, b).index(n)
    }
}

impl Iterator for TreeMasks {
    type Item = u128;

    fn next(&mut self) -> Option<u128> {
        if self.done {
            return None;
        }
        let out = self.decode();
        // odometer step, last position fastest
        let mut i = self.seq.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.seq[i] += 1;
            if self.seq[i] < self.n {
                break;
            }
            self.seq[i] = 0;
        }
        Some(out)
    }
}

pub fn tree_masks(n: usize, allow_large: bool) -> Result<TreeMasks, SolveError> {
    check_guard(n, allow_large)?;
    Ok(TreeMasks::new(n))
}

pub fn mask_to_edges(mask: u128, n: usize) -> EdgeSet {
    let mut out = EdgeSet::new();
    let mut m = mask;
    while m != 0 {
        out.insert(Edge::from_index(m.trailing_zeros() as usize, n));
        m &= m - 1;
    }
    out
}

/// Every labeled spanning tree of K_n exactly once.
pub fn enumerate_spanning_trees(
    n: usize,
    allow_large: bool,
) -> Result<impl Iterator<Item = EdgeSet>, SolveError> {
    Ok(tree_masks(n, allow_large)?.map(move |m| mask_to_edges(m, n)))
}

/// Per-edge crossing masks for drawings with at most 128 edges.
#[derive(Debug, Clone)]
pub struct MaskTable {
    cross: Vec<u128>,
}

impl MaskTable {
    pub fn new(d: &Drawing) -> Self {
        let n = d.n();
        assert!(edge_count(n) <= 128, "mask table needs at most 128 edges");
        let mut cross = vec![0u128; edge_count(n)];
        for (e, f) in d.crossings() {
            if e.v() < n && f.v() < n {
                cross[e.index(n)] |= 1 << f.index(n);
                cross[f.index(n)] |= 1 << e.index(n);
            }
        }
        MaskTable { cross }
    }

    pub fn is_plane(&self, mask: u128) -> bool {
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            if self.cross[i] & mask != 0 {
                return false;
            }
            m &= m - 1;
        }
        true
    }
}

fn class_masks(c: &EdgeColoring) -> Vec<u128> {
    let mut out = vec![0u128; c.k()];
    for (i, &col) in c.as_slice().iter().enumerate() {
        out[col] |= 1 << i;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// One color; `None` accepts any single color.
    Monochromatic(Option<usize>),
    /// No edge of the given color.
    Avoid(usize),
    /// Misses at least one of the k colors.
    Hypochromatic,
}

impl SearchMode {
    fn accepts(&self, tree: u128, classes: &[u128]) -> bool {
        match *self {
            SearchMode::Monochromatic(Some(c)) => tree & !classes[c] == 0,
            SearchMode::Monochromatic(None) => classes.iter().any(|&cl| tree & !cl == 0),
            SearchMode::Avoid(c) => tree & classes[c] == 0,
            SearchMode::Hypochromatic => classes.iter().any(|&cl| tree & cl == 0),
        }
    }
}

/// First tree in enumeration order that is plane and satisfies `mode`, or a
/// counterexample report when none exists.
pub fn find_plane_tree(
    d: &Drawing,
    c: &EdgeColoring,
    mode: SearchMode,
) -> Result<SolveReport, SolveError> {
    find_plane_tree_with(d, c, mode, false)
}

pub fn find_plane_tree_with(
    d: &Drawing,
    c: &EdgeColoring,
    mode: SearchMode,
    allow_large: bool,
) -> Result<SolveReport, SolveError> {
    let n = d.n();
    let trees = tree_masks(n, allow_large)?;
    let table = MaskTable::new(d);
    let classes = class_masks(c);
    match trees
        .into_iter()
        .find(|&t| mode.accepts(t, &classes) && table.is_plane(t))
    {
        Some(t) => {
            let mut report = SolveReport::found(mask_to_edges(t, n), c);
            if let SearchMode::Avoid(x) = mode {
                report.avoided_colors.insert(x);
            }
            Ok(report)
        }
        None => Ok(SolveReport::counterexample(format!(
            "no plane spanning tree with mode {mode:?} among {} trees",
            (n as u128).pow(n.saturating_sub(2) as u32)
        ))),
    }
}

/// Depth-first search for a plane spanning tree using only `allowed` edges.
/// Edges are tried in the given order; branches whose remaining candidates
/// can no longer connect the graph are cut.
pub fn search_plane_spanning_tree(
    table: &CrossingTable,
    n: usize,
    allowed: &[Edge],
) -> Option<EdgeSet> {
    fn connectable(n: usize, chosen: &[Edge], rest: &[Edge], table: &CrossingTable) -> bool {
        let mut uf = UnionFind::new(n);
        let mut parts = n;
        for e in chosen.iter().chain(
            rest.iter()
                .filter(|&&f| chosen.iter().all(|&g| !table.crosses(f, g))),
        ) {
            if uf.union(e.u(), e.v()) {
                parts -= 1;
            }
        }
        parts == 1
    }

    fn go(
        n: usize,
        table: &CrossingTable,
        allowed: &[Edge],
        chosen: &mut Vec<Edge>,
        uf: &UnionFind,
    ) -> bool {
        if chosen.len() + 1 == n {
            return true;
        }
        let Some((&e, rest)) = allowed.split_first() else {
            return false;
        };
        if !connectable(n, chosen, allowed, table) {
            return false;
        }
        let mut with = uf.clone();
        if with.union(e.u(), e.v()) && chosen.iter().all(|&g| !table.crosses(e, g)) {
            chosen.push(e);
            if go(n, table, rest, chosen, &with) {
                return true;
            }
            chosen.pop();
        }
        go(n, table, rest, chosen, uf)
    }

    if n <= 1 {
        return Some(EdgeSet::new());
    }
    let mut chosen = Vec::new();
    go(n, table, allowed, &mut chosen, &UnionFind::new(n)).then(|| chosen.into_iter().collect())
}

/// When some color class is disconnected, the remaining colors contain a
/// complete bipartite subdrawing, which has a plane spanning tree. Searches
/// for it among the edges outside that class.
pub fn nonspanning_fallback(d: &Drawing, c: &EdgeColoring) -> SolveReport {
    let n = d.n();
    let Some(color) = (0..c.k()).find(|&x| color_class_components(n, c, x).len() > 1) else {
        return SolveReport::not_applicable("every color class is spanning");
    };
    let table = CrossingTable::new(d);
    let allowed: Vec<Edge> = all_edges(n).filter(|&e| c.color(e) != color).collect();
    match search_plane_spanning_tree(&table, n, &allowed) {
        Some(tree) => {
            let mut report = SolveReport::found(tree, c);
            report.avoided_colors.insert(color);
            report
        }
        None => SolveReport::counterexample(format!(
            "color class {color} is not spanning, yet no plane spanning tree avoids it"
        )),
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    /// Permit n above the desk-scale limit.
    pub long_run: bool,
    /// Worker count; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl VerifyOptions {
    pub fn from_env() -> Self {
        VerifyOptions {
            long_run: long_run_from_env(),
            threads: threads_from_env(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub n: usize,
    pub colorings_checked: u64,
    pub failure_count: u64,
    /// Up to [`MAX_REPORTED_FAILURES`] failing colorings, in order.
    pub failures: Vec<EdgeColoring>,
}

pub const MAX_REPORTED_FAILURES: usize = 32;

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

/// Bitset over all edge subsets of K_n: bit `S` is set iff `S` contains a
/// plane spanning tree of the drawing.
struct PlaneTreeFamily {
    words: Vec<u64>,
}

impl PlaneTreeFamily {
    fn new(d: &Drawing) -> Result<Self, SolveError> {
        let n = d.n();
        let m = edge_count(n);
        let table = MaskTable::new(d);
        let len = (1usize << m).div_ceil(64);
        let mut words = vec![0u64; len];
        for t in tree_masks(n, true)? {
            if table.is_plane(t) {
                let t = t as usize;
                words[t / 64] |= 1 << (t % 64);
            }
        }
        // close upward: superset-sum over each edge bit
        const IN_WORD: [u64; 6] = [
            0x5555_5555_5555_5555,
            0x3333_3333_3333_3333,
            0x0f0f_0f0f_0f0f_0f0f,
            0x00ff_00ff_00ff_00ff,
            0x0000_ffff_0000_ffff,
            0x0000_0000_ffff_ffff,
        ];
        for (bit, mask) in IN_WORD.iter().enumerate().take(m) {
            for w in words.iter_mut() {
                *w |= (*w & mask) << (1 << bit);
            }
        }
        for bit in 6..m {
            let stride = 1usize << (bit - 6);
            for base in (0..len).step_by(2 * stride) {
                for i in base..base + stride {
                    words[i + stride] |= words[i];
                }
            }
        }
        Ok(PlaneTreeFamily { words })
    }

    fn contains(&self, s: usize) -> bool {
        self.words[s / 64] >> (s % 64) & 1 == 1
    }
}

/// Checks every 2-coloring of `d` up to swapping the colors (edge 0-1 fixed
/// to color 0) for a monochromatic plane spanning tree.
pub fn verify_conjecture1(d: &Drawing, opts: VerifyOptions) -> Result<VerificationReport, SolveError> {
    let n = d.n();
    if n > DESK_SCALE_LIMIT && !opts.long_run {
        return Err(SolveError::LongRun(n));
    }
    if n > VERIFY_CEILING {
        return Err(SolveError::Guard {
            n,
            limit: VERIFY_CEILING,
        });
    }
    let m = edge_count(n);
    if m == 0 {
        return Ok(VerificationReport {
            n,
            colorings_checked: 0,
            failure_count: 0,
            failures: Vec::new(),
        });
    }
    let family = PlaneTreeFamily::new(d)?;
    let full = (1usize << m) - 1;
    let total = 1usize << (m - 1);
    // bit 0 (edge 0-1) stays clear: colorings are taken up to swap
    let check = |half: usize| -> bool {
        let ones = half << 1;
        family.contains(ones) || family.contains(full ^ ones)
    };
    let chunk = 1 << 12;
    let scan = || -> Vec<(u64, Vec<usize>)> {
        (0..total.div_ceil(chunk))
            .into_par_iter()
            .map(|ci| {
                let lo = ci * chunk;
                let hi = (lo + chunk).min(total);
                let mut count = 0u64;
                let mut bad = Vec::new();
                for h in lo..hi {
                    if !check(h) {
                        count += 1;
                        if bad.len() < MAX_REPORTED_FAILURES {
                            bad.push(h << 1);
                        }
                    }
                }
                (count, bad)
            })
            .collect()
    };
    let chunks = match opts.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .expect("thread pool")
            .install(scan),
        None => scan(),
    };
    let mut failure_count = 0;
    let mut failures = Vec::new();
    for (count, bad) in chunks {
        failure_count += count;
        for ones in bad {
            if failures.len() < MAX_REPORTED_FAILURES {
                let colors = (0..m).map(|i| ones >> i & 1).collect();
                failures.push(EdgeColoring::new(n, 2, colors).expect("valid coloring"));
            }
        }
    }
    Ok(VerificationReport {
        n,
        colorings_checked: total as u64,
        failure_count,
        failures,
    })
}

#[derive(Debug, Clone, Default)]
pub struct BatchReport {
    pub records_verified: usize,
    pub colorings_checked: u64,
    /// Record index and verdict of every failing record.
    pub failing: Vec<(usize, VerificationReport)>,
    /// Index to resume from.
    pub next_index: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum BatchError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("record {index}: {source}")]
    Record { index: usize, source: SolveError },
}

/// Verifies every drawing of a class file from record `start` onward.
pub fn verify_class_file(
    path: &Path,
    start: usize,
    opts: VerifyOptions,
) -> Result<BatchReport, BatchError> {
    let text = fs::read_to_string(path).map_err(|source| BatchError::Io {
        path: path.display().to_string(),
        source,
    })?;
    verify_class_records(&io::parse_class_file(&text)?, start, opts)
}

pub fn verify_class_records(
    records: &[Drawing],
    start: usize,
    opts: VerifyOptions,
) -> Result<BatchReport, BatchError> {
    let mut out = BatchReport {
        next_index: start,
        ..Default::default()
    };
    for (index, d) in records.iter().enumerate().skip(start) {
        let r = verify_conjecture1(d, opts).map_err(|source| BatchError::Record { index, source })?;
        out.records_verified += 1;
        out.colorings_checked += r.colorings_checked;
        if !r.passed() {
            out.failing.push((index, r));
        }
        out.next_index = index + 1;
    }
    Ok(out)
}
