//! Seeded random instances for every drawing class.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::book::{BookLayout, Page};
use crate::cylindrical::{compile_layout, normalize, Angle, CylindricalLayout};
use crate::drawing::{edge_count, EdgeColoring};
use crate::error::{DrawingError, LayoutError};
use crate::pseudolinear::{orient, Point, PointDrawing};

pub const MAX_ATTEMPTS: usize = 200;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("gave up after {attempts} attempts: {last}")]
    RejectionLimit { attempts: usize, last: String },
    #[error("generator needs n >= {min}, got {n}")]
    TooSmall { n: usize, min: usize },
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform colors, except that the first `k` edges of a random permutation
/// get one color each so every class is nonempty when there are enough
/// edges.
pub fn gen_coloring(n: usize, k: usize, seed: u64) -> Result<EdgeColoring, GenError> {
    if k < 2 {
        return Err(DrawingError::TooFewColors(k).into());
    }
    let mut r = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let m = edge_count(n);
    let mut colors: Vec<usize> = (0..m).map(|_| r.gen_range(0..k)).collect();
    if m >= k {
        let mut idx: Vec<usize> = (0..m).collect();
        idx.shuffle(&mut r);
        for (c, &i) in idx[..k].iter().enumerate() {
            colors[i] = c;
        }
    }
    Ok(EdgeColoring::new(n, k, colors)?)
}

fn distinct_angles(r: &mut ChaCha8Rng, count: usize, denom: i64) -> Vec<Angle> {
    let mut slots: Vec<i64> = (0..2 * denom).collect();
    slots.shuffle(r);
    let mut picked: Vec<i64> = slots[..count].to_vec();
    picked.sort_unstable();
    picked.into_iter().map(|p| Angle::new(p, denom)).collect()
}

/// Random angles on both circles and per-vertex winding windows: every side
/// edge at an inner vertex (or, with equal chance, at an outer vertex) turns
/// by an amount within a random window of length 2. Layouts that are not
/// simple are re-sampled.
pub fn gen_cylindrical(n_inner: usize, n_outer: usize, seed: u64) -> Result<CylindricalLayout, GenError> {
    let n = n_inner + n_outer;
    if n < 2 {
        return Err(GenError::TooSmall { n, min: 2 });
    }
    let color = gen_coloring(n, 2, seed)?;
    let mut r = rng(seed);
    let denom = 2 * n as i64 + 2;
    let inner = distinct_angles(&mut r, n_inner, denom);
    let outer = distinct_angles(&mut r, n_outer, denom);
    let mut last = String::new();
    for attempt in 0..MAX_ATTEMPTS {
        let windings = if attempt == 0 {
            CylindricalLayout::minimal_windings(&inner, &outer)
        } else {
            let anchor_inner = r.gen_bool(0.5);
            let count = if anchor_inner { n_inner } else { n_outer };
            let offsets: Vec<Angle> = (0..count).map(|_| Angle::new(-r.gen_range(0..2 * denom), denom)).collect();
            inner
                .iter()
                .enumerate()
                .flat_map(|(i, a)| {
                    let offsets = &offsets;
                    outer.iter().enumerate().map(move |(j, b)| {
                        let s = if anchor_inner { offsets[i] } else { offsets[j] };
                        s + normalize(*b - *a - s)
                    })
                })
                .collect()
        };
        let layout = CylindricalLayout::new(inner.clone(), outer.clone(), windings, color.clone())?;
        match compile_layout(&layout) {
            Ok(_) => return Ok(layout),
            Err(e) => last = e.to_string(),
        }
    }
    Err(GenError::RejectionLimit { attempts: MAX_ATTEMPTS, last })
}

/// Random spine order and uniform page assignment with a random 2-coloring.
pub fn gen_book(n: usize, seed: u64) -> Result<BookLayout, GenError> {
    if n < 1 {
        return Err(GenError::TooSmall { n, min: 1 });
    }
    let mut r = rng(seed);
    let mut spine: Vec<usize> = (0..n).collect();
    spine.shuffle(&mut r);
    let pages = (0..edge_count(n)).map(|_| if r.gen_bool(0.5) { Page::Top } else { Page::Bottom }).collect();
    Ok(BookLayout::new(spine, pages, gen_coloring(n, 2, seed)?)?)
}

/// General-position points with distinct x on a grid of side `4n + 8`,
/// with a random 2-coloring.
pub fn gen_points(n: usize, seed: u64) -> Result<PointDrawing, GenError> {
    gen_points_colored(n, 2, seed)
}

pub fn gen_points_colored(n: usize, k: usize, seed: u64) -> Result<PointDrawing, GenError> {
    let mut r = rng(seed);
    let side = 4 * n as i64 + 8;
    let mut xs: Vec<i64> = (0..side).collect();
    xs.shuffle(&mut r);
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    for &x in xs.iter().take(n) {
        let mut placed = false;
        for _ in 0..MAX_ATTEMPTS {
            let p = Point::new(x, r.gen_range(0..side));
            let collinear = (0..pts.len())
                .any(|i| (i + 1..pts.len()).any(|j| orient(pts[i], pts[j], p) == std::cmp::Ordering::Equal));
            if !collinear {
                pts.push(p);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(GenError::RejectionLimit {
                attempts: MAX_ATTEMPTS,
                last: format!("no general-position y for x={x}"),
            });
        }
    }
    Ok(PointDrawing::new(pts, gen_coloring(n, k, seed)?)?)
}
