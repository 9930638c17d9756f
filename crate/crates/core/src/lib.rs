//! Monochromatic and hypochromatic plane spanning trees in edge-colored
//! simple drawings of complete graphs.
//!
//! A drawing is kept combinatorially as its set of crossing edge pairs,
//! optionally with rotations and vertex roles. Layout modules (cylindrical,
//! book, straight-line) compile geometric descriptions into drawings and
//! carry solvers that construct the trees; [`search`] provides brute-force
//! oracles and the exhaustive coloring verifier.

pub mod book;
pub mod cylindrical;
pub mod drawing;
pub mod error;
pub mod generators;
pub mod io;
pub mod monotone;
pub mod pseudolinear;
pub mod report;
pub mod search;
pub mod svg;

pub use drawing::{
    is_plane, is_spanning_tree, validate_drawing, Drawing, Edge, EdgeColoring, EdgeSet, VertexLabel,
};
pub use error::{DrawingError, LayoutError, SolveError};
pub use report::{InvariantCheck, SolveReport, Status};
