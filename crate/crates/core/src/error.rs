use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DrawingError {
    #[error("vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate vertex {0} in vertex subset")]
    DuplicateVertex(usize),
    #[error("a subdrawing needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("coloring needs at least 2 colors, got k={0}")]
    TooFewColors(usize),
    #[error("coloring has {got} entries, expected {expected}")]
    ColoringSize { expected: usize, got: usize },
    #[error("color index {color} out of range for k={k}")]
    ColorOutOfRange { color: usize, k: usize },
    #[error("coloring is for n={coloring}, drawing has n={drawing}")]
    SizeMismatch { drawing: usize, coloring: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LayoutError {
    #[error("layout has no vertices on either circle")]
    Empty,
    #[error("angle {0} outside [0, 2)")]
    AngleOutOfRange(String),
    #[error("angles on the {circle} circle are not strictly increasing at position {index}")]
    AnglesNotIncreasing { circle: &'static str, index: usize },
    #[error("missing winding for side edge {inner}-{outer}")]
    MissingWinding { inner: usize, outer: usize },
    #[error("winding of side edge {inner}-{outer} is not congruent to the angle difference mod 2")]
    WindingIncongruent { inner: usize, outer: usize },
    #[error("side edges {e} and {f} meet {count} times; the drawing is not simple")]
    NotSimple { e: String, f: String, count: u64 },
    #[error("points {0}, {1} and {2} are collinear")]
    Collinear(usize, usize, usize),
    #[error("points {0} and {1} share an x-coordinate")]
    DuplicateX(usize, usize),
    #[error("page assignment missing for edge {0}")]
    MissingPage(String),
    #[error("spine order is not a permutation of 0..{0}")]
    BadSpine(usize),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("instance has {got} colors; this solver needs {expected}")]
    WrongColorCount { expected: usize, got: usize },
    #[error("n={n} exceeds the enumeration guard of {limit}; pass the override to proceed")]
    Guard { n: usize, limit: usize },
    #[error("exhaustive verification for n={0} is a long run; enable the long-run flag")]
    LongRun(usize),
    #[error("drawing has no x-order; monotone solving needs one")]
    MissingOrder,
    #[error("group size {0} is too large for the small-instance guarantee (at most 7 vertices)")]
    GroupTooLarge(usize),
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}
