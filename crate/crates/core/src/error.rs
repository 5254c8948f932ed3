use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("billiard size N = {0} is invalid, N must be at least 2")]
    Size(usize),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("quantum numbers (q={q}, p={p}) lie outside the allowed sector for N = {n}")]
    Domain { q: i64, p: i64, n: usize },

    #[error("branch 1 vanishes identically at the axial point (q={q}, p={p}) (norm {norm:.3e})")]
    DegenerateBranch { q: i64, p: i64, norm: f64 },

    #[error("layer {layer} is outside 1..={layers}")]
    Layer { layer: usize, layers: usize },

    #[error("seed construction for layer {layer} failed on row {row}: residual {residual:.3e}")]
    SeedConstruction { layer: usize, row: usize, residual: f64 },

    #[error("projection of seed {layer} onto q={q} is dependent (norm {norm:.3e})")]
    DependentProjection { layer: usize, q: i32, norm: f64 },

    #[error("edge basis incomplete: expected {expected} states, found {found}")]
    Completeness { expected: usize, found: usize },

    #[error("state count mismatch: expected {expected}, found {found}")]
    Count { expected: usize, found: usize },

    #[error("oracle failure: {0}")]
    Oracle(String),

    #[error("N = {n} exceeds the dense oracle limit of {max}")]
    OracleSize { n: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
