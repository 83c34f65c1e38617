use thiserror::Error;

use crate::boxes::ValidationReport;
use crate::tiling::TilingReport;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid discrete box:\n{0}")]
    InvalidBox(ValidationReport),

    #[error("invalid cube tiling:\n{0}")]
    InvalidTiling(TilingReport),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("metric does not cover vertex `{0}`")]
    MissingWeight(String),

    #[error("metric weight for `{vertex}` is not a finite nonnegative number")]
    BadWeight { vertex: String },

    #[error("axis {axis} out of range for dimension {n}")]
    AxisOutOfRange { axis: usize, n: usize },

    #[error("face pair {axis} is unreachable from its opposite under the given metric")]
    Unreachable { axis: usize },

    #[error("path enumeration cap of {cap} exceeded")]
    PathCapExceeded { cap: usize },

    #[error(
        "solver did not converge within {outer} rounds \
         (feasibility residual {feasibility:.3e}, duality gap {gap:.3e})"
    )]
    NonConvergence {
        outer: usize,
        feasibility: f64,
        gap: f64,
    },

    #[error("operation requires dimension 2, box has dimension {0}")]
    DimensionNot2(usize),

    #[error("operation requires dimension >= 2, tiling has dimension {0}")]
    DimensionTooSmall(usize),

    #[error("point is not on the top face: {0}")]
    PointNotOnTopFace(String),

    #[error("cube `{id}` spans the full extent of axis {axis}")]
    CubeSpansExtent { id: String, axis: usize },

    #[error("cubes met by the discrete line do not admit a top-to-bottom path ordering")]
    DiscreteLineNotPath,

    #[error("realized squares do not tile the target rectangle:\n{0}")]
    RealizeValidation(TilingReport),

    #[error("empty path")]
    EmptyPath,

    #[error("metric mixes rational and binary64 weights")]
    MixedWeights,

    #[error("{0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
