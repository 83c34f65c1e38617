//! Discrete extremal length and cube tilings in arbitrary finite dimension.
//!
//! A *discrete box* is a finite graph with `n` designated pairs of disjoint
//! opposing vertex sets ("faces"), the first pair distinguished as top and
//! bottom. A *metric* assigns a nonnegative weight to each vertex; the
//! extremal length of the box is the largest possible shortest top-to-bottom
//! path length over metrics of unit volume. This crate computes extremal
//! metrics (two independent algorithms), generates and verifies exact-rational
//! cube tilings of geometric boxes, extracts their contact graphs and tiling
//! metrics, realizes two-dimensional extremal metrics as square tilings, and
//! checks the intersection and compatibility conditions that govern when a
//! combinatorial box can come from a tiling.
//!
//! Everything geometric is exact rational arithmetic; the solver works in
//! binary64 with certified optimality brackets.

pub mod analysis;
pub mod boxes;
pub mod fixtures;
pub mod generate;
pub mod metric;
pub mod onedim;
pub mod randbox;
pub mod rat;
pub mod realize;
pub mod shortest;
pub mod solver;
pub mod svg;
pub mod tiling;
pub mod weight;

mod error;

pub use analysis::{
    check_necessary_box, check_necessary_tiling, check_schramm, check_tip,
    verify_extremality_chain, ConditionReport, NecessaryOptions, SearchCaps, Verdict,
};
pub use boxes::{rotate_box, validate_box, DiscreteBox, FacePair, Side, ValidationReport};
pub use error::{Error, Result};
pub use generate::{generate_tiling, GeneratorParams};
pub use metric::{metric_volume, path_length, perturbed_metric, Metric, PerturbedMetric};
pub use rat::Rat;
pub use realize::{realize_square_tiling, RealizeOutcome};
pub use shortest::{perturbation_derivative, shortest_paths, ShortestPaths};
pub use solver::{
    brute_force_extremal, extremal_metric, solve, SolverMode, SolverOptions, SolverResult,
};
pub use tiling::{
    contact_graph, discrete_line, face_tiling, validate_tiling, ContactMode, Cube, CubeTiling,
    GeometricBox, TilingReport,
};
