//! Metric multidimensional scaling into the Poincaré disk.
//!
//! Given target dissimilarities between `n` objects, find `n` points of the
//! hyperbolic plane (Poincaré disk model) whose hyperbolic distances match
//! them as closely as possible in a least-squares sense. The optimizer moves
//! every point along the hyperbolic line in its steepest-descent direction,
//! choosing the common step with a doubling/halving line search.
//!
//! A Euclidean-plane solver sharing the same objectives and optimizer is
//! provided in [`baseline`] for comparison.
//!
//! ```
//! use hypermds::{distance_matrix, multi_start, random_configuration};
//! use hypermds::{DissimilarityData, ErrorModel, SolverParams};
//!
//! let truth = random_configuration(5, 7).unwrap();
//! let data = DissimilarityData::from_delta(distance_matrix(&truth)).unwrap();
//! let fit = multi_start(&data, &ErrorModel::sammon(), &SolverParams::default(), 4, 1).unwrap();
//! assert!(fit.best_error() < 1e-4);
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baseline;
pub mod data_io;
pub mod dissimilarity;
pub mod error;
pub mod geometry;
pub mod linesearch;
pub mod matrix;
pub mod objective;
pub mod solver;
mod space;

pub use baseline::{euclid_distance, euclid_multi_start, euclid_solve, PlanePoint};
pub use dissimilarity::DissimilarityData;
pub use error::{Error, Result};
pub use geometry::{
    geodesic_move, hyp_distance, max_step_param, mobius_apply, step_to_distance, Configuration,
    Direction, DiskPoint, MobiusTransform,
};
pub use linesearch::{
    contract_checks_enabled, hyp_line_search, roof_value, LineProbe, LineSearchOutcome,
    LineSearchParams,
};
pub use matrix::SquareMatrix;
pub use objective::{
    apply_step, distance_matrix, embedding_error, error_and_gradient, gradient, ErrorModel,
    Gradient, Objective,
};
pub use solver::{
    default_scale_grid, log_grid, multi_start, random_configuration, scale_sweep, solve,
    sweep_minimum, IterationRecord, MultiStart, RunResult, SolverParams, StopReason, SweepPoint,
};
