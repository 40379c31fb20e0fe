//! Pairwise sequence alignment by ant colony optimization.
//!
//! The crate is organised around five pieces:
//!
//! * [`seqcore`]: sequences, alignments, the shared scoring scheme, an exact
//!   Needleman-Wunsch aligner used as ground truth, and the random
//!   template/mutant pair generator.
//! * [`aco`]: the ant-colony aligner (pheromone grid, direction scoring,
//!   local/global pheromone updates, convergence, alignment extraction).
//! * [`params`]: parameter ranges, the shipped table of tuned parameters and
//!   piecewise-linear interpolation over string length.
//! * [`stats`]: outlier-trimmed means, the cubic fitness, histograms and
//!   skewness.
//! * [`ga`]: a genetic algorithm that evolves [`aco::AcoParams`] against
//!   freshly generated sequence pairs, with checkpoint files.
//!
//! All real-valued math is generic over [`Scalar`] (`f32` or `f64`). The
//! aliases at the crate root fix the scalar to `f64`, which is what the CLI
//! and the shipped table use.

// `!(a > b)` is used on purpose so NaN fails range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod aco;
pub mod error;
pub mod ga;
pub mod params;
pub mod scalar;
pub mod seqcore;
pub mod stats;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use aco::{AcoOptions, AntPath, Direction, DirectionScores, RunResult};
pub use seqcore::{Alignment, Alphabet, Column, ScoringScheme, Sequence};

/// Double-precision ACO parameters.
pub type AcoParams64 = aco::AcoParams<f64>;
/// Single-precision ACO parameters.
pub type AcoParams32 = aco::AcoParams<f32>;
/// Double-precision pheromone grid.
pub type PheromoneGrid64 = aco::PheromoneGrid<f64>;
/// Single-precision pheromone grid.
pub type PheromoneGrid32 = aco::PheromoneGrid<f32>;
pub type RunResult64 = aco::RunResult<f64>;
pub type RunResult32 = aco::RunResult<f32>;
pub type ParamRanges64 = params::ParamRanges<f64>;
pub type TunedTable64 = params::TunedTable<f64>;
pub type TrimmedStats64 = stats::TrimmedStats<f64>;
pub type FitnessScore64 = stats::FitnessScore<f64>;
pub type Individual64 = ga::Individual<f64>;
pub type Population64 = ga::Population<f64>;
