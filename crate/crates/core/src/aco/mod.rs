//! Ant colony alignment.
//!
//! Ants start in the bottom-right cell `(n-1, m-1)` of the `n x m` alignment
//! matrix (x indexes sequence X, y indexes sequence Y) and walk up, left or
//! diagonally up-left until they touch the top row or the left column. Each
//! walk is read back as a global alignment.

mod colony;
mod grid;
mod params;
mod path;
mod scoring;

pub use colony::{run_aco, AcoOptions, RunResult};
pub use grid::{Direction, PheromoneGrid};
pub use params::{AcoParams, Gene, GENE_COUNT};
pub use path::{extract_alignment, AntPath};
pub use scoring::{choose_direction, direction_scores, region_weights, DirectionScores};
