//! Sequences, alignments, scoring and the exact Needleman-Wunsch aligner.

mod alignment;
mod generate;
mod nw;
mod sequence;

pub use alignment::{score_alignment, Alignment, Column, ScoringScheme, GAP_CHAR, MATCH_CHAR};
pub use generate::{mutate_template, mutation_count_bounds, random_template};
pub use nw::nw_align;
pub use sequence::{Alphabet, Sequence};
