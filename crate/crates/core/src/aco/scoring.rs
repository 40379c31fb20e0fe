use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::seqcore::Sequence;

use super::grid::{Direction, PheromoneGrid};
use super::params::AcoParams;

/// Desirability of the three moves out of one cell, kept as natural
/// logarithms so that large exponents cannot underflow the choice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirectionScores<T> {
    pub log_up: T,
    pub log_diag: T,
    pub log_left: T,
}

impl<T: Scalar> DirectionScores<T> {
    /// From plain positive scores.
    pub fn from_scores(up: T, diag: T, left: T) -> Self {
        Self {
            log_up: up.ln(),
            log_diag: diag.ln(),
            log_left: left.ln(),
        }
    }

    pub fn up(&self) -> T {
        self.log_up.exp()
    }

    pub fn diag(&self) -> T {
        self.log_diag.exp()
    }

    pub fn left(&self) -> T {
        self.log_left.exp()
    }

    /// Highest-scoring move; ties go to up, then diagonal, then left.
    pub fn greedy(&self) -> Direction {
        let (up, diag, left) = (self.up(), self.diag(), self.left());
        let (up, diag, left) = if up.is_normal() || diag.is_normal() || left.is_normal() {
            (up, diag, left)
        } else {
            (self.log_up, self.log_diag, self.log_left)
        };
        if up >= diag && up >= left {
            Direction::Up
        } else if diag >= left {
            Direction::Diag
        } else {
            Direction::Left
        }
    }

    /// Selection probabilities `score / sum(scores)` as (up, diag, left).
    pub fn probabilities(&self) -> (T, T, T) {
        let (up, diag, left) = self.relative();
        let total = up + diag + left;
        (up / total, diag / total, left / total)
    }

    /// Scores divided by the largest one, so the largest is exactly 1.
    fn relative(&self) -> (T, T, T) {
        let top = self.log_up.max(self.log_diag).max(self.log_left);
        (
            (self.log_up - top).exp(),
            (self.log_diag - top).exp(),
            (self.log_left - top).exp(),
        )
    }
}

/// Regional factors (up, diag, left) pulling ants toward the main diagonal.
pub fn region_weights<T: Scalar>(x: usize, y: usize) -> (T, T, T) {
    let (one, two, one_half) = (T::one(), T::lit(2.0), T::lit(1.5));
    match x.cmp(&y) {
        std::cmp::Ordering::Equal => (one, two, one),
        std::cmp::Ordering::Greater => (one, one_half, two),
        std::cmp::Ordering::Less => (two, one_half, one),
    }
}

/// Scores `phi^w_pher * M^w_match * R^w_region` of the three moves out of
/// the interior cell `(x, y)`, where `M` is 2 when the cell the move lands on
/// pairs equal symbols (1 otherwise) and `R` comes from [`region_weights`].
pub fn direction_scores<T: Scalar>(
    x: usize,
    y: usize,
    grid: &PheromoneGrid<T>,
    params: &AcoParams<T>,
    seq_x: &Sequence,
    seq_y: &Sequence,
) -> Result<DirectionScores<T>> {
    scores_at(x, y, grid, params, seq_x.symbols(), seq_y.symbols())
}

pub(crate) fn scores_at<T: Scalar>(
    x: usize,
    y: usize,
    grid: &PheromoneGrid<T>,
    params: &AcoParams<T>,
    xs: &[u8],
    ys: &[u8],
) -> Result<DirectionScores<T>> {
    let (width, height) = (grid.width(), grid.height());
    if x == 0 || y == 0 || x >= width || y >= height || x >= xs.len() || y >= ys.len() {
        return Err(Error::NotInterior {
            x,
            y,
            width,
            height,
        });
    }
    let ln2 = T::lit(std::f64::consts::LN_2);
    let match_term = |a: u8, b: u8| if a == b { ln2 } else { T::zero() };
    let (r_up, r_diag, r_left) = region_weights::<T>(x, y);

    let mut logs = [T::zero(); 3];
    for (slot, dir, m, r) in [
        (0, Direction::Up, match_term(xs[x], ys[y - 1]), r_up),
        (1, Direction::Diag, match_term(xs[x - 1], ys[y - 1]), r_diag),
        (2, Direction::Left, match_term(xs[x - 1], ys[y]), r_left),
    ] {
        let level = grid.get(x, y, dir);
        if !(level > T::zero()) {
            return Err(Error::NonPositivePheromone {
                x,
                y,
                level: level.as_f64(),
            });
        }
        logs[slot] = params.pher_weight * level.ln()
            + params.match_weight * m
            + params.region_weight * r.ln();
    }
    Ok(DirectionScores {
        log_up: logs[0],
        log_diag: logs[1],
        log_left: logs[2],
    })
}

/// Draws `u ~ U[0, 1)`: greedy move when `u > prob_prob`, otherwise a
/// roulette draw proportional to the scores.
pub fn choose_direction<T: Scalar, R: Rng + ?Sized>(
    scores: &DirectionScores<T>,
    prob_prob: T,
    rng: &mut R,
) -> Direction {
    let u: T = rng.gen_range(T::zero()..T::one());
    if u > prob_prob {
        return scores.greedy();
    }
    let (up, diag, left) = scores.relative();
    let r: T = rng.gen_range(T::zero()..up + diag + left);
    if r < left {
        Direction::Left
    } else if r < left + diag {
        Direction::Diag
    } else {
        Direction::Up
    }
}
