use crate::scalar::Scalar;

use super::path::AntPath;

/// One move of an ant. The discriminants are the pheromone slot indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `(x, y) -> (x - 1, y - 1)`: X and Y symbols paired.
    Diag = 0,
    /// `(x, y) -> (x - 1, y)`: X symbol against a gap.
    Left = 1,
    /// `(x, y) -> (x, y - 1)`: gap against a Y symbol.
    Up = 2,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Direction::Diag, Direction::Left, Direction::Up];

    /// Cell reached from `(x, y)`, or `None` when the move leaves the grid.
    pub fn step(self, x: usize, y: usize) -> Option<(usize, usize)> {
        match self {
            Direction::Diag => Some((x.checked_sub(1)?, y.checked_sub(1)?)),
            Direction::Left => Some((x.checked_sub(1)?, y)),
            Direction::Up => Some((x, y.checked_sub(1)?)),
        }
    }

    /// Direction that leads from `from` to `to`, if they are one move apart.
    pub fn between(from: (usize, usize), to: (usize, usize)) -> Option<Direction> {
        Direction::ALL
            .into_iter()
            .find(|d| d.step(from.0, from.1) == Some(to))
    }
}

/// Pheromone levels for every (cell, direction) of an `n x m` matrix.
///
/// Levels never drop below the smallest positive normal value of `T`, so
/// they stay strictly positive even under repeated decay.
#[derive(Clone, Debug, PartialEq)]
pub struct PheromoneGrid<T> {
    width: usize,
    height: usize,
    levels: Vec<T>,
}

impl<T: Scalar> PheromoneGrid<T> {
    /// `width` cells along X, `height` along Y, all levels set to `init`
    /// (raised to the positive floor if needed).
    pub fn new(width: usize, height: usize, init: T) -> Self {
        Self {
            width,
            height,
            levels: vec![floor(init); width * height * 3],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    fn slot(&self, x: usize, y: usize, dir: Direction) -> usize {
        debug_assert!(x < self.width && y < self.height);
        (y * self.width + x) * 3 + dir as usize
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, dir: Direction) -> T {
        self.levels[self.slot(x, y, dir)]
    }

    /// Overwrites one level without the positivity floor. Used to test how
    /// callers react to corrupted grids.
    pub fn set_raw(&mut self, x: usize, y: usize, dir: Direction, level: T) {
        let i = self.slot(x, y, dir);
        self.levels[i] = level;
    }

    /// Deposit by an ant leaving `(x, y)` in `dir`: `(old + step) * local_decay`.
    #[inline]
    pub fn local_update(&mut self, x: usize, y: usize, dir: Direction, step: T, local_decay: T) {
        let i = self.slot(x, y, dir);
        self.levels[i] = floor((self.levels[i] + step) * local_decay);
    }

    /// Adds `step * s_gen / s_best` to every (cell, move) of `path`. Does
    /// nothing unless both scores are positive.
    pub fn reinforce(&mut self, path: &AntPath, s_gen: i32, s_best: i32, step: T) {
        if s_gen <= 0 || s_best <= 0 {
            return;
        }
        let amount = step * T::lit(s_gen as f64) / T::lit(s_best as f64);
        for (&(x, y), &dir) in path.cells().iter().zip(path.moves()) {
            let i = self.slot(x, y, dir);
            self.levels[i] = floor(self.levels[i] + amount);
        }
    }

    /// Multiplies every level by `factor`.
    pub fn global_decay(&mut self, factor: T) {
        for level in &mut self.levels {
            *level = floor(*level * factor);
        }
    }

    pub fn min_level(&self) -> T {
        self.levels.iter().copied().fold(T::infinity(), T::min)
    }

    pub fn levels(&self) -> &[T] {
        &self.levels
    }
}

#[inline]
fn floor<T: Scalar>(v: T) -> T {
    v.max(T::min_positive_value())
}
