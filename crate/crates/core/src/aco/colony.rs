use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::seqcore::{Alignment, ScoringScheme, Sequence};

use super::grid::{Direction, PheromoneGrid};
use super::params::AcoParams;
use super::path::{extract_alignment, path_score, AntPath};
use super::scoring::{choose_direction, scores_at};

/// Run settings that are not tuned by the genetic algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AcoOptions {
    pub scheme: ScoringScheme,
    /// Apply the per-generation global decay. Disabling it reproduces the
    /// original implementation, where the call was commented out.
    pub global_decay: bool,
    /// Stop once the generation-best score has repeated the previous
    /// generation's value this many times in a row.
    pub convergence_repeats: usize,
}

impl Default for AcoOptions {
    fn default() -> Self {
        Self {
            scheme: ScoringScheme::default(),
            global_decay: true,
            convergence_repeats: 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunResult<T> {
    pub best_score: i32,
    pub best_alignment: Alignment,
    pub best_path: AntPath,
    pub generations_run: usize,
    pub per_generation_best: Vec<i32>,
    /// Smallest pheromone level after each generation's updates.
    pub min_pheromone: Vec<T>,
    /// Total ant moves simulated; a machine-independent cost measure.
    pub ant_steps: u64,
}

struct Ant {
    cells: Vec<(usize, usize)>,
    moves: Vec<Direction>,
    done: bool,
}

/// Aligns `seq_x` and `seq_y` with an ant colony.
///
/// Every generation releases `num_ants` ants from `(n-1, m-1)`. Ants are
/// advanced in lock step, one move each per round in a fixed order, and each
/// move deposits pheromone on the slot it used. When all ants have reached
/// the edge, the generation's best walk is reinforced relative to the best
/// score seen so far and the whole grid decays.
pub fn run_aco<T: Scalar, R: Rng + ?Sized>(
    seq_x: &Sequence,
    seq_y: &Sequence,
    params: &AcoParams<T>,
    options: &AcoOptions,
    rng: &mut R,
) -> Result<RunResult<T>> {
    for (which, s) in [("x", seq_x), ("y", seq_y)] {
        if s.len() < 2 {
            return Err(Error::SequenceTooShort {
                which,
                len: s.len(),
                min: 2,
            });
        }
    }
    if params.max_generations == 0 || params.num_ants == 0 {
        return Err(Error::InvalidParams(format!(
            "need at least one generation and one ant, got g = {} and a = {}",
            params.max_generations, params.num_ants
        )));
    }

    let (xs, ys) = (seq_x.symbols(), seq_y.symbols());
    let (n, m) = (xs.len(), ys.len());
    let scheme = &options.scheme;
    let mut grid = PheromoneGrid::new(n, m, params.init_pher);

    let mut best: Option<AntPath> = None;
    let mut per_generation_best = Vec::with_capacity(params.max_generations);
    let mut min_pheromone = Vec::with_capacity(params.max_generations);
    let mut ant_steps = 0u64;
    let mut previous: Option<i32> = None;
    let mut repeats = 0usize;

    for _ in 0..params.max_generations {
        let mut ants: Vec<Ant> = (0..params.num_ants)
            .map(|_| Ant {
                cells: vec![(n - 1, m - 1)],
                moves: Vec::with_capacity(n + m),
                done: false,
            })
            .collect();

        let mut active = ants.len();
        while active > 0 {
            for ant in ants.iter_mut().filter(|a| !a.done) {
                let (x, y) = *ant.cells.last().expect("ant has a position");
                let scores = scores_at(x, y, &grid, params, xs, ys)?;
                let dir = choose_direction(&scores, params.prob_prob, rng);
                grid.local_update(x, y, dir, params.pher_step, params.local_decay);
                let next = dir.step(x, y).expect("interior cell");
                ant.moves.push(dir);
                ant.cells.push(next);
                ant_steps += 1;
                if next.0 == 0 || next.1 == 0 {
                    ant.done = true;
                    active -= 1;
                }
            }
        }

        // first ant with the highest score wins ties
        let (gen_best_idx, gen_score) = ants
            .iter()
            .map(|a| path_score(&a.cells, &a.moves, xs, ys, scheme))
            .enumerate()
            .fold(
                (0, i32::MIN),
                |acc, (i, s)| if s > acc.1 { (i, s) } else { acc },
            );
        let winner = ants.swap_remove(gen_best_idx);
        let gen_path = AntPath::from_parts(winner.cells, winner.moves, gen_score);

        let best_score = match &best {
            Some(b) if b.score() >= gen_score => b.score(),
            _ => {
                best = Some(gen_path.clone());
                gen_score
            }
        };

        grid.reinforce(&gen_path, gen_score, best_score, params.pher_step);
        if options.global_decay {
            grid.global_decay(params.global_decay);
        }
        per_generation_best.push(gen_score);
        min_pheromone.push(grid.min_level());

        if previous == Some(gen_score) {
            repeats += 1;
        } else {
            previous = Some(gen_score);
            repeats = 0;
        }
        if repeats >= options.convergence_repeats {
            break;
        }
    }

    let best_path = best.expect("at least one generation ran");
    let best_alignment = extract_alignment(&best_path, seq_x, seq_y)?;
    Ok(RunResult {
        best_score: best_path.score(),
        best_alignment,
        best_path,
        generations_run: per_generation_best.len(),
        per_generation_best,
        min_pheromone,
        ant_steps,
    })
}
