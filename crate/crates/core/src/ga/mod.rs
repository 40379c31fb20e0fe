//! Genetic-algorithm tuner for ACO parameters.
//!
//! Every generation draws a fresh template/mutant pair, scores each
//! individual by running the ACO several times on it, ranks the population
//! and breeds the next generation from the top `keep_parents` individuals.

mod checkpoint;

use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::aco::{run_aco, AcoOptions, AcoParams, Gene, GENE_COUNT};
use crate::error::{Error, Result};
use crate::params::ParamRanges;
use crate::scalar::Scalar;
use crate::seqcore::{mutate_template, random_template, Alphabet, Sequence};
use crate::stats::{corrected_mean_with, ga_score, FitnessScore, StddevDivisor, SENTINEL_MEAN};

pub use checkpoint::{
    checkpoint_file_name, column_names, format_checkpoint, header_line, parse_checkpoint,
    read_checkpoint, write_checkpoint,
};

/// Ten genes in table order. `g` and `a` are stored as reals and floored
/// when the genome is run.
pub type Genome<T> = [T; GENE_COUNT];

#[derive(Clone, Debug, PartialEq)]
pub struct Individual<T> {
    pub genome: Genome<T>,
    pub fitness: Option<T>,
}

impl<T: Scalar> Individual<T> {
    pub fn new(genome: Genome<T>) -> Self {
        Self {
            genome,
            fitness: None,
        }
    }

    pub fn params(&self) -> AcoParams<T> {
        AcoParams::from_genes(&self.genome)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Population<T> {
    pub individuals: Vec<Individual<T>>,
    /// 1 for the initial population.
    pub generation: usize,
}

impl<T: Scalar> Population<T> {
    pub fn len(&self) -> usize {
        self.individuals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.individuals.is_empty()
    }

    /// Descending by fitness; unevaluated individuals go last. Stable.
    pub fn sort_by_fitness(&mut self) {
        self.individuals
            .sort_by(|a, b| match (a.fitness, b.fitness) {
                (Some(x), Some(y)) => y.total_cmp(&x),
                (Some(_), None) => std::cmp::Ordering::Less,
                (None, Some(_)) => std::cmp::Ordering::Greater,
                (None, None) => std::cmp::Ordering::Equal,
            });
    }

    pub fn best(&self) -> Option<&Individual<T>> {
        self.individuals.first()
    }

    pub fn best_fitness(&self) -> Option<T> {
        self.individuals
            .iter()
            .filter_map(|i| i.fitness)
            .reduce(T::max)
    }

    pub fn is_sorted(&self) -> bool {
        self.individuals
            .windows(2)
            .all(|w| match (w[0].fitness, w[1].fitness) {
                (Some(a), Some(b)) => a >= b,
                (_, None) => true,
                (None, Some(_)) => false,
            })
    }
}

/// How the time term of the fitness is measured.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Timing {
    /// Wall-clock seconds spent in the ACO runs. Machine dependent.
    #[default]
    WallClock,
    /// One microsecond per simulated ant move. Reproducible.
    AntSteps,
}

/// Fitness function.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FitnessMode {
    /// `corrected_mean^3 / time`.
    #[default]
    MeanCubed,
    /// `(corrected_mean - stddev)^3 / time`: rewards consistent parameter
    /// sets. Optional, off by default.
    ConsistencyPenalized,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaConfig {
    pub str_length: usize,
    pub pop_limit: usize,
    /// Elite carried over unchanged; also the pool of parents.
    pub keep_parents: usize,
    pub trials_per_individual: usize,
    /// Chance of switching to another parent after each copied gene.
    pub crossover_prob: f64,
    /// Chance of an upward nudge of a copied gene, and separately of a
    /// downward nudge.
    pub mutation_prob: f64,
    /// Generations between checkpoints.
    pub record_freq: usize,
    pub max_generations: Option<usize>,
    /// Stop once the elite set has not changed for this many generations.
    pub equilibrium_generations: usize,
    pub seed: u64,
    /// Evaluate every generation on the same pair; elite keep their fitness.
    pub fixed_pair: bool,
    pub timing: Timing,
    pub fitness_mode: FitnessMode,
    pub stddev_divisor: StddevDivisor,
    pub alphabet: Alphabet,
    pub aco: AcoOptions,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            str_length: 20,
            pop_limit: 500,
            keep_parents: 50,
            trials_per_individual: 7,
            crossover_prob: 0.2,
            mutation_prob: 0.2,
            record_freq: 5,
            max_generations: None,
            equilibrium_generations: 10,
            seed: 0,
            fixed_pair: false,
            timing: Timing::WallClock,
            fitness_mode: FitnessMode::MeanCubed,
            stddev_divisor: StddevDivisor::NPlusOne,
            alphabet: Alphabet::Digits,
            aco: AcoOptions::default(),
        }
    }
}

impl GaConfig {
    /// Config with `pop_limit` individuals and the usual 10% elite.
    pub fn with_population(pop_limit: usize) -> Self {
        Self {
            pop_limit,
            keep_parents: (pop_limit / 10).max(1),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.str_length < 2 {
            return bad(format!(
                "str_length must be at least 2, got {}",
                self.str_length
            ));
        }
        if !(0 < self.keep_parents && self.keep_parents < self.pop_limit) {
            return bad(format!(
                "need 0 < keep_parents < pop_limit, got {} and {}",
                self.keep_parents, self.pop_limit
            ));
        }
        if self.trials_per_individual < 2 {
            return bad(format!(
                "trials_per_individual must be at least 2, got {}",
                self.trials_per_individual
            ));
        }
        if !(0.0..=1.0).contains(&self.crossover_prob) {
            return bad(format!(
                "crossover_prob {} is outside [0, 1]",
                self.crossover_prob
            ));
        }
        if !(0.0..=0.5).contains(&self.mutation_prob) {
            return bad(format!(
                "mutation_prob {} is outside [0, 0.5]",
                self.mutation_prob
            ));
        }
        if self.record_freq == 0 {
            return bad("record_freq must be positive".into());
        }
        if self.max_generations == Some(0) {
            return bad("max_generations must be positive".into());
        }
        Ok(())
    }
}

/// `pop_limit` individuals with genes uniform on their ranges; the integer
/// genes are floored.
pub fn init_population<T: Scalar, R: Rng + ?Sized>(
    config: &GaConfig,
    ranges: &ParamRanges<T>,
    rng: &mut R,
) -> Population<T> {
    let individuals = (0..config.pop_limit)
        .map(|_| {
            let mut genome = [T::zero(); GENE_COUNT];
            for g in Gene::ALL {
                let (lo, hi) = ranges.bounds(g);
                let v = rng.gen_range(lo..hi);
                genome[g.index()] = if g.is_integer() { v.floor() } else { v };
            }
            Individual::new(genome)
        })
        .collect();
    Population {
        individuals,
        generation: 1,
    }
}

/// Random template of `str_length` symbols and a mutant of it.
pub fn generation_pair<R: Rng + ?Sized>(
    config: &GaConfig,
    rng: &mut R,
) -> Result<(Sequence, Sequence)> {
    if config.str_length < 2 {
        return Err(Error::InvalidConfig(format!(
            "str_length must be at least 2, got {}",
            config.str_length
        )));
    }
    let template = random_template(config.str_length, config.alphabet, rng);
    let mutant = mutate_template(&template, rng)?;
    Ok((template, mutant))
}

/// Runs the ACO `trials_per_individual` times on the pair and turns the
/// best scores and the time spent into a fitness.
///
/// A failing run (for example a mutant shorter than two symbols) yields the
/// sentinel fitness `(-10000)^3 / time`.
pub fn evaluate_individual<T: Scalar, R: Rng + ?Sized>(
    ind: &Individual<T>,
    pair: (&Sequence, &Sequence),
    config: &GaConfig,
    rng: &mut R,
) -> FitnessScore<T> {
    let params = ind.params();
    let mut scores = Vec::with_capacity(config.trials_per_individual);
    let mut seconds = 0.0;
    let mut steps = 0u64;
    let mut failed = false;
    for _ in 0..config.trials_per_individual {
        let start = Instant::now();
        let run = run_aco(pair.0, pair.1, &params, &config.aco, rng);
        seconds += start.elapsed().as_secs_f64();
        match run {
            Ok(r) => {
                scores.push(T::lit(r.best_score as f64));
                steps += r.ant_steps;
            }
            Err(_) => {
                failed = true;
                break;
            }
        }
    }
    let total_time = match config.timing {
        Timing::WallClock => seconds.max(1e-9),
        Timing::AntSteps => steps.max(1) as f64 * 1e-6,
    };
    let sentinel = || {
        let m = T::lit(SENTINEL_MEAN);
        FitnessScore {
            value: m * m * m / T::lit(total_time),
            total_time,
        }
    };
    if failed {
        return sentinel();
    }
    let Ok(mut stats) = corrected_mean_with(&scores, config.stddev_divisor) else {
        return sentinel();
    };
    if config.fitness_mode == FitnessMode::ConsistencyPenalized && !stats.is_sentinel() {
        stats.corrected_mean = stats.corrected_mean - stats.stddev;
    }
    ga_score(&stats, total_time).unwrap_or_else(|_| sentinel())
}

/// Breeds the next generation from an evaluated, sorted population.
///
/// The first `keep_parents` individuals survive unchanged, fitness
/// included. Every other slot copies genes one by one from a current
/// parent drawn from that elite; after each gene the parent is re-drawn
/// with probability `crossover_prob`. Each copied gene moves up, or down,
/// by `0.1 * u * range width` with probability `mutation_prob` each, and
/// is clamped to its range.
pub fn next_generation<T: Scalar, R: Rng + ?Sized>(
    pop: &Population<T>,
    config: &GaConfig,
    ranges: &ParamRanges<T>,
    rng: &mut R,
) -> Population<T> {
    let keep = config.keep_parents.min(pop.len());
    let mut individuals: Vec<Individual<T>> = pop.individuals[..keep].to_vec();
    let tenth = T::lit(0.1);
    for _ in keep..pop.len() {
        let mut parent = rng.gen_range(0..keep);
        let mut genome = [T::zero(); GENE_COUNT];
        for g in Gene::ALL {
            let j = g.index();
            let mut v = pop.individuals[parent].genome[j];
            let which: f64 = rng.gen();
            if which < config.mutation_prob {
                let u: T = rng.gen_range(T::zero()..T::one());
                v = (v + tenth * u * ranges.width(g)).min(ranges.bounds(g).1);
            } else if which < 2.0 * config.mutation_prob {
                let u: T = rng.gen_range(T::zero()..T::one());
                v = (v - tenth * u * ranges.width(g)).max(ranges.bounds(g).0);
            }
            genome[j] = v;
            if rng.gen::<f64>() < config.crossover_prob {
                parent = rng.gen_range(0..keep);
            }
        }
        individuals.push(Individual::new(genome));
    }
    Population {
        individuals,
        generation: pop.generation + 1,
    }
}

/// Receives populations as the tuner runs.
pub trait GaSink<T> {
    /// Called with the `index`-th checkpoint (counting from 0).
    fn checkpoint(&mut self, index: usize, pop: &Population<T>) -> Result<()>;

    /// Called after every evaluated and sorted generation.
    fn generation_done(&mut self, _pop: &Population<T>) {}
}

/// Discards everything.
#[derive(Clone, Copy, Debug, Default)]
pub struct NullSink;

impl<T> GaSink<T> for NullSink {
    fn checkpoint(&mut self, _index: usize, _pop: &Population<T>) -> Result<()> {
        Ok(())
    }
}

/// Writes `out-<k>.txt` files into a directory.
#[derive(Clone, Debug)]
pub struct DirectorySink {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl DirectorySink {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self {
            dir: dir.into(),
            written: Vec::new(),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }
}

impl<T: Scalar> GaSink<T> for DirectorySink {
    fn checkpoint(&mut self, index: usize, pop: &Population<T>) -> Result<()> {
        let path = self.dir.join(checkpoint_file_name(index));
        write_checkpoint(pop, &path)?;
        self.written.push(path);
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum GaError<T: Scalar> {
    #[error(transparent)]
    Config(Error),
    /// The sink failed; `population` is the last evaluated generation.
    #[error("checkpoint failed after generation {}: {source}", population.generation)]
    Checkpoint {
        source: Error,
        population: Box<Population<T>>,
    },
}

fn elite_key<T: Scalar>(pop: &Population<T>, keep: usize) -> Vec<[u64; GENE_COUNT]> {
    let mut key: Vec<[u64; GENE_COUNT]> = pop.individuals[..keep.min(pop.len())]
        .iter()
        .map(|i| i.genome.map(|v| v.as_f64().to_bits()))
        .collect();
    key.sort_unstable();
    key
}

/// Evolves a population until `max_generations` or until the elite set has
/// been unchanged for `equilibrium_generations` generations, and returns
/// the last evaluated, sorted population.
///
/// Individuals are evaluated in parallel, each with its own generator
/// seeded from `rng`, so the outcome does not depend on scheduling (except
/// through wall-clock timing).
pub fn run_ga<T: Scalar, R: Rng + ?Sized, S: GaSink<T> + ?Sized>(
    config: &GaConfig,
    ranges: &ParamRanges<T>,
    rng: &mut R,
    sink: &mut S,
) -> std::result::Result<Population<T>, GaError<T>> {
    config.validate().map_err(GaError::Config)?;
    let mut pop = init_population(config, ranges, rng);
    let fixed = if config.fixed_pair {
        Some(generation_pair(config, rng).map_err(GaError::Config)?)
    } else {
        None
    };
    let mut checkpoints = 0;
    let mut last_elite = None;
    let mut stable = 0;

    loop {
        let (x, y) = match &fixed {
            Some(pair) => pair.clone(),
            None => generation_pair(config, rng).map_err(GaError::Config)?,
        };
        let todo: Vec<usize> = (0..pop.len())
            .filter(|&i| !config.fixed_pair || pop.individuals[i].fitness.is_none())
            .collect();
        let seeds: Vec<u64> = todo.iter().map(|_| rng.gen()).collect();
        let fitness: Vec<T> = todo
            .par_iter()
            .zip(seeds)
            .map(|(&i, seed)| {
                let mut local = ChaCha8Rng::seed_from_u64(seed);
                evaluate_individual(&pop.individuals[i], (&x, &y), config, &mut local).value
            })
            .collect();
        for (i, f) in todo.into_iter().zip(fitness) {
            pop.individuals[i].fitness = Some(f);
        }
        pop.sort_by_fitness();
        sink.generation_done(&pop);

        if pop.generation.is_multiple_of(config.record_freq) {
            if let Err(source) = sink.checkpoint(checkpoints, &pop) {
                return Err(GaError::Checkpoint {
                    source,
                    population: Box::new(pop),
                });
            }
            checkpoints += 1;
        }
        if config.max_generations.is_some_and(|m| pop.generation >= m) {
            return Ok(pop);
        }
        let key = elite_key(&pop, config.keep_parents);
        if last_elite.as_ref() == Some(&key) {
            stable += 1;
        } else {
            stable = 0;
            last_elite = Some(key);
        }
        if stable >= config.equilibrium_generations {
            return Ok(pop);
        }
        pop = next_generation(&pop, config, ranges, rng);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(pop: usize) -> GaConfig {
        GaConfig {
            str_length: 10,
            trials_per_individual: 3,
            timing: Timing::AntSteps,
            max_generations: Some(2),
            ..GaConfig::with_population(pop)
        }
    }

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn config_validation() {
        assert!(GaConfig::default().validate().is_ok());
        let bad = [
            GaConfig {
                keep_parents: 0,
                ..GaConfig::default()
            },
            GaConfig {
                keep_parents: 500,
                ..GaConfig::default()
            },
            GaConfig {
                trials_per_individual: 1,
                ..GaConfig::default()
            },
            GaConfig {
                crossover_prob: 1.5,
                ..GaConfig::default()
            },
            GaConfig {
                record_freq: 0,
                ..GaConfig::default()
            },
            GaConfig {
                str_length: 1,
                ..GaConfig::default()
            },
        ];
        for c in bad {
            assert!(c.validate().is_err(), "{c:?}");
        }
        assert_eq!(GaConfig::with_population(1000).keep_parents, 100);
    }

    #[test]
    fn initial_population_in_range() {
        let ranges = ParamRanges::<f64>::standard();
        let pop = init_population(&small(50), &ranges, &mut rng(1));
        assert_eq!(pop.len(), 50);
        for ind in &pop.individuals {
            assert!(crate::params::validate_genes(&ind.genome, &ranges).is_ok());
            let g = ind.genome[0];
            assert_eq!(g, g.floor());
            assert!((10.0..=40.0).contains(&g));
            assert_eq!(ind.genome[1], ind.genome[1].floor());
        }
        assert_eq!(init_population(&small(50), &ranges, &mut rng(1)), pop);
    }

    #[test]
    fn pair_bounds() {
        let config = GaConfig {
            str_length: 20,
            ..GaConfig::default()
        };
        for seed in 0..200 {
            let (t, m) = generation_pair(&config, &mut rng(seed)).unwrap();
            assert_eq!(t.len(), 20);
            assert!((7..=33).contains(&m.len()), "{}", m.len());
            assert!(t.symbols().iter().chain(m.symbols()).all(|&s| s < 4));
        }
        assert_eq!(
            generation_pair(&config, &mut rng(9)).unwrap(),
            generation_pair(&config, &mut rng(9)).unwrap()
        );
    }

    #[test]
    fn failing_runs_give_sentinel_fitness() {
        let x = Sequence::parse("0").unwrap();
        let ind = Individual::new(ParamRanges::<f64>::standard().midpoints());
        let f = evaluate_individual(&ind, (&x, &x), &small(10), &mut rng(2));
        assert_eq!(f.value, -1e12 / f.total_time);
    }

    #[test]
    fn step_timing_is_reproducible() {
        let (x, y) = generation_pair(&small(10), &mut rng(3)).unwrap();
        let ind = Individual::new(ParamRanges::<f64>::standard().midpoints());
        let a = evaluate_individual(&ind, (&x, &y), &small(10), &mut rng(4));
        let b = evaluate_individual(&ind, (&x, &y), &small(10), &mut rng(4));
        assert_eq!(a, b);
        assert!(a.total_time > 0.0);
    }

    #[test]
    fn elitism_and_range_closure() {
        let ranges = ParamRanges::<f64>::standard();
        let config = GaConfig {
            keep_parents: 5,
            ..small(30)
        };
        let mut pop = init_population(&config, &ranges, &mut rng(5));
        for (i, ind) in pop.individuals.iter_mut().enumerate() {
            ind.fitness = Some(-(i as f64));
        }
        let mut r = rng(6);
        for _ in 0..20 {
            let next = next_generation(&pop, &config, &ranges, &mut r);
            assert_eq!(next.len(), pop.len());
            assert_eq!(&next.individuals[..5], &pop.individuals[..5]);
            for ind in &next.individuals {
                assert!(crate::params::validate_genes(&ind.genome, &ranges).is_ok());
            }
            pop = next;
            for (i, ind) in pop.individuals.iter_mut().enumerate() {
                ind.fitness = Some(-(i as f64));
            }
        }
    }

    #[test]
    fn clones_without_crossover_or_mutation() {
        let ranges = ParamRanges::<f64>::standard();
        let config = GaConfig {
            keep_parents: 4,
            crossover_prob: 0.0,
            mutation_prob: 0.0,
            ..small(40)
        };
        let mut pop = init_population(&config, &ranges, &mut rng(7));
        pop.individuals
            .iter_mut()
            .for_each(|i| i.fitness = Some(1.0));
        let next = next_generation(&pop, &config, &ranges, &mut rng(8));
        let elite: Vec<_> = pop.individuals[..4].iter().map(|i| i.genome).collect();
        for child in &next.individuals[4..] {
            assert!(elite.contains(&child.genome));
            assert_eq!(child.fitness, None);
        }
    }

    #[test]
    fn one_generation_run() {
        let ranges = ParamRanges::<f64>::standard();
        let config = GaConfig {
            max_generations: Some(1),
            ..small(10)
        };
        let pop = run_ga(&config, &ranges, &mut rng(9), &mut NullSink).unwrap();
        assert_eq!(pop.len(), 10);
        assert!(pop.individuals.iter().all(|i| i.fitness.is_some()));
        assert!(pop.is_sorted());
        assert_eq!(pop.generation, 1);
    }

    struct Recorder {
        checkpoints: Vec<(usize, usize)>,
        generations: Vec<usize>,
        fail_at: Option<usize>,
    }

    impl GaSink<f64> for Recorder {
        fn checkpoint(&mut self, index: usize, pop: &Population<f64>) -> Result<()> {
            if self.fail_at == Some(index) {
                return Err(Error::Io(std::io::Error::other("disk full")));
            }
            self.checkpoints.push((index, pop.generation));
            Ok(())
        }

        fn generation_done(&mut self, pop: &Population<f64>) {
            self.generations.push(pop.generation);
        }
    }

    #[test]
    fn checkpoint_schedule() {
        let ranges = ParamRanges::<f64>::standard();
        let config = GaConfig {
            max_generations: Some(11),
            trials_per_individual: 2,
            ..small(10)
        };
        let mut sink = Recorder {
            checkpoints: vec![],
            generations: vec![],
            fail_at: None,
        };
        run_ga(&config, &ranges, &mut rng(10), &mut sink).unwrap();
        assert_eq!(sink.checkpoints, vec![(0, 5), (1, 10)]);
        assert_eq!(sink.generations, (1..=11).collect::<Vec<_>>());
    }

    #[test]
    fn sink_failure_keeps_population() {
        let ranges = ParamRanges::<f64>::standard();
        let config = GaConfig {
            max_generations: Some(20),
            record_freq: 2,
            trials_per_individual: 2,
            ..small(10)
        };
        let mut sink = Recorder {
            checkpoints: vec![],
            generations: vec![],
            fail_at: Some(1),
        };
        match run_ga(&config, &ranges, &mut rng(11), &mut sink) {
            Err(GaError::Checkpoint { population, .. }) => {
                assert_eq!(population.generation, 4);
                assert_eq!(population.len(), 10);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn equilibrium_stops_fixed_pair_runs() {
        let ranges = ParamRanges::<f64>::standard();
        // With no mutation and no crossover the elite quickly stops changing.
        let config = GaConfig {
            max_generations: None,
            fixed_pair: true,
            mutation_prob: 0.0,
            crossover_prob: 0.0,
            equilibrium_generations: 3,
            trials_per_individual: 2,
            ..small(10)
        };
        let pop = run_ga(&config, &ranges, &mut rng(12), &mut NullSink).unwrap();
        assert!(pop.generation >= 4);
    }
}
