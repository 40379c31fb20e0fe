//! Command implementations behind the `acoalign` binary.
//!
//! Each command writes its report to a caller-supplied writer so tests can
//! capture output without spawning a process.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use acoalign::aco::{run_aco, AcoParams, Gene, GENE_COUNT};
use acoalign::ga::{
    generation_pair, run_ga, DirectorySink, FitnessMode, GaConfig, GaError, Timing,
};
use acoalign::params::{average_length, validate_params, ParamRanges, TunedTable, CSV_HEADER};
use acoalign::seqcore::nw_align;
use acoalign::stats::{corrected_mean, histogram, histogram_csv, skewness};
use acoalign::{AcoOptions, Alignment, Sequence};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 1729;

#[derive(Debug, Parser)]
#[command(
    name = "acoalign",
    version,
    about = "Pairwise sequence alignment with an ant colony"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Align two sequences.
    Align(AlignArgs),
    /// Score random template/mutant pairs with both aligners (CSV).
    Compare(CompareArgs),
    /// Histogram of repeated colony runs on one pair (CSV).
    Hist(HistArgs),
    /// Evolve colony parameters with the genetic algorithm.
    Tune(TuneArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
}

#[derive(Debug, Args)]
pub struct AlignArgs {
    pub seq_x: String,
    pub seq_y: String,
    /// Treat the two positionals as paths to files holding the sequences.
    #[arg(long)]
    pub files: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Ten comma-separated values in table order: g,a,pher_step,w_pher,w_match,w_region,init_pher,q_l,q_g,p.
    #[arg(long)]
    pub params: Option<String>,
    /// Tuned-table CSV used instead of the built-in one.
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Also print the optimal alignment.
    #[arg(long)]
    pub compare_nw: bool,
    #[arg(long)]
    pub no_global_decay: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, default_value_t = 100)]
    pub pairs: usize,
    /// Template length, 10 to 100.
    #[arg(long, default_value_t = 20)]
    pub length: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[arg(long)]
    pub no_global_decay: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HistArgs {
    #[arg(long, default_value_t = 50)]
    pub length: usize,
    #[arg(long, default_value_t = 100)]
    pub repetitions: usize,
    #[arg(long, default_value_t = 10)]
    pub bins: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub params: Option<String>,
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[arg(long)]
    pub no_global_decay: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TimingArg {
    Wall,
    Steps,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FitnessArg {
    Mean,
    Consistency,
}

/// Flags override values from the config file.
#[derive(Debug, Default, Args)]
pub struct TuneArgs {
    /// File of `key = value` lines using the long flag names (`_` or `-`).
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub length: Option<usize>,
    #[arg(long)]
    pub pop: Option<usize>,
    #[arg(long)]
    pub generations: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Checkpoint directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub fixed_pair: bool,
    #[arg(long, value_enum)]
    pub timing: Option<TimingArg>,
    #[arg(long, value_enum)]
    pub fitness: Option<FitnessArg>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub record_freq: Option<usize>,
    #[arg(long)]
    pub keep: Option<usize>,
    #[arg(long)]
    pub crossover: Option<f64>,
    #[arg(long)]
    pub mutation: Option<f64>,
    #[arg(long)]
    pub equilibrium: Option<usize>,
    #[arg(long)]
    pub no_global_decay: bool,
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Align(a) => with_output(a.out.as_deref(), out, |w| cmd_align(a, w)),
        Command::Compare(a) => with_output(a.out.as_deref(), out, |w| cmd_compare(a, w)),
        Command::Hist(a) => with_output(a.out.as_deref(), out, |w| cmd_hist(a, w)),
        Command::Tune(a) => cmd_tune(a, out),
    }
}

fn with_output(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    f: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    match path {
        Some(p) => fs::write(p, &buf).with_context(|| format!("writing {}", p.display()))?,
        None => stdout.write_all(&buf)?,
    }
    Ok(())
}

fn options(no_global_decay: bool) -> AcoOptions {
    AcoOptions {
        global_decay: !no_global_decay,
        ..AcoOptions::default()
    }
}

fn table(path: Option<&Path>) -> Result<TunedTable<f64>> {
    Ok(match path {
        Some(p) => TunedTable::load(p)?,
        None => TunedTable::shipped(),
    })
}

/// Parses ten comma-separated genes and checks them against the standard
/// ranges.
pub fn parse_params(text: &str) -> Result<AcoParams<f64>> {
    let values: Vec<f64> = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .with_context(|| format!("bad parameter value {s:?}"))
        })
        .collect::<Result<_>>()?;
    let Ok(genes) = <[f64; GENE_COUNT]>::try_from(values.as_slice()) else {
        bail!("--params needs {GENE_COUNT} values, got {}", values.len());
    };
    let params = AcoParams::from_genes(&genes);
    if let Err(v) = validate_params(&params, &ParamRanges::standard()) {
        let list: Vec<String> = v.iter().map(ToString::to_string).collect();
        bail!("invalid parameters: {}", list.join("; "));
    }
    Ok(params)
}

fn resolve_params(
    explicit: Option<&str>,
    table_path: Option<&Path>,
    length: f64,
) -> Result<AcoParams<f64>> {
    match explicit {
        Some(text) => parse_params(text),
        None => Ok(table(table_path)?.interpolate(length)?),
    }
}

fn read_sequence(arg: &str, from_file: bool) -> Result<String> {
    if !from_file {
        return Ok(arg.to_string());
    }
    let text = fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
    Ok(text.split_whitespace().collect())
}

fn write_alignment(w: &mut dyn Write, a: &Alignment) -> Result<()> {
    writeln!(w, "{}", a.row_x())?;
    writeln!(w, "{}", a.markers())?;
    writeln!(w, "{}", a.row_y())?;
    Ok(())
}

pub fn cmd_align(args: &AlignArgs, w: &mut dyn Write) -> Result<()> {
    let x = read_sequence(&args.seq_x, args.files)?;
    let y = read_sequence(&args.seq_y, args.files)?;
    let (x, y) = Sequence::parse_pair(&x, &y)?;
    let params = resolve_params(
        args.params.as_deref(),
        args.table.as_deref(),
        average_length(&x, &y),
    )?;
    let options = options(args.no_global_decay);
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let result = run_aco(&x, &y, &params, &options, &mut rng)?;
    let nw = if args.compare_nw {
        Some(nw_align(&x, &y, &options.scheme)?)
    } else {
        None
    };
    match args.format {
        Format::Text => {
            writeln!(w, "The best alignment obtained was:")?;
            write_alignment(w, &result.best_alignment)?;
            writeln!(w, "The high score was: {}", result.best_score)?;
            if let Some((score, a)) = &nw {
                writeln!(w)?;
                writeln!(w, "The Needleman-Wunsch alignment was:")?;
                write_alignment(w, a)?;
                writeln!(w, "The Needleman-Wunsch score was: {score}")?;
            }
        }
        Format::Csv => {
            writeln!(w, "method,score,row_x,row_y")?;
            let a = &result.best_alignment;
            writeln!(w, "aco,{},{},{}", result.best_score, a.row_x(), a.row_y())?;
            if let Some((score, a)) = &nw {
                writeln!(w, "nw,{score},{},{}", a.row_x(), a.row_y())?;
            }
        }
    }
    Ok(())
}

/// One row of the compare report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompareRow {
    pub pair_id: usize,
    pub nw_score: i32,
    pub aco_score: i32,
}

/// Generates `pairs` template/mutant pairs and scores each with both
/// aligners. Rows are in pair order whatever the scheduling.
pub fn compare_rows(
    pairs: usize,
    length: usize,
    seed: u64,
    table: &TunedTable<f64>,
    options: &AcoOptions,
) -> Result<Vec<CompareRow>> {
    let params = table.interpolate(length as f64)?;
    let config = GaConfig {
        str_length: length,
        ..GaConfig::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jobs: Vec<(Sequence, Sequence, u64)> = (0..pairs)
        .map(|_| {
            let (x, y) = generation_pair(&config, &mut rng)?;
            Ok((x, y, rng.gen()))
        })
        .collect::<acoalign::Result<_>>()?;
    jobs.par_iter()
        .enumerate()
        .map(|(pair_id, (x, y, s))| {
            let (nw_score, _) = nw_align(x, y, &options.scheme)?;
            let r = run_aco(x, y, &params, options, &mut ChaCha8Rng::seed_from_u64(*s))?;
            Ok(CompareRow {
                pair_id,
                nw_score,
                aco_score: r.best_score,
            })
        })
        .collect()
}

pub fn cmd_compare(args: &CompareArgs, w: &mut dyn Write) -> Result<()> {
    let rows = compare_rows(
        args.pairs,
        args.length,
        args.seed,
        &table(args.table.as_deref())?,
        &options(args.no_global_decay),
    )?;
    writeln!(w, "pair_id,nw_score,aco_score,gap")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{}",
            r.pair_id,
            r.nw_score,
            r.aco_score,
            r.nw_score - r.aco_score
        )?;
    }
    Ok(())
}

/// Best scores of `repetitions` independently seeded runs on one pair.
pub fn repeated_scores(
    x: &Sequence,
    y: &Sequence,
    params: &AcoParams<f64>,
    options: &AcoOptions,
    repetitions: usize,
    seed: u64,
) -> Result<Vec<i32>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..repetitions).map(|_| rng.gen()).collect();
    seeds
        .par_iter()
        .map(|&s| Ok(run_aco(x, y, params, options, &mut ChaCha8Rng::seed_from_u64(s))?.best_score))
        .collect()
}

pub fn cmd_hist(args: &HistArgs, w: &mut dyn Write) -> Result<()> {
    if args.repetitions == 0 {
        bail!("--repetitions must be at least 1");
    }
    let config = GaConfig {
        str_length: args.length,
        ..GaConfig::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let (x, y) = generation_pair(&config, &mut rng)?;
    let params = resolve_params(
        args.params.as_deref(),
        args.table.as_deref(),
        args.length as f64,
    )?;
    let scores = repeated_scores(
        &x,
        &y,
        &params,
        &options(args.no_global_decay),
        args.repetitions,
        rng.gen(),
    )?;
    let samples: Vec<f64> = scores.iter().map(|&s| f64::from(s)).collect();
    let bins = histogram(&samples, args.bins)?;
    let stats = corrected_mean(&samples)?;
    let skew = skewness(&samples).map_or_else(|_| "undefined".to_string(), |s| s.to_string());
    w.write_all(histogram_csv(&bins).as_bytes())?;
    writeln!(
        w,
        "# raw_mean={},stddev={},corrected_mean={},skewness={}",
        stats.raw_mean, stats.stddev, stats.corrected_mean, skew
    )?;
    Ok(())
}

/// Applies `key = value` lines to `config`. Returns the checkpoint
/// directory if the file names one.
pub fn apply_config_file(
    text: &str,
    source: &Path,
    config: &mut GaConfig,
) -> Result<Option<PathBuf>> {
    let mut out_dir = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = || format!("{}:{}", source.display(), i + 1);
        let (key, value) = line
            .split_once('=')
            .with_context(|| format!("{}: expected key = value", at()))?;
        let value = value.trim();
        let key = key.trim().replace('-', "_");
        let bad = || format!("{}: bad value {value:?} for {key}", at());
        match key.as_str() {
            "length" => config.str_length = value.parse().with_context(bad)?,
            "pop" => {
                let keep_default =
                    config.keep_parents == GaConfig::with_population(config.pop_limit).keep_parents;
                config.pop_limit = value.parse().with_context(bad)?;
                if keep_default {
                    config.keep_parents = GaConfig::with_population(config.pop_limit).keep_parents;
                }
            }
            "generations" => config.max_generations = Some(value.parse().with_context(bad)?),
            "seed" => config.seed = value.parse().with_context(bad)?,
            "out" => out_dir = Some(PathBuf::from(value)),
            "fixed_pair" => config.fixed_pair = value.parse().with_context(bad)?,
            "timing" => {
                config.timing = match value {
                    "wall" => Timing::WallClock,
                    "steps" => Timing::AntSteps,
                    _ => bail!(bad()),
                }
            }
            "fitness" => {
                config.fitness_mode = match value {
                    "mean" => FitnessMode::MeanCubed,
                    "consistency" => FitnessMode::ConsistencyPenalized,
                    _ => bail!(bad()),
                }
            }
            "trials" => config.trials_per_individual = value.parse().with_context(bad)?,
            "record_freq" => config.record_freq = value.parse().with_context(bad)?,
            "keep" => config.keep_parents = value.parse().with_context(bad)?,
            "crossover" => config.crossover_prob = value.parse().with_context(bad)?,
            "mutation" => config.mutation_prob = value.parse().with_context(bad)?,
            "equilibrium" => config.equilibrium_generations = value.parse().with_context(bad)?,
            "no_global_decay" => {
                config.aco.global_decay = !value.parse::<bool>().with_context(bad)?
            }
            _ => bail!("{}: unknown key {key}", at()),
        }
    }
    Ok(out_dir)
}

/// Builds the run configuration and checkpoint directory from the config
/// file and flags.
pub fn tune_config(args: &TuneArgs) -> Result<(GaConfig, PathBuf)> {
    let mut config = GaConfig {
        seed: DEFAULT_SEED,
        ..GaConfig::default()
    };
    let mut dir = PathBuf::from(".");
    if let Some(path) = &args.config {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        if let Some(d) = apply_config_file(&text, path, &mut config)? {
            dir = d;
        }
    }
    if let Some(n) = args.pop {
        config.pop_limit = n;
        config.keep_parents = GaConfig::with_population(n).keep_parents;
    }
    if let Some(v) = args.length {
        config.str_length = v;
    }
    if let Some(v) = args.generations {
        config.max_generations = Some(v);
    }
    if let Some(v) = args.seed {
        config.seed = v;
    }
    if let Some(v) = &args.out {
        dir = v.clone();
    }
    if args.fixed_pair {
        config.fixed_pair = true;
    }
    match args.timing {
        Some(TimingArg::Wall) => config.timing = Timing::WallClock,
        Some(TimingArg::Steps) => config.timing = Timing::AntSteps,
        None => {}
    }
    match args.fitness {
        Some(FitnessArg::Mean) => config.fitness_mode = FitnessMode::MeanCubed,
        Some(FitnessArg::Consistency) => config.fitness_mode = FitnessMode::ConsistencyPenalized,
        None => {}
    }
    if let Some(v) = args.trials {
        config.trials_per_individual = v;
    }
    if let Some(v) = args.record_freq {
        config.record_freq = v;
    }
    if let Some(v) = args.keep {
        config.keep_parents = v;
    }
    if let Some(v) = args.crossover {
        config.crossover_prob = v;
    }
    if let Some(v) = args.mutation {
        config.mutation_prob = v;
    }
    if let Some(v) = args.equilibrium {
        config.equilibrium_generations = v;
    }
    if args.no_global_decay {
        config.aco.global_decay = false;
    }
    config.validate()?;
    Ok((config, dir))
}

fn check_writable(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)
        .with_context(|| format!("cannot create output directory {}", dir.display()))?;
    let probe = dir.join(".acoalign-write-check");
    fs::write(&probe, b"")
        .with_context(|| format!("output directory {} is not writable", dir.display()))?;
    fs::remove_file(&probe)?;
    Ok(())
}

pub fn cmd_tune(args: &TuneArgs, w: &mut dyn Write) -> Result<()> {
    let (config, dir) = tune_config(args)?;
    check_writable(&dir)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut sink = DirectorySink::new(&dir);
    let pop = match run_ga::<f64, _, _>(&config, &ParamRanges::standard(), &mut rng, &mut sink) {
        Ok(pop) => pop,
        Err(GaError::Checkpoint { source, population }) => {
            if let Some(best) = population.best() {
                eprintln!("best genome so far: {:?}", best.genome);
            }
            return Err(source).context("writing checkpoint");
        }
        Err(e) => return Err(e.into()),
    };
    let best = pop.best().context("empty population")?;
    writeln!(w, "generations: {}", pop.generation)?;
    writeln!(w, "checkpoints: {}", sink.written().len())?;
    writeln!(w, "best fitness: {}", best.fitness.unwrap_or(f64::NAN))?;
    writeln!(w, "{CSV_HEADER}")?;
    let mut row = config.str_length.to_string();
    for g in Gene::ALL {
        row.push(',');
        let v = best.genome[g.index()];
        row.push_str(&if g.is_integer() { v.floor() } else { v }.to_string());
    }
    writeln!(w, "{row}")?;
    Ok(())
}
