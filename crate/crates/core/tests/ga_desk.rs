use acoalign::ga::{
    read_checkpoint, run_ga, write_checkpoint, DirectorySink, GaConfig, GaSink, Individual,
    Population, Timing,
};
use acoalign::params::ParamRanges;
use acoalign::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn config(pop: usize, generations: usize) -> GaConfig {
    GaConfig {
        str_length: 10,
        trials_per_individual: 3,
        fixed_pair: true,
        timing: Timing::AntSteps,
        max_generations: Some(generations),
        ..GaConfig::with_population(pop)
    }
}

#[derive(Default)]
struct EliteLog(Vec<Vec<Option<f64>>>);

impl GaSink<f64> for EliteLog {
    fn checkpoint(&mut self, _index: usize, _pop: &Population<f64>) -> Result<()> {
        Ok(())
    }

    fn generation_done(&mut self, pop: &Population<f64>) {
        self.0
            .push(pop.individuals.iter().map(|i| i.fitness).collect());
    }
}

#[test]
fn fixed_pair_elite_fitness_never_drops() {
    let c = GaConfig {
        equilibrium_generations: usize::MAX,
        ..config(30, 8)
    };
    let mut log = EliteLog::default();
    run_ga(
        &c,
        &ParamRanges::standard(),
        &mut ChaCha8Rng::seed_from_u64(3),
        &mut log,
    )
    .unwrap();
    assert_eq!(log.0.len(), 8);
    let best: Vec<f64> = log.0.iter().map(|g| g[0].unwrap()).collect();
    assert!(best.windows(2).all(|w| w[1] >= w[0]), "{best:?}");
    for gen in &log.0 {
        assert!(gen.windows(2).all(|w| w[0] >= w[1]));
    }
}

#[test]
fn step_timed_checkpoints_are_reproducible() {
    let run = || {
        let dir = tempfile::tempdir().unwrap();
        let mut sink = DirectorySink::new(dir.path());
        run_ga::<f64, _, _>(
            &config(20, 10),
            &ParamRanges::standard(),
            &mut ChaCha8Rng::seed_from_u64(8),
            &mut sink,
        )
        .unwrap();
        let names: Vec<String> = sink
            .written()
            .iter()
            .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
            .collect();
        let bodies: Vec<Vec<u8>> = sink
            .written()
            .iter()
            .map(|p| std::fs::read(p).unwrap())
            .collect();
        (names, bodies)
    };
    let (names, a) = run();
    assert_eq!(names, ["out-0.txt", "out-1.txt"]);
    let (_, b) = run();
    assert_eq!(a, b);
}

#[test]
fn checkpoint_round_trip_of_random_genomes() {
    let ranges = ParamRanges::<f64>::standard();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let individuals = (0..500)
        .map(|_| {
            let mut genome = [0.0; 10];
            for (i, g) in genome.iter_mut().enumerate() {
                let (lo, hi) = ranges.bounds(acoalign::aco::Gene::ALL[i]);
                *g = rng.gen_range(lo..=hi);
                if i < 2 {
                    *g = g.floor();
                }
            }
            Individual {
                genome,
                fitness: Some(rng.gen_range(-1e3..1e6)),
            }
        })
        .collect();
    let pop = Population {
        individuals,
        generation: 4,
    };
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out-0.txt");
    write_checkpoint(&pop, &path).unwrap();
    let back: Population<f64> = read_checkpoint(&path).unwrap();
    assert_eq!(back.len(), 500);
    for (a, b) in pop.individuals.iter().zip(&back.individuals) {
        for (x, y) in a.genome.iter().zip(&b.genome) {
            assert!((x - y).abs() <= 5e-10 * x.abs().max(1.0), "{x} {y}");
        }
    }
}

#[test]
fn unwritable_directory_surfaces_population() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("plain");
    std::fs::write(&file, "x").unwrap();
    let mut sink = DirectorySink::new(file.join("sub"));
    let err = run_ga::<f64, _, _>(
        &config(10, 5),
        &ParamRanges::standard(),
        &mut ChaCha8Rng::seed_from_u64(1),
        &mut sink,
    )
    .unwrap_err();
    match err {
        acoalign::ga::GaError::Checkpoint { population, .. } => assert_eq!(population.len(), 10),
        other => panic!("{other}"),
    }
}
