use std::fmt;

use crate::scalar::Scalar;

pub const GENE_COUNT: usize = 10;

/// The ten tunable ACO parameters, in the column order of the tuned table
/// and of checkpoint files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gene {
    MaxGenerations,
    NumAnts,
    PherStep,
    PherWeight,
    MatchWeight,
    RegionWeight,
    InitPher,
    LocalDecay,
    GlobalDecay,
    ProbProb,
}

impl Gene {
    pub const ALL: [Gene; GENE_COUNT] = [
        Gene::MaxGenerations,
        Gene::NumAnts,
        Gene::PherStep,
        Gene::PherWeight,
        Gene::MatchWeight,
        Gene::RegionWeight,
        Gene::InitPher,
        Gene::LocalDecay,
        Gene::GlobalDecay,
        Gene::ProbProb,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Column name used in checkpoint headers.
    pub fn column_name(self) -> &'static str {
        match self {
            Gene::MaxGenerations => "MAX_GEN",
            Gene::NumAnts => "NUM_ANTS",
            Gene::PherStep => "PHER_STEP",
            Gene::PherWeight => "PHER_WEIGHT",
            Gene::MatchWeight => "MATCH_WEIGHT",
            Gene::RegionWeight => "REGION_WEIGHT",
            Gene::InitPher => "INIT_PHER",
            Gene::LocalDecay => "L_DECAY",
            Gene::GlobalDecay => "G_DECAY",
            Gene::ProbProb => "PROB_PROB",
        }
    }

    pub fn is_integer(self) -> bool {
        matches!(self, Gene::MaxGenerations | Gene::NumAnts)
    }
}

impl fmt::Display for Gene {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Gene::MaxGenerations => "g",
            Gene::NumAnts => "a",
            Gene::PherStep => "pher_step",
            Gene::PherWeight => "w_pher",
            Gene::MatchWeight => "w_match",
            Gene::RegionWeight => "w_region",
            Gene::InitPher => "init_pher",
            Gene::LocalDecay => "q_l",
            Gene::GlobalDecay => "q_g",
            Gene::ProbProb => "p",
        };
        f.write_str(name)
    }
}

/// Parameters of one ACO run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AcoParams<T> {
    /// Upper bound on generations.
    pub max_generations: usize,
    pub num_ants: usize,
    /// Amount deposited by one ant step.
    pub pher_step: T,
    /// Exponent on the pheromone level.
    pub pher_weight: T,
    /// Exponent on the match factor.
    pub match_weight: T,
    /// Exponent on the regional factor.
    pub region_weight: T,
    pub init_pher: T,
    pub local_decay: T,
    pub global_decay: T,
    /// Probability of a roulette choice instead of a greedy one.
    pub prob_prob: T,
}

impl<T: Scalar> AcoParams<T> {
    /// Builds parameters from genes in table order, flooring the two integer
    /// genes. Negative integer genes floor to zero.
    pub fn from_genes(genes: &[T; GENE_COUNT]) -> Self {
        let floor = |v: T| v.floor().to_usize().unwrap_or(0);
        Self {
            max_generations: floor(genes[0]),
            num_ants: floor(genes[1]),
            pher_step: genes[2],
            pher_weight: genes[3],
            match_weight: genes[4],
            region_weight: genes[5],
            init_pher: genes[6],
            local_decay: genes[7],
            global_decay: genes[8],
            prob_prob: genes[9],
        }
    }

    pub fn to_genes(&self) -> [T; GENE_COUNT] {
        [
            T::from_usize(self.max_generations).unwrap_or_else(T::max_value),
            T::from_usize(self.num_ants).unwrap_or_else(T::max_value),
            self.pher_step,
            self.pher_weight,
            self.match_weight,
            self.region_weight,
            self.init_pher,
            self.local_decay,
            self.global_decay,
            self.prob_prob,
        ]
    }

    pub fn gene(&self, gene: Gene) -> T {
        self.to_genes()[gene.index()]
    }
}
