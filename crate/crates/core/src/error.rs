use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("sequence {which} is empty")]
    EmptySequence { which: &'static str },

    #[error("sequence {which} has length {len}, at least {min} is required")]
    SequenceTooShort {
        which: &'static str,
        len: usize,
        min: usize,
    },

    #[error("invalid symbol {symbol:?} at position {position}")]
    InvalidSymbol { symbol: char, position: usize },

    #[error("invalid scoring scheme: {0}")]
    InvalidScheme(String),

    #[error("malformed alignment: {0}")]
    MalformedAlignment(String),

    #[error("malformed ant path: {0}")]
    MalformedPath(String),

    #[error("cell ({x}, {y}) is not an interior cell of the {width}x{height} grid")]
    NotInterior {
        x: usize,
        y: usize,
        width: usize,
        height: usize,
    },

    #[error("pheromone level {level} at ({x}, {y}) is not positive")]
    NonPositivePheromone { x: usize, y: usize, level: f64 },

    #[error("average string length {0} is not between 10 and 100")]
    LengthOutOfRange(f64),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("sample is empty")]
    EmptySample,

    #[error("statistic is undefined: {0}")]
    UndefinedStatistic(&'static str),

    #[error("total time must be positive, got {0}")]
    NonPositiveTime(f64),

    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
