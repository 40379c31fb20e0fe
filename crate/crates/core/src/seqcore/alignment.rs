use std::fmt;

use crate::error::{Error, Result};

use super::sequence::{Alphabet, Sequence};

pub const GAP_CHAR: char = '-';
pub const MATCH_CHAR: char = '|';

/// Match bonus, mismatch penalty and gap penalty shared by every aligner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ScoringScheme {
    match_bonus: i32,
    mismatch_penalty: i32,
    gap_penalty: i32,
}

impl ScoringScheme {
    pub fn new(match_bonus: i32, mismatch_penalty: i32, gap_penalty: i32) -> Result<Self> {
        if match_bonus <= 0 {
            return Err(Error::InvalidScheme(format!(
                "match bonus must be positive, got {match_bonus}"
            )));
        }
        if mismatch_penalty >= 0 {
            return Err(Error::InvalidScheme(format!(
                "mismatch penalty must be negative, got {mismatch_penalty}"
            )));
        }
        if gap_penalty >= 0 {
            return Err(Error::InvalidScheme(format!(
                "gap penalty must be negative, got {gap_penalty}"
            )));
        }
        Ok(Self {
            match_bonus,
            mismatch_penalty,
            gap_penalty,
        })
    }

    pub fn match_bonus(&self) -> i32 {
        self.match_bonus
    }

    pub fn mismatch_penalty(&self) -> i32 {
        self.mismatch_penalty
    }

    pub fn gap_penalty(&self) -> i32 {
        self.gap_penalty
    }

    #[inline]
    pub fn pair(&self, a: u8, b: u8) -> i32 {
        if a == b {
            self.match_bonus
        } else {
            self.mismatch_penalty
        }
    }

    #[inline]
    pub fn column(&self, column: Column) -> i32 {
        match column {
            Column::Pair(a, b) => self.pair(a, b),
            Column::GapInX(_) | Column::GapInY(_) => self.gap_penalty,
        }
    }
}

impl Default for ScoringScheme {
    /// +5 per match, -3 per mismatch, -4 per gap.
    fn default() -> Self {
        Self {
            match_bonus: 5,
            mismatch_penalty: -3,
            gap_penalty: -4,
        }
    }
}

/// One alignment column. Gap-versus-gap columns are unrepresentable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Column {
    /// Symbol of X against symbol of Y.
    Pair(u8, u8),
    /// Gap in X against a symbol of Y.
    GapInX(u8),
    /// Symbol of X against a gap in Y.
    GapInY(u8),
}

/// A global alignment of two sequences.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alignment {
    columns: Vec<Column>,
    alphabet: Alphabet,
}

impl Alignment {
    pub fn new(columns: Vec<Column>, alphabet: Alphabet) -> Self {
        Self { columns, alphabet }
    }

    /// Parses the two gapped rows of a text alignment.
    pub fn from_rows(row_x: &str, row_y: &str, alphabet: Alphabet) -> Result<Self> {
        let xs: Vec<char> = row_x.chars().collect();
        let ys: Vec<char> = row_y.chars().collect();
        if xs.len() != ys.len() {
            return Err(Error::MalformedAlignment(format!(
                "rows have different lengths {} and {}",
                xs.len(),
                ys.len()
            )));
        }
        let encode = |c: char, position: usize| {
            alphabet.encode(c).ok_or(Error::InvalidSymbol {
                symbol: c,
                position,
            })
        };
        let columns = xs
            .iter()
            .zip(&ys)
            .enumerate()
            .map(|(i, (&a, &b))| match (a == GAP_CHAR, b == GAP_CHAR) {
                (true, true) => Err(Error::MalformedAlignment(format!(
                    "column {i} is gap against gap"
                ))),
                (true, false) => Ok(Column::GapInX(encode(b, i)?)),
                (false, true) => Ok(Column::GapInY(encode(a, i)?)),
                (false, false) => Ok(Column::Pair(encode(a, i)?, encode(b, i)?)),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { columns, alphabet })
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn row_x(&self) -> String {
        self.columns
            .iter()
            .map(|c| match *c {
                Column::Pair(a, _) | Column::GapInY(a) => self.alphabet.decode(a),
                Column::GapInX(_) => GAP_CHAR,
            })
            .collect()
    }

    pub fn row_y(&self) -> String {
        self.columns
            .iter()
            .map(|c| match *c {
                Column::Pair(_, b) | Column::GapInX(b) => self.alphabet.decode(b),
                Column::GapInY(_) => GAP_CHAR,
            })
            .collect()
    }

    pub fn markers(&self) -> String {
        self.columns
            .iter()
            .map(|c| match *c {
                Column::Pair(a, b) if a == b => MATCH_CHAR,
                _ => ' ',
            })
            .collect()
    }

    /// X with gaps removed.
    pub fn ungapped_x(&self) -> Sequence {
        let symbols = self
            .columns
            .iter()
            .filter_map(|c| match *c {
                Column::Pair(a, _) | Column::GapInY(a) => Some(a),
                Column::GapInX(_) => None,
            })
            .collect();
        Sequence::new(symbols, self.alphabet).expect("alignment symbols are in the alphabet")
    }

    /// Y with gaps removed.
    pub fn ungapped_y(&self) -> Sequence {
        let symbols = self
            .columns
            .iter()
            .filter_map(|c| match *c {
                Column::Pair(_, b) | Column::GapInX(b) => Some(b),
                Column::GapInY(_) => None,
            })
            .collect();
        Sequence::new(symbols, self.alphabet).expect("alignment symbols are in the alphabet")
    }

    pub fn matches(&self) -> usize {
        self.columns
            .iter()
            .filter(|c| matches!(c, Column::Pair(a, b) if a == b))
            .count()
    }

    pub fn gaps(&self) -> usize {
        self.columns
            .iter()
            .filter(|c| !matches!(c, Column::Pair(..)))
            .count()
    }
}

/// Three lines: gapped X, match markers, gapped Y.
impl fmt::Display for Alignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.row_x())?;
        writeln!(f, "{}", self.markers())?;
        write!(f, "{}", self.row_y())
    }
}

/// Sum of per-column scores.
pub fn score_alignment(alignment: &Alignment, scheme: &ScoringScheme) -> i32 {
    alignment.columns.iter().map(|&c| scheme.column(c)).sum()
}
