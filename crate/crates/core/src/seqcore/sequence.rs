use std::fmt;

use crate::error::{Error, Result};

const DIGITS: &[u8; 4] = b"0123";
const NUCLEOTIDES: &[u8; 4] = b"ACGT";

/// Symbol set of a [`Sequence`].
///
/// `Digits` and `Nucleotides` share the same internal codes `0..4` and only
/// differ in how they are rendered, so `"0123"` and `"ACGT"` compare equal
/// symbol by symbol. `Text` keeps raw printable ASCII bytes and is used for
/// arbitrary letter strings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Alphabet {
    #[default]
    Digits,
    Nucleotides,
    Text,
}

impl Alphabet {
    /// Internal codes of every symbol in the alphabet.
    pub fn symbols(self) -> Vec<u8> {
        match self {
            Alphabet::Digits | Alphabet::Nucleotides => vec![0, 1, 2, 3],
            Alphabet::Text => (b'!'..=b'~').filter(|&b| b != b'-').collect(),
        }
    }

    pub fn size(self) -> usize {
        match self {
            Alphabet::Digits | Alphabet::Nucleotides => 4,
            Alphabet::Text => self.symbols().len(),
        }
    }

    pub fn encode(self, c: char) -> Option<u8> {
        match self {
            Alphabet::Digits => DIGITS.iter().position(|&d| d as char == c).map(|i| i as u8),
            Alphabet::Nucleotides => {
                let up = c.to_ascii_uppercase();
                NUCLEOTIDES
                    .iter()
                    .position(|&d| d as char == up)
                    .map(|i| i as u8)
            }
            Alphabet::Text => {
                if c.is_ascii_graphic() && c != '-' {
                    Some(c as u8)
                } else {
                    None
                }
            }
        }
    }

    pub fn decode(self, code: u8) -> char {
        match self {
            Alphabet::Digits => DIGITS.get(code as usize).map_or('?', |&b| b as char),
            Alphabet::Nucleotides => NUCLEOTIDES.get(code as usize).map_or('?', |&b| b as char),
            Alphabet::Text => code as char,
        }
    }

    pub fn contains(self, code: u8) -> bool {
        match self {
            Alphabet::Digits | Alphabet::Nucleotides => code < 4,
            Alphabet::Text => code.is_ascii_graphic() && code != b'-',
        }
    }

    /// Narrowest alphabet able to encode every given text.
    pub fn detect<S: AsRef<str>>(texts: &[S]) -> Alphabet {
        [Alphabet::Digits, Alphabet::Nucleotides]
            .into_iter()
            .find(|a| {
                texts
                    .iter()
                    .all(|t| t.as_ref().chars().all(|c| a.encode(c).is_some()))
            })
            .unwrap_or(Alphabet::Text)
    }
}

/// An ordered list of alphabet symbols, stored as internal codes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequence {
    symbols: Vec<u8>,
    alphabet: Alphabet,
}

impl Sequence {
    pub fn new(symbols: Vec<u8>, alphabet: Alphabet) -> Result<Self> {
        if let Some(position) = symbols.iter().position(|&s| !alphabet.contains(s)) {
            return Err(Error::InvalidSymbol {
                symbol: symbols[position] as char,
                position,
            });
        }
        Ok(Self { symbols, alphabet })
    }

    /// Parses text, picking the alphabet with [`Alphabet::detect`].
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with(text, Alphabet::detect(&[text]))
    }

    pub fn parse_with(text: &str, alphabet: Alphabet) -> Result<Self> {
        let symbols = text
            .chars()
            .enumerate()
            .map(|(position, symbol)| {
                alphabet
                    .encode(symbol)
                    .ok_or(Error::InvalidSymbol { symbol, position })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { symbols, alphabet })
    }

    /// Parses two texts with a shared alphabet so their symbols are comparable.
    pub fn parse_pair(x: &str, y: &str) -> Result<(Self, Self)> {
        let alphabet = Alphabet::detect(&[x, y]);
        Ok((
            Self::parse_with(x, alphabet)?,
            Self::parse_with(y, alphabet)?,
        ))
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub(crate) fn into_symbols(self) -> Vec<u8> {
        self.symbols
    }
}

impl std::ops::Index<usize> for Sequence {
    type Output = u8;

    fn index(&self, i: usize) -> &u8 {
        &self.symbols[i]
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: String = self
            .symbols
            .iter()
            .map(|&s| self.alphabet.decode(s))
            .collect();
        f.write_str(&text)
    }
}
