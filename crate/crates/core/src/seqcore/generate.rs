use rand::Rng;

use crate::error::{Error, Result};

use super::sequence::{Alphabet, Sequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Edit {
    Substitute(usize, u8),
    Insert(usize, u8),
    Delete(usize),
}

impl Edit {
    fn apply(self, symbols: &mut Vec<u8>) {
        match self {
            Edit::Substitute(i, s) => {
                if let Some(slot) = symbols.get_mut(i) {
                    *slot = s;
                }
            }
            Edit::Insert(i, s) => symbols.insert(i.min(symbols.len()), s),
            Edit::Delete(i) => {
                if i < symbols.len() {
                    symbols.remove(i);
                }
            }
        }
    }
}

/// Uniform i.i.d. symbols from `alphabet`.
pub fn random_template<R: Rng + ?Sized>(
    length: usize,
    alphabet: Alphabet,
    rng: &mut R,
) -> Sequence {
    let symbols = alphabet.symbols();
    let drawn = (0..length)
        .map(|_| symbols[rng.gen_range(0..symbols.len())])
        .collect();
    Sequence::new(drawn, alphabet).expect("drawn from the alphabet")
}

/// Smallest and largest number of mutations `mutate_template` can apply to
/// a template of length `len`.
pub fn mutation_count_bounds(len: usize) -> (usize, usize) {
    (
        (len as f64 / 3.5).floor() as usize,
        (len as f64 / 1.5).floor() as usize,
    )
}

/// Applies `floor(len / u)` random edits, `u ~ U[1.5, 3.5)`, which mutates
/// roughly a third to two thirds of the template.
///
/// Each edit is a point substitution, a single-symbol insertion or a
/// single-symbol deletion, chosen uniformly, at a uniform position of the
/// current string. Positions are drawn independently and may repeat.
/// Substitutions draw any symbol, including the one already present.
pub fn mutate_template<R: Rng + ?Sized>(template: &Sequence, rng: &mut R) -> Result<Sequence> {
    if template.is_empty() {
        return Err(Error::EmptySequence { which: "template" });
    }
    let alphabet = template.alphabet();
    let symbols = alphabet.symbols();
    let divisor: f64 = rng.gen_range(1.5..3.5);
    let count = (template.len() as f64 / divisor).floor() as usize;
    let mut out = template.clone().into_symbols();
    for _ in 0..count {
        let kind = rng.gen_range(0..3);
        let position = if out.is_empty() {
            0
        } else {
            rng.gen_range(0..out.len())
        };
        let edit = match kind {
            0 => Edit::Substitute(position, symbols[rng.gen_range(0..symbols.len())]),
            1 => Edit::Insert(position, symbols[rng.gen_range(0..symbols.len())]),
            _ => Edit::Delete(position),
        };
        edit.apply(&mut out);
    }
    Sequence::new(out, alphabet)
}
