//! Fixed-width population dumps.
//!
//! The header holds eleven right-aligned 13-character column names, each
//! followed by a space. Every individual is one row of eleven `%13.9f`
//! fields (ten genes in table order, then the fitness), each followed by a
//! space. The file ends with an empty line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::aco::{Gene, GENE_COUNT};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{Individual, Population};

pub const SCORE_COLUMN: &str = "SCORE";
const FIELD_WIDTH: usize = 13;

pub fn column_names() -> [&'static str; GENE_COUNT + 1] {
    let mut names = [SCORE_COLUMN; GENE_COUNT + 1];
    for g in Gene::ALL {
        names[g.index()] = g.column_name();
    }
    names
}

pub fn header_line() -> String {
    column_names()
        .iter()
        .map(|n| format!("{n:>FIELD_WIDTH$} "))
        .collect()
}

/// File name of the `index`-th checkpoint of a run, counting from 0.
pub fn checkpoint_file_name(index: usize) -> String {
    format!("out-{index}.txt")
}

pub fn format_checkpoint<T: Scalar>(pop: &Population<T>) -> String {
    let mut out = header_line();
    out.push('\n');
    for ind in &pop.individuals {
        let fitness = ind.fitness.unwrap_or_else(T::nan);
        for v in ind.genome.iter().chain(std::iter::once(&fitness)) {
            out.push_str(&format!("{v:FIELD_WIDTH$.9} "));
        }
        out.push('\n');
    }
    out.push('\n');
    out
}

/// Writes `pop` to `path` through a temporary sibling file and a rename, so
/// an interrupted write never clobbers an earlier complete checkpoint.
pub fn write_checkpoint<T: Scalar>(pop: &Population<T>, path: &Path) -> Result<()> {
    let tmp = temporary_sibling(path);
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(format_checkpoint(pop).as_bytes())?;
        file.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn temporary_sibling(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".partial");
    path.with_file_name(name)
}

pub fn parse_checkpoint<T: Scalar>(text: &str, source: &Path) -> Result<Population<T>> {
    let err = |line: usize, message: String| Error::Parse {
        path: source.to_path_buf(),
        line,
        message,
    };
    let mut lines = text.lines().enumerate();
    let header: Vec<&str> = match lines.next() {
        Some((_, h)) => h.split_whitespace().collect(),
        None => return Err(err(1, "empty checkpoint".into())),
    };
    if header != column_names() {
        return Err(err(1, format!("unexpected header {header:?}")));
    }
    let mut individuals = Vec::new();
    for (i, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != GENE_COUNT + 1 {
            return Err(err(
                i + 1,
                format!("expected {} fields, found {}", GENE_COUNT + 1, fields.len()),
            ));
        }
        let mut values = [T::zero(); GENE_COUNT + 1];
        for (slot, f) in values.iter_mut().zip(&fields) {
            *slot = f
                .parse()
                .map_err(|_| err(i + 1, format!("bad number {f:?}")))?;
        }
        let mut genome = [T::zero(); GENE_COUNT];
        genome.copy_from_slice(&values[..GENE_COUNT]);
        let fitness = values[GENE_COUNT];
        individuals.push(Individual {
            genome,
            fitness: (!fitness.is_nan()).then_some(fitness),
        });
    }
    Ok(Population {
        individuals,
        generation: 0,
    })
}

pub fn read_checkpoint<T: Scalar>(path: &Path) -> Result<Population<T>> {
    parse_checkpoint(&fs::read_to_string(path)?, path)
}
