//! Parameter ranges, the tuned parameter table and length interpolation.

use std::fmt;
use std::path::Path;

use crate::aco::{AcoParams, Gene, GENE_COUNT};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, EPSILON};
use crate::seqcore::Sequence;

/// Inclusive `(low, high)` bounds for each gene, in table order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamRanges<T> {
    bounds: [(T, T); GENE_COUNT],
}

impl<T: Scalar> ParamRanges<T> {
    pub fn new(bounds: [(T, T); GENE_COUNT]) -> Result<Self> {
        if let Some(gene) = Gene::ALL
            .iter()
            .find(|g| !(bounds[g.index()].0 < bounds[g.index()].1))
        {
            return Err(Error::InvalidParams(format!("empty range for {gene}")));
        }
        Ok(Self { bounds })
    }

    /// Search ranges of the tuner. Parameters whose nominal lower bound is 0
    /// start at 1e-9 instead, and the regional weight may go up to 10.
    pub fn standard() -> Self {
        let eps = T::lit(EPSILON);
        let n = |v: f64| T::lit(v);
        Self {
            bounds: [
                (n(10.0), n(40.0)),
                (n(5.0), n(30.0)),
                (eps, n(1.0)),
                (eps, n(10.0)),
                (eps, n(10.0)),
                (eps, n(10.0)),
                (eps, n(1.0)),
                (eps, n(1.0)),
                (eps, n(1.0)),
                (eps, n(1.0)),
            ],
        }
    }

    pub fn bounds(&self, gene: Gene) -> (T, T) {
        self.bounds[gene.index()]
    }

    pub fn width(&self, gene: Gene) -> T {
        let (lo, hi) = self.bounds(gene);
        hi - lo
    }

    pub fn clamp(&self, gene: Gene, value: T) -> T {
        let (lo, hi) = self.bounds(gene);
        value.max(lo).min(hi)
    }

    pub fn midpoints(&self) -> [T; GENE_COUNT] {
        self.bounds.map(|(lo, hi)| (lo + hi) / T::lit(2.0))
    }
}

impl<T: Scalar> Default for ParamRanges<T> {
    fn default() -> Self {
        Self::standard()
    }
}

/// A gene outside its range.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Violation {
    pub gene: Gene,
    pub value: f64,
    pub low: f64,
    pub high: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {} is outside [{}, {}]",
            self.gene, self.value, self.low, self.high
        )
    }
}

/// Lists every gene of `params` outside `ranges`.
pub fn validate_params<T: Scalar>(
    params: &AcoParams<T>,
    ranges: &ParamRanges<T>,
) -> std::result::Result<(), Vec<Violation>> {
    validate_genes(&params.to_genes(), ranges)
}

pub fn validate_genes<T: Scalar>(
    genes: &[T; GENE_COUNT],
    ranges: &ParamRanges<T>,
) -> std::result::Result<(), Vec<Violation>> {
    let violations: Vec<Violation> = Gene::ALL
        .iter()
        .filter_map(|&gene| {
            let v = genes[gene.index()];
            let (lo, hi) = ranges.bounds(gene);
            (!(v >= lo && v <= hi)).then(|| Violation {
                gene,
                value: v.as_f64(),
                low: lo.as_f64(),
                high: hi.as_f64(),
            })
        })
        .collect();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// `(|x| + |y|) / 2`.
pub fn average_length(x: &Sequence, y: &Sequence) -> f64 {
    (x.len() + y.len()) as f64 / 2.0
}

pub const KNOT_SPACING: u32 = 10;
pub const MIN_LENGTH: u32 = 10;
pub const MAX_LENGTH: u32 = 100;
const KNOTS: usize = 10;

/// Tuned parameters for string lengths 10, 20, ..., 100.
const SHIPPED: [[f64; GENE_COUNT]; KNOTS] = [
    [
        10.0,
        5.0,
        0.411191490,
        9.434392207,
        6.109820365,
        3.909960135,
        0.853763237,
        0.660878498,
        0.917907684,
        0.990544051,
    ],
    [
        10.0,
        5.0,
        0.438349294,
        9.423857194,
        6.926580738,
        2.350289525,
        0.830586273,
        0.635274652,
        1.0,
        1.0,
    ],
    [
        10.0,
        5.0,
        0.453581583,
        9.353249096,
        9.343075608,
        2.224402772,
        0.827315180,
        0.606102419,
        1.0,
        1.0,
    ],
    [
        10.0,
        5.0,
        0.517059770,
        9.284172996,
        9.244311660,
        1.853908945,
        0.827352487,
        0.595236898,
        0.965550166,
        1.0,
    ],
    [
        10.0,
        5.0,
        0.432201854,
        9.290221874,
        10.0,
        2.142958734,
        0.798933405,
        0.571805707,
        1.0,
        1.0,
    ],
    [
        10.0,
        5.0,
        0.436950953,
        9.282690356,
        10.0,
        1.915834968,
        0.728488635,
        0.577967010,
        1.0,
        1.0,
    ],
    [
        10.0,
        5.0,
        0.417636990,
        9.149204714,
        10.0,
        1.736982155,
        0.730894471,
        0.579124731,
        1.0,
        1.0,
    ],
    [
        10.0,
        5.0,
        0.366514982,
        9.064648465,
        10.0,
        1.878705913,
        0.620157623,
        0.532124853,
        1.0,
        1.0,
    ],
    [
        12.0,
        8.0,
        0.341437549,
        9.332940631,
        10.0,
        1.856936304,
        0.622498305,
        0.519128179,
        1.0,
        1.0,
    ],
    [
        15.0,
        10.0,
        0.329430526,
        9.259328124,
        10.0,
        1.862138526,
        0.628942392,
        0.515925041,
        1.0,
        1.0,
    ],
];

/// Header of the tuned-table CSV.
pub const CSV_HEADER: &str =
    "length,max_gen,num_ants,pher_step,pher_weight,match_weight,region_weight,init_pher,l_decay,g_decay,prob_prob";

/// Parameter rows at the knot lengths 10, 20, ..., 100, each in gene order.
#[derive(Clone, Debug, PartialEq)]
pub struct TunedTable<T> {
    rows: [[T; GENE_COUNT]; KNOTS],
}

impl<T: Scalar> TunedTable<T> {
    /// The table that ships with the crate.
    pub fn shipped() -> Self {
        Self {
            rows: SHIPPED.map(|row| row.map(T::lit)),
        }
    }

    pub fn from_rows(rows: [[T; GENE_COUNT]; KNOTS]) -> Self {
        Self { rows }
    }

    pub fn knots() -> impl Iterator<Item = u32> {
        (MIN_LENGTH..=MAX_LENGTH).step_by(KNOT_SPACING as usize)
    }

    /// Row for a knot length, `None` for any other length.
    pub fn row(&self, length: u32) -> Option<&[T; GENE_COUNT]> {
        if !length.is_multiple_of(KNOT_SPACING) || !(MIN_LENGTH..=MAX_LENGTH).contains(&length) {
            return None;
        }
        self.rows.get((length / KNOT_SPACING - 1) as usize)
    }

    /// Piecewise-linear genes for `avg_len` in `[10, 100]`.
    ///
    /// With `low` the knot at or below `avg_len` and `w = avg_len - low`,
    /// each gene is `w * (row[low + 10] - row[low]) / 10 + row[low]`. At
    /// exactly 100 the last row is returned as is.
    pub fn interpolate_genes(&self, avg_len: T) -> Result<[T; GENE_COUNT]> {
        let (lo_len, hi_len) = (T::lit(MIN_LENGTH as f64), T::lit(MAX_LENGTH as f64));
        if !(avg_len >= lo_len && avg_len <= hi_len) {
            return Err(Error::LengthOutOfRange(avg_len.as_f64()));
        }
        let spacing = T::lit(KNOT_SPACING as f64);
        let knot = (avg_len / spacing).floor();
        let index = knot.to_usize().expect("in range") - 1;
        if index + 1 >= KNOTS {
            return Ok(self.rows[KNOTS - 1]);
        }
        let w = avg_len - knot * spacing;
        let (low, high) = (&self.rows[index], &self.rows[index + 1]);
        Ok(std::array::from_fn(|i| {
            w * (high[i] - low[i]) / spacing + low[i]
        }))
    }

    /// [`Self::interpolate_genes`] as run parameters, with `g` and `a`
    /// floored.
    pub fn interpolate(&self, avg_len: T) -> Result<AcoParams<T>> {
        Ok(AcoParams::from_genes(&self.interpolate_genes(avg_len)?))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for (length, row) in Self::knots().zip(&self.rows) {
            out.push_str(&length.to_string());
            for v in row {
                out.push(',');
                out.push_str(&v.to_string());
            }
            out.push('\n');
        }
        out
    }

    /// Parses the CSV written by [`Self::to_csv`]. `source` only labels
    /// error messages.
    pub fn from_csv(text: &str, source: &Path) -> Result<Self> {
        let err = |line: usize, message: String| Error::Parse {
            path: source.to_path_buf(),
            line,
            message,
        };
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        match lines.next() {
            Some((_, h)) if h.trim() == CSV_HEADER => {}
            Some((i, _)) => return Err(err(i + 1, format!("expected header `{CSV_HEADER}`"))),
            None => return Err(err(1, "empty table".into())),
        }
        let mut rows = [[T::zero(); GENE_COUNT]; KNOTS];
        let mut seen = [false; KNOTS];
        for (i, line) in lines {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != GENE_COUNT + 1 {
                return Err(err(
                    i + 1,
                    format!("expected {} fields, found {}", GENE_COUNT + 1, fields.len()),
                ));
            }
            let length: u32 = fields[0]
                .parse()
                .map_err(|_| err(i + 1, format!("bad length {:?}", fields[0])))?;
            if !length.is_multiple_of(KNOT_SPACING) || !(MIN_LENGTH..=MAX_LENGTH).contains(&length)
            {
                return Err(err(i + 1, format!("length {length} is not a knot")));
            }
            let slot = (length / KNOT_SPACING - 1) as usize;
            if seen[slot] {
                return Err(err(i + 1, format!("duplicate row for length {length}")));
            }
            seen[slot] = true;
            for (g, field) in fields[1..].iter().enumerate() {
                rows[slot][g] = field
                    .parse()
                    .map_err(|_| err(i + 1, format!("bad value {field:?}")))?;
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(err(
                0,
                format!(
                    "missing row for length {}",
                    (missing as u32 + 1) * KNOT_SPACING
                ),
            ));
        }
        Ok(Self { rows })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_csv(&std::fs::read_to_string(path)?, path)
    }
}

impl<T: Scalar> Default for TunedTable<T> {
    fn default() -> Self {
        Self::shipped()
    }
}

/// Interpolated parameters from the shipped table.
pub fn interpolate_params<T: Scalar>(avg_len: T) -> Result<AcoParams<T>> {
    TunedTable::shipped().interpolate(avg_len)
}
