use crate::error::{Error, Result};

use super::alignment::{Alignment, Column, ScoringScheme};
use super::sequence::Sequence;

/// Optimal global alignment by Needleman-Wunsch dynamic programming.
///
/// Co-optimal tracebacks are resolved in the order diagonal, up (gap in X),
/// left (gap in Y), so the returned alignment is deterministic.
pub fn nw_align(x: &Sequence, y: &Sequence, scheme: &ScoringScheme) -> Result<(i32, Alignment)> {
    if x.is_empty() {
        return Err(Error::EmptySequence { which: "x" });
    }
    if y.is_empty() {
        return Err(Error::EmptySequence { which: "y" });
    }
    let (n, m) = (x.len(), y.len());
    let gap = scheme.gap_penalty();
    let width = m + 1;
    let mut h = vec![0i32; (n + 1) * width];
    for i in 1..=n {
        h[i * width] = i as i32 * gap;
    }
    for (j, cell) in h.iter_mut().enumerate().take(width) {
        *cell = j as i32 * gap;
    }
    for i in 1..=n {
        for j in 1..=m {
            let diag = h[(i - 1) * width + j - 1] + scheme.pair(x[i - 1], y[j - 1]);
            let up = h[i * width + j - 1] + gap;
            let left = h[(i - 1) * width + j] + gap;
            h[i * width + j] = diag.max(up).max(left);
        }
    }

    let mut columns = Vec::with_capacity(n + m);
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        let here = h[i * width + j];
        if i > 0 && j > 0 && here == h[(i - 1) * width + j - 1] + scheme.pair(x[i - 1], y[j - 1]) {
            columns.push(Column::Pair(x[i - 1], y[j - 1]));
            i -= 1;
            j -= 1;
        } else if j > 0 && here == h[i * width + j - 1] + gap {
            columns.push(Column::GapInX(y[j - 1]));
            j -= 1;
        } else {
            columns.push(Column::GapInY(x[i - 1]));
            i -= 1;
        }
    }
    columns.reverse();
    Ok((h[n * width + m], Alignment::new(columns, x.alphabet())))
}
