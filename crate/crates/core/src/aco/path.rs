use crate::error::{Error, Result};
use crate::seqcore::{Alignment, Column, ScoringScheme, Sequence};

use super::grid::Direction;

/// A completed ant walk from `(n-1, m-1)` to the top row or left column.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AntPath {
    cells: Vec<(usize, usize)>,
    moves: Vec<Direction>,
    score: i32,
}

impl AntPath {
    /// Validates the walk against the two sequences and scores it as the
    /// alignment [`extract_alignment`] reads from it.
    pub fn new(
        cells: Vec<(usize, usize)>,
        moves: Vec<Direction>,
        seq_x: &Sequence,
        seq_y: &Sequence,
        scheme: &ScoringScheme,
    ) -> Result<Self> {
        validate(&cells, &moves, seq_x.len(), seq_y.len())?;
        let score = path_score(&cells, &moves, seq_x.symbols(), seq_y.symbols(), scheme);
        Ok(Self {
            cells,
            moves,
            score,
        })
    }

    /// Follows `moves` from the start cell.
    pub fn from_moves(
        moves: Vec<Direction>,
        seq_x: &Sequence,
        seq_y: &Sequence,
        scheme: &ScoringScheme,
    ) -> Result<Self> {
        let (n, m) = (seq_x.len(), seq_y.len());
        if n == 0 || m == 0 {
            return Err(Error::MalformedPath("empty sequence".into()));
        }
        let mut cells = Vec::with_capacity(moves.len() + 1);
        let mut at = (n - 1, m - 1);
        cells.push(at);
        for (i, d) in moves.iter().enumerate() {
            at = d
                .step(at.0, at.1)
                .ok_or_else(|| Error::MalformedPath(format!("move {i} leaves the grid")))?;
            cells.push(at);
        }
        Self::new(cells, moves, seq_x, seq_y, scheme)
    }

    /// Built by the colony, which only produces valid walks.
    pub(crate) fn from_parts(
        cells: Vec<(usize, usize)>,
        moves: Vec<Direction>,
        score: i32,
    ) -> Self {
        Self {
            cells,
            moves,
            score,
        }
    }

    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    pub fn moves(&self) -> &[Direction] {
        &self.moves
    }

    pub fn score(&self) -> i32 {
        self.score
    }

    pub fn start(&self) -> (usize, usize) {
        self.cells[0]
    }

    pub fn end(&self) -> (usize, usize) {
        *self.cells.last().expect("a path has at least one cell")
    }
}

fn validate(cells: &[(usize, usize)], moves: &[Direction], n: usize, m: usize) -> Result<()> {
    let bad = |msg: String| Err(Error::MalformedPath(msg));
    if n == 0 || m == 0 {
        return bad("empty sequence".into());
    }
    if cells.len() != moves.len() + 1 {
        return bad(format!("{} cells for {} moves", cells.len(), moves.len()));
    }
    if cells[0] != (n - 1, m - 1) {
        return bad(format!(
            "starts at {:?}, expected {:?}",
            cells[0],
            (n - 1, m - 1)
        ));
    }
    let last = cells.len() - 1;
    for (i, &(x, y)) in cells.iter().enumerate() {
        let on_edge = x == 0 || y == 0;
        if i < last && on_edge {
            return bad(format!(
                "cell {i} {:?} is on the edge before the end",
                (x, y)
            ));
        }
        if i == last && !on_edge {
            return bad(format!("ends at {:?}, which is not on the edge", (x, y)));
        }
    }
    for (i, (pair, &dir)) in cells.windows(2).zip(moves).enumerate() {
        if dir.step(pair[0].0, pair[0].1) != Some(pair[1]) {
            return bad(format!(
                "move {i} ({dir:?}) does not lead from {:?} to {:?}",
                pair[0], pair[1]
            ));
        }
    }
    Ok(())
}

/// Alignment columns of a walk, first column first.
///
/// Reading from the edge cell back to the start: leading gap columns for
/// the part of X (or Y) before the edge cell, one column pairing the edge
/// cell's symbols, then one column per move (diagonal pairs both symbols of
/// the cell it leaves, up puts a gap in X, left puts a gap in Y).
fn columns(cells: &[(usize, usize)], moves: &[Direction], xs: &[u8], ys: &[u8]) -> Vec<Column> {
    let (ex, ey) = *cells.last().expect("non-empty path");
    let mut out = Vec::with_capacity(xs.len() + ys.len());
    if ex > 0 {
        out.extend(xs[..ex].iter().map(|&a| Column::GapInY(a)));
    } else if ey > 0 {
        out.extend(ys[..ey].iter().map(|&b| Column::GapInX(b)));
    }
    out.push(Column::Pair(xs[ex], ys[ey]));
    for (&(x, y), &dir) in cells.iter().zip(moves).rev() {
        out.push(match dir {
            Direction::Diag => Column::Pair(xs[x], ys[y]),
            Direction::Up => Column::GapInX(ys[y]),
            Direction::Left => Column::GapInY(xs[x]),
        });
    }
    out
}

/// Score of the alignment a walk represents, without materialising it.
pub(crate) fn path_score(
    cells: &[(usize, usize)],
    moves: &[Direction],
    xs: &[u8],
    ys: &[u8],
    scheme: &ScoringScheme,
) -> i32 {
    let (ex, ey) = *cells.last().expect("non-empty path");
    let gap = scheme.gap_penalty();
    let mut score = gap * (ex + ey) as i32 + scheme.pair(xs[ex], ys[ey]);
    for (&(x, y), &dir) in cells.iter().zip(moves) {
        score += match dir {
            Direction::Diag => scheme.pair(xs[x], ys[y]),
            Direction::Up | Direction::Left => gap,
        };
    }
    score
}

/// Reads the global alignment a walk represents.
pub fn extract_alignment(path: &AntPath, seq_x: &Sequence, seq_y: &Sequence) -> Result<Alignment> {
    validate(&path.cells, &path.moves, seq_x.len(), seq_y.len())?;
    Ok(Alignment::new(
        columns(&path.cells, &path.moves, seq_x.symbols(), seq_y.symbols()),
        seq_x.alphabet(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::score_alignment;
    use proptest::prelude::*;
    use Direction::*;

    fn seq(s: &str) -> Sequence {
        Sequence::parse(s).unwrap()
    }

    #[test]
    fn pure_diagonal_identical() {
        let s = seq("01230123");
        let path = AntPath::from_moves(vec![Diag; 7], &s, &s, &ScoringScheme::default()).unwrap();
        let a = extract_alignment(&path, &s, &s).unwrap();
        assert_eq!(a.row_x(), "01230123");
        assert_eq!(a.markers(), "||||||||");
        assert_eq!(a.gaps(), 0);
        assert_eq!(path.score(), 40);
    }

    #[test]
    fn edge_cell_on_left_column_pads_y_prefix() {
        // x = "012", y = "01230": start (2, 4); Diag, Diag -> (0, 2).
        let (x, y) = (seq("012"), seq("01230"));
        let path =
            AntPath::from_moves(vec![Diag, Diag], &x, &y, &ScoringScheme::default()).unwrap();
        assert_eq!(path.end(), (0, 2));
        let a = extract_alignment(&path, &x, &y).unwrap();
        assert_eq!(a.row_x(), "--012");
        assert_eq!(a.row_y(), "01230");
        assert_eq!(&a.columns()[..2], &[Column::GapInX(0), Column::GapInX(1)]);
        // two gaps, then 0/2, 1/3, 2/0 mismatches
        assert_eq!(path.score(), -8 - 9);
    }

    #[test]
    fn edge_cell_on_top_row_pads_x_prefix() {
        let (x, y) = (seq("2301"), seq("01"));
        let path = AntPath::from_moves(vec![Diag], &x, &y, &ScoringScheme::default()).unwrap();
        let a = extract_alignment(&path, &x, &y).unwrap();
        assert_eq!(a.row_x(), "2301");
        assert_eq!(a.row_y(), "--01");
        assert_eq!(path.score(), 2);
    }

    #[test]
    fn gap_moves() {
        // x = "0011", y = "011": Left then diagonals.
        let (x, y) = (seq("0011"), seq("011"));
        let s = ScoringScheme::default();
        let path = AntPath::from_moves(vec![Diag, Left, Diag], &x, &y, &s).unwrap();
        let a = extract_alignment(&path, &x, &y).unwrap();
        assert_eq!(a.row_x(), "0011");
        assert_eq!(a.row_y(), "01-1");
        assert_eq!(path.score(), score_alignment(&a, &s));
        let path = AntPath::from_moves(vec![Up, Diag, Diag], &y, &x, &s).unwrap();
        let a = extract_alignment(&path, &y, &x).unwrap();
        assert_eq!(a.row_x(), "011-");
        assert_eq!(a.row_y(), "0011");
        assert_eq!(path.score(), 5 - 3 + 5 - 4);
    }

    #[test]
    fn malformed_paths() {
        let (x, y) = (seq("0123"), seq("0123"));
        let s = ScoringScheme::default();
        // stops in the interior
        assert!(AntPath::from_moves(vec![Diag], &x, &y, &s).is_err());
        // keeps walking along the edge
        assert!(AntPath::from_moves(vec![Diag, Diag, Diag, Left], &x, &y, &s).is_err());
        // wrong start
        assert!(AntPath::new(vec![(2, 3), (1, 2)], vec![Diag], &x, &y, &s).is_err());
        // move does not match cells
        assert!(AntPath::new(
            vec![(3, 3), (2, 3), (1, 2), (0, 1)],
            vec![Diag, Diag, Diag],
            &x,
            &y,
            &s
        )
        .is_err());
    }

    fn random_walk(n: usize, m: usize, picks: &[u8]) -> Vec<Direction> {
        let (mut x, mut y) = (n - 1, m - 1);
        let mut moves = Vec::new();
        let mut k = 0;
        while x > 0 && y > 0 {
            let d = [Diag, Left, Up][picks[k % picks.len()] as usize % 3];
            k += 1;
            let (nx, ny) = d.step(x, y).unwrap();
            x = nx;
            y = ny;
            moves.push(d);
        }
        moves
    }

    proptest! {
        #[test]
        fn random_paths_score_and_reconstruct(
            xs in proptest::collection::vec(0u8..4, 2..20),
            ys in proptest::collection::vec(0u8..4, 2..20),
            picks in proptest::collection::vec(0u8..3, 1..50),
        ) {
            let x = Sequence::new(xs, crate::Alphabet::Digits).unwrap();
            let y = Sequence::new(ys, crate::Alphabet::Digits).unwrap();
            let s = ScoringScheme::default();
            let moves = random_walk(x.len(), y.len(), &picks);
            prop_assert!(moves.len() <= x.len() + y.len() - 2);
            let path = AntPath::from_moves(moves, &x, &y, &s).unwrap();
            let a = extract_alignment(&path, &x, &y).unwrap();
            // column-by-column recount
            let mut recount = 0;
            for (cx, cy) in a.row_x().chars().zip(a.row_y().chars()) {
                recount += if cx == '-' || cy == '-' { -4 } else if cx == cy { 5 } else { -3 };
            }
            prop_assert_eq!(path.score(), recount);
            prop_assert_eq!(score_alignment(&a, &s), recount);
            prop_assert_eq!(a.ungapped_x(), x);
            prop_assert_eq!(a.ungapped_y(), y);
        }
    }
}
