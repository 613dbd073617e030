//! Chessboard representation of a permutation.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::perm::Permutation;
use crate::{Error, Result};

/// A matrix of nonnegative cell counts.
///
/// `cells[i][j]` counts the elements in row i ∩ column j, with rows indexed
/// bottom-to-top and columns left-to-right. Every row sum and column sum must
/// be positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Board {
    cells: Vec<Vec<u64>>,
}

impl Board {
    pub fn new(cells: Vec<Vec<u64>>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::InvalidBoard("no rows".into()));
        }
        let ncols = cells[0].len();
        if ncols == 0 {
            return Err(Error::InvalidBoard("no columns".into()));
        }
        if cells.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidBoard("ragged rows".into()));
        }
        for (i, row) in cells.iter().enumerate() {
            if row.iter().sum::<u64>() == 0 {
                return Err(Error::InvalidBoard(format!("row {} empty", i + 1)));
            }
        }
        for j in 0..ncols {
            if cells.iter().map(|r| r[j]).sum::<u64>() == 0 {
                return Err(Error::InvalidBoard(format!("column {} empty", j + 1)));
            }
        }
        Ok(Self { cells })
    }

    pub fn rows(&self) -> usize {
        self.cells.len()
    }

    pub fn cols(&self) -> usize {
        self.cells[0].len()
    }

    /// Cell count at (row i, column j), both 1-based, rows bottom-to-top.
    pub fn at(&self, i: usize, j: usize) -> u64 {
        self.cells[i - 1][j - 1]
    }

    pub fn total(&self) -> u64 {
        self.cells.iter().flatten().sum()
    }

    pub fn cells(&self) -> &[Vec<u64>] {
        &self.cells
    }
}

impl fmt::Display for Board {
    /// Text format: header `rows=R cols=C`, then matrix rows top-to-bottom.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rows={} cols={}", self.rows(), self.cols())?;
        for row in self.cells.iter().rev() {
            let line: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Board {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("empty board text".into()))?;
        let mut rows = None;
        let mut cols = None;
        for tok in header.split_whitespace() {
            if let Some(v) = tok.strip_prefix("rows=") {
                rows = v.parse::<usize>().ok();
            } else if let Some(v) = tok.strip_prefix("cols=") {
                cols = v.parse::<usize>().ok();
            }
        }
        let (rows, cols) = match (rows, cols) {
            (Some(r), Some(c)) => (r, c),
            _ => return Err(Error::Format(format!("bad board header {header:?}"))),
        };
        let mut cells: Vec<Vec<u64>> = Vec::with_capacity(rows);
        for line in lines {
            let row: Vec<u64> = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u64>()
                        .map_err(|e| Error::Format(format!("bad cell {t:?}: {e}")))
                })
                .collect::<Result<_>>()?;
            if row.len() != cols {
                return Err(Error::Format(format!(
                    "row has {} cells, header says {}",
                    row.len(),
                    cols
                )));
            }
            cells.push(row);
        }
        if cells.len() != rows {
            return Err(Error::Format(format!(
                "{} rows in body, header says {}",
                cells.len(),
                rows
            )));
        }
        cells.reverse(); // text is top-to-bottom, storage bottom-to-top
        Board::new(cells)
    }
}

/// Chessboard representation of a permutation.
///
/// Columns are the maximal contiguous ascending runs of p; rows are the
/// maximal runs of consecutive values whose occurrences appear left to right.
pub fn board(p: &Permutation) -> Board {
    let n = p.len();
    assert!(n > 0, "board of the empty permutation is undefined");
    // column index (0-based) of each position
    let mut col_of = vec![0usize; n + 1]; // by position
    let mut c = 0;
    for i in 2..=n {
        if p.at(i) < p.at(i - 1) {
            c += 1;
        }
        col_of[i] = c;
    }
    let ncols = c + 1;
    // row index of each value: extend while consecutive values appear at
    // increasing positions
    let inv = p.inverse();
    let mut row_of = vec![0usize; n + 1]; // by value
    let mut r = 0;
    for v in 2..=n {
        if inv.at(v) < inv.at(v - 1) {
            r += 1;
        }
        row_of[v] = r;
    }
    let nrows = r + 1;
    let mut cells = vec![vec![0u64; ncols]; nrows];
    for i in 1..=n {
        cells[row_of[p.at(i)]][col_of[i]] += 1;
    }
    Board::new(cells).expect("board of a permutation is valid")
}

/// Expand a board back into the unique permutation it represents.
///
/// Column j occupies the next block of positions; row i the next block of
/// values; within a cell, positions and values pair off increasingly.
pub fn board_to_permutation(m: &Board) -> Result<Permutation> {
    let nrows = m.rows();
    let ncols = m.cols();
    let mut col_off = vec![0u64; ncols + 1];
    for j in 1..=ncols {
        let colsum: u64 = (1..=nrows).map(|i| m.at(i, j)).sum();
        col_off[j] = col_off[j - 1] + colsum;
    }
    let mut row_off = vec![0u64; nrows + 1];
    for i in 1..=nrows {
        let rowsum: u64 = (1..=ncols).map(|j| m.at(i, j)).sum();
        row_off[i] = row_off[i - 1] + rowsum;
    }
    let n = col_off[ncols];
    if n != row_off[nrows] {
        return Err(Error::InvalidBoard("row/column totals disagree".into()));
    }
    let mut values = vec![0usize; n as usize];
    for j in 1..=ncols {
        // position already consumed in column j by lower rows
        let mut pos = col_off[j - 1];
        for i in 1..=nrows {
            let count = m.at(i, j);
            if count == 0 {
                continue;
            }
            // value range consumed in row i by columns left of j
            let val: u64 = row_off[i - 1] + (1..j).map(|jj| m.at(i, jj)).sum::<u64>();
            for k in 0..count {
                values[(pos + k) as usize] = (val + k + 1) as usize;
            }
            pos += count;
        }
    }
    Permutation::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn board_of_14873526() {
        let b = board(&p("1 4 8 7 3 5 2 6"));
        assert_eq!(b.rows(), 5);
        assert_eq!(b.cols(), 4);
        let mut nonzero = vec![];
        for i in 1..=5 {
            for j in 1..=4 {
                if b.at(i, j) > 0 {
                    assert_eq!(b.at(i, j), 1);
                    nonzero.push((i, j));
                }
            }
        }
        assert_eq!(
            nonzero,
            [(1, 1), (1, 4), (2, 3), (3, 1), (3, 3), (3, 4), (4, 2), (5, 1)]
        );
    }

    #[test]
    fn trivial_boards() {
        let b = board(&p("1 2 3"));
        assert_eq!(b.cells(), &[vec![3u64]]);
        let b = board(&p("3 2 1"));
        assert_eq!(b.rows(), 3);
        assert_eq!(b.cols(), 3);
        for i in 1..=3 {
            for j in 1..=3 {
                assert_eq!(b.at(i, j), u64::from(i + j == 4));
            }
        }
    }

    #[test]
    fn expansion_examples() {
        let b = Board::new(vec![vec![3]]).unwrap();
        assert_eq!(board_to_permutation(&b).unwrap(), p("1 2 3"));
        let b = Board::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(board_to_permutation(&b).unwrap(), p("2 1"));
        let b = board(&p("1 4 8 7 3 5 2 6"));
        assert_eq!(board_to_permutation(&b).unwrap(), p("1 4 8 7 3 5 2 6"));
    }

    #[test]
    fn invariants_rejected() {
        assert!(Board::new(vec![vec![0, 1], vec![0, 2]]).is_err());
        assert!(Board::new(vec![vec![0, 0], vec![1, 1]]).is_err());
        assert!(Board::new(vec![vec![1], vec![1, 2]]).is_err());
    }

    #[test]
    fn text_roundtrip() {
        let b = board(&p("1 4 8 7 3 5 2 6"));
        let text = b.to_string();
        assert!(text.starts_with("rows=5 cols=4\n"));
        assert_eq!(text.parse::<Board>().unwrap(), b);
    }
}
