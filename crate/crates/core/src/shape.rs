//! Compositions, their cell diagrams, and the dominance order on cells.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A cell `(col, row)`, both 1-based. Row `0` is used as the sentinel for
/// "no cell above".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub col: usize,
    pub row: usize,
}

impl Cell {
    pub const fn new(col: usize, row: usize) -> Self {
        Cell { col, row }
    }

    /// `self >=_D other`: weakly up and weakly left. `(1,1)` dominates every cell.
    pub fn dominates(self, other: Cell) -> bool {
        self.col <= other.col && self.row <= other.row
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.col, self.row)
    }
}

pub fn dominates(a: Cell, b: Cell) -> bool {
    a.dominates(b)
}

/// Row lengths, top row first. Every part is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if let Some(pos) = parts.iter().position(|&p| p == 0) {
            return Err(Error::InvalidComposition(format!(
                "part {} is zero",
                pos + 1
            )));
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Length of row `row` (1-based); zero outside `1..=len()`.
    pub fn part(&self, row: usize) -> usize {
        if row == 0 {
            return 0;
        }
        self.0.get(row - 1).copied().unwrap_or(0)
    }

    /// Sum of the parts.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest part.
    pub fn width(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.col >= 1 && cell.row >= 1 && cell.col <= self.part(cell.row)
    }

    /// Cells in row-major order (top row first, left to right).
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(j, &len)| (1..=len).map(move |i| Cell::new(i, j + 1)))
    }

    /// The composition with its last row removed.
    pub fn without_last_row(&self) -> Composition {
        let mut parts = self.0.clone();
        parts.pop();
        Composition(parts)
    }

    /// The composition with a row of length `len` appended.
    pub fn with_row(&self, len: usize) -> Result<Composition> {
        let mut parts = self.0.clone();
        parts.push(len);
        Composition::new(parts)
    }

    /// Shortens row `row` by one cell; the row must have length at least 2.
    pub fn without_cell_in_row(&self, row: usize) -> Result<Composition> {
        if self.part(row) < 2 {
            return Err(Error::InvalidComposition(format!(
                "row {row} of {self} cannot lose a cell"
            )));
        }
        let mut parts = self.0.clone();
        parts[row - 1] -= 1;
        Ok(Composition(parts))
    }

    /// `(col, j')` for the lowest row `j' < row` holding a cell in column
    /// `col`, or `(col, 0)` when there is none.
    pub fn upof(&self, col: usize, row: usize) -> Cell {
        let above = (1..row.min(self.len() + 1))
            .rev()
            .find(|&r| self.part(r) >= col)
            .unwrap_or(0);
        Cell::new(col, above)
    }

    pub fn leftof(&self, col: usize, row: usize) -> Cell {
        Cell::new(col - 1, row)
    }

    /// Number of cells of column `col` strictly above `row`, plus one.
    pub fn colpos(&self, col: usize, row: usize) -> usize {
        1 + (1..row.min(self.len() + 1))
            .filter(|&r| self.part(r) >= col)
            .count()
    }

    /// Every composition of `n`, in lexicographic order of parts.
    pub fn all_of(n: usize) -> Vec<Composition> {
        fn rec(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if rest == 0 {
                out.push(Composition(cur.clone()));
                return;
            }
            for first in 1..=rest {
                cur.push(first);
                rec(rest - first, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Comma-separated parts, e.g. `3,2,1,4`. The empty string is the empty
/// composition.
impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(str::trim)
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                tok.parse::<usize>().map_err(|e| Error::Parse {
                    input: s.to_string(),
                    reason: format!("{tok:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

impl<'de> Deserialize<'de> for Composition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Composition::new(parts).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn dominance() {
        assert!(dominates(Cell::new(1, 1), Cell::new(3, 4)));
        assert!(!dominates(Cell::new(2, 1), Cell::new(1, 2)));
        assert!(!dominates(Cell::new(1, 2), Cell::new(2, 1)));
        assert!(dominates(Cell::new(2, 2), Cell::new(2, 2)));
    }

    #[test]
    fn basic_statistics() {
        let a = comp("3,2,1,4");
        assert_eq!(a.size(), 10);
        assert_eq!(a.len(), 4);
        assert_eq!(a.width(), 4);
        assert_eq!(a.cells().count(), 10);
        assert!(a.contains(Cell::new(4, 4)));
        assert!(!a.contains(Cell::new(3, 2)));
        assert!(!a.contains(Cell::new(1, 5)));
        assert!(!a.contains(Cell::new(1, 0)));
        assert_eq!(a.to_string(), "3,2,1,4");
    }

    #[test]
    fn row_operations() {
        let a = comp("3,2,1,4");
        assert_eq!(a.without_last_row(), comp("3,2,1"));
        assert_eq!(a.with_row(2).unwrap(), comp("3,2,1,4,2"));
        assert_eq!(a.without_cell_in_row(4).unwrap(), comp("3,2,1,3"));
        assert!(a.without_cell_in_row(3).is_err());
        assert!(a.with_row(0).is_err());
    }

    #[test]
    fn upof_and_colpos() {
        let a = comp("3,2,1,4");
        assert_eq!(a.upof(3, 4), Cell::new(3, 1));
        assert_eq!(a.upof(2, 1), Cell::new(2, 0));
        assert_eq!(a.upof(1, 4), Cell::new(1, 3));
        // rows beyond the diagram see every row above them
        assert_eq!(a.upof(4, 6), Cell::new(4, 4));
        assert_eq!(a.upof(5, 6), Cell::new(5, 0));
        assert_eq!(a.colpos(1, 4), 4);
        assert_eq!(a.colpos(2, 4), 3);
        assert_eq!(a.colpos(4, 4), 1);
    }

    #[test]
    fn parsing() {
        assert_eq!(comp(""), Composition::empty());
        assert_eq!(comp(" 2, 1 "), Composition::new(vec![2, 1]).unwrap());
        assert!("2,0".parse::<Composition>().is_err());
        assert!("2,a".parse::<Composition>().is_err());
        let json = serde_json::to_string(&comp("3,1")).unwrap();
        assert_eq!(json, "[3,1]");
        assert_eq!(
            serde_json::from_str::<Composition>(&json).unwrap(),
            comp("3,1")
        );
        assert!(serde_json::from_str::<Composition>("[0]").is_err());
    }

    #[test]
    fn compositions_of_n() {
        for n in 0..=8 {
            let all = Composition::all_of(n);
            assert_eq!(all.len(), if n == 0 { 1 } else { 1 << (n - 1) });
            assert!(all.iter().all(|a| a.size() == n));
        }
    }
}
