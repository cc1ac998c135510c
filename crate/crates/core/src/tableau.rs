//! Column/block decomposition of the iterates of a primed permutation and
//! the stack-sorting tableau built from it.
//!
//! For `pi` in S_n' and `1 <= i <= sort_depth(pi)`, the *columns* of the
//! `i`-th pass are the right-to-left maxima of the prefix of `s^(i-1)(pi)`
//! before `0`; these are exactly the values the next pass sends past `0`.
//! The *blocks* are the (possibly empty) runs between consecutive columns.
//! Every value of `1..=n` is a column of exactly one pass, which fixes its
//! tableau column; its row is inherited from the column value of the
//! previous pass whose block it tops.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::shape::{Cell, Composition};

/// Columns and blocks of one pass; `blocks.len() == columns.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColumnBlocks {
    pub columns: Vec<u32>,
    pub blocks: Vec<Vec<u32>>,
}

impl ColumnBlocks {
    /// Splits the part of `iterate` before `0`.
    fn of_iterate(iterate: &[u32]) -> ColumnBlocks {
        let zero = iterate
            .iter()
            .position(|&v| v == 0)
            .expect("primed iterate contains 0");
        let prefix = &iterate[..zero];
        let mut columns = Vec::new();
        let mut blocks = Vec::new();
        let mut start = 0;
        while start < prefix.len() {
            let (offset, &max) = prefix[start..]
                .iter()
                .enumerate()
                .max_by_key(|(_, &v)| v)
                .unwrap();
            blocks.push(prefix[start..start + offset].to_vec());
            columns.push(max);
            start += offset + 1;
        }
        ColumnBlocks { columns, blocks }
    }
}

/// Column and block sequences of the `i`-th pass, `1 <= i <= sort_depth(p)`.
pub fn column_blocks(p: &Permutation, i: usize) -> Result<ColumnBlocks> {
    p.primed_size()?;
    let depth = p.sort_depth();
    if i == 0 || i > depth {
        return Err(Error::OutOfRange {
            what: "pass",
            value: i,
            min: 1,
            max: depth,
        });
    }
    Ok(ColumnBlocks::of_iterate(p.stack_sort_pow(i - 1).entries()))
}

/// Everything recorded while sorting a primed permutation: the iterates,
/// the per-pass decomposition, and for every value its column, position
/// within that column sequence, left neighbour and row.
#[derive(Debug, Clone)]
pub struct SortingTrace {
    /// `s^0(p), ..., s^d(p)` with `d` the sort depth.
    pub iterates: Vec<Permutation>,
    /// Decomposition of pass `i` at index `i - 1`.
    pub passes: Vec<ColumnBlocks>,
    // indexed by value; slot 0 unused
    col: Vec<usize>,
    colpos: Vec<usize>,
    leftof: Vec<Option<u32>>,
    row: Vec<usize>,
}

impl SortingTrace {
    pub fn new(p: &Permutation) -> Result<SortingTrace> {
        let n = p.primed_size()?;
        let iterates = p.iterates();
        let depth = iterates.len() - 1;
        let passes: Vec<ColumnBlocks> = iterates[..depth]
            .iter()
            .map(|it| ColumnBlocks::of_iterate(it.entries()))
            .collect();

        let mut col = vec![0; n + 1];
        let mut colpos = vec![0; n + 1];
        let mut leftof = vec![None; n + 1];
        let mut row = vec![0; n + 1];
        for (pass, cb) in passes.iter().enumerate() {
            for (j, &c) in cb.columns.iter().enumerate() {
                col[c as usize] = pass + 1;
                colpos[c as usize] = j + 1;
            }
            if pass == 0 {
                for (j, &c) in cb.columns.iter().enumerate() {
                    row[c as usize] = j + 1;
                }
                continue;
            }
            // each column value of this pass tops exactly one block of the
            // previous pass
            let prev = &passes[pass - 1];
            let mut top_of_block = BTreeMap::new();
            for (j, block) in prev.blocks.iter().enumerate() {
                if let Some(&m) = block.iter().max() {
                    top_of_block.insert(m, prev.columns[j]);
                }
            }
            for &c in &cb.columns {
                let left = *top_of_block
                    .get(&c)
                    .expect("column value is the maximum of a previous block");
                leftof[c as usize] = Some(left);
                row[c as usize] = row[left as usize];
            }
        }
        Ok(SortingTrace {
            iterates,
            passes,
            col,
            colpos,
            leftof,
            row,
        })
    }

    pub fn n(&self) -> usize {
        self.col.len() - 1
    }

    pub fn depth(&self) -> usize {
        self.passes.len()
    }

    pub fn col(&self, v: u32) -> usize {
        self.col[v as usize]
    }

    pub fn colpos(&self, v: u32) -> usize {
        self.colpos[v as usize]
    }

    pub fn row(&self, v: u32) -> usize {
        self.row[v as usize]
    }

    pub fn leftof(&self, v: u32) -> Option<u32> {
        self.leftof[v as usize]
    }

    /// The column value directly above `v` in its pass, if `v` is not first.
    pub fn upof(&self, v: u32) -> Option<u32> {
        let pos = self.colpos(v);
        (pos > 1).then(|| self.passes[self.col(v) - 1].columns[pos - 2])
    }

    pub fn shape(&self) -> Composition {
        let rows = self.passes.first().map_or(0, |cb| cb.columns.len());
        let mut parts = vec![0; rows];
        for v in 1..=self.n() {
            parts[self.row[v] - 1] += 1;
        }
        Composition::new(parts).expect("every first-pass row holds its column value")
    }

    pub fn tableau(&self) -> StackSortingTableau {
        let cells = (1..=self.n() as u32)
            .map(|v| Cell::new(self.col(v), self.row(v)))
            .collect();
        StackSortingTableau::from_parts_unchecked(self.shape(), cells)
    }
}

/// The tableau of a primed permutation: its shape and cell of every value.
pub fn build_tableau(p: &Permutation) -> Result<StackSortingTableau> {
    Ok(SortingTrace::new(p)?.tableau())
}

/// A bijection between `1..=n` and the cells of a composition diagram.
///
/// Values produced by [`build_tableau`] are always linear extensions of the
/// dominance order; [`StackSortingTableau::new`] accepts any filling that is.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StackSortingTableau {
    shape: Composition,
    // cell of value v at index v - 1
    cells: Vec<Cell>,
    // value at (col, row) at grid[row - 1][col - 1]
    grid: Vec<Vec<u32>>,
}

impl StackSortingTableau {
    /// `cells[v - 1]` is the cell of value `v`. Fails unless this is a
    /// linear extension of the diagram of `shape`.
    pub fn new(shape: Composition, cells: Vec<Cell>) -> Result<Self> {
        if !is_linear_extension(&shape, &cells) {
            return Err(Error::NotLinearExtension);
        }
        Ok(Self::from_parts_unchecked(shape, cells))
    }

    pub(crate) fn from_parts_unchecked(shape: Composition, cells: Vec<Cell>) -> Self {
        let mut grid: Vec<Vec<u32>> = shape.parts().iter().map(|&len| vec![0; len]).collect();
        for (k, c) in cells.iter().enumerate() {
            grid[c.row - 1][c.col - 1] = k as u32 + 1;
        }
        StackSortingTableau { shape, cells, grid }
    }

    pub fn shape(&self) -> &Composition {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    /// Cells indexed by value minus one.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell_of(&self, value: u32) -> Option<Cell> {
        let k = (value as usize).checked_sub(1)?;
        self.cells.get(k).copied()
    }

    pub fn value_at(&self, cell: Cell) -> Option<u32> {
        if !self.shape.contains(cell) {
            return None;
        }
        Some(self.grid[cell.row - 1][cell.col - 1])
    }

    /// Values row by row, top row first (English notation).
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.grid
    }
}

impl fmt::Display for StackSortingTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, row) in self.grid.iter().enumerate() {
            if j > 0 {
                writeln!(f)?;
            }
            crate::perm::write_values(f, row)?;
        }
        Ok(())
    }
}

/// `{"shape": [...], "cells": {"<value>": [col, row], ...}}`
impl Serialize for StackSortingTableau {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Cells<'a>(&'a [Cell]);
        impl Serialize for Cells<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (k, c) in self.0.iter().enumerate() {
                    map.serialize_entry(&(k + 1).to_string(), &[c.col, c.row])?;
                }
                map.end()
            }
        }
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("shape", &self.shape)?;
        map.serialize_entry("cells", &Cells(&self.cells))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for StackSortingTableau {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            shape: Composition,
            cells: BTreeMap<String, [usize; 2]>,
        }
        let raw = Raw::deserialize(d)?;
        let n = raw.cells.len();
        let mut cells = vec![None; n];
        for (key, [col, row]) in raw.cells {
            let v: usize = key
                .parse()
                .map_err(|_| D::Error::custom(format!("bad value key {key:?}")))?;
            if v == 0 || v > n || cells[v - 1].is_some() {
                return Err(D::Error::custom(format!("value {v} out of range 1..={n}")));
            }
            cells[v - 1] = Some(Cell::new(col, row));
        }
        let cells = cells.into_iter().map(Option::unwrap).collect();
        StackSortingTableau::new(raw.shape, cells).map_err(D::Error::custom)
    }
}

/// True iff `cells` (cell of value `v` at index `v - 1`) is a bijection onto
/// the diagram of `shape` in which a dominating cell never holds the smaller
/// value.
pub fn is_linear_extension(shape: &Composition, cells: &[Cell]) -> bool {
    if cells.len() != shape.size() || !cells.iter().all(|&c| shape.contains(c)) {
        return false;
    }
    let mut seen = std::collections::HashSet::with_capacity(cells.len());
    if !cells.iter().all(|c| seen.insert(*c)) {
        return false;
    }
    for (a, &ca) in cells.iter().enumerate() {
        for (b, &cb) in cells.iter().enumerate() {
            if ca.dominates(cb) && a < b {
                return false;
            }
        }
    }
    true
}
