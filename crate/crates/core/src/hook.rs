//! Hook lengths on composition diagrams and the counts they produce.
//!
//! The hook of `(i, j)` with `i > 1` is the number of cells in columns
//! `< i` strictly below the last row above `j` that reaches column `i - 1`
//! and weakly above `j`. The product of all hooks of a shape is the number
//! of primed permutations realizing any one fixed filling of it.

use num_bigint::BigUint;
use num_traits::One;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::perm::{is_subsequence, Permutation};
use crate::shape::{Cell, Composition};
use crate::tableau::{is_linear_extension, StackSortingTableau};

/// Default cap on the number of cells for linear-extension enumeration.
pub const DEFAULT_EXTENSION_GUARD: usize = 12;

/// `upof` at the composition level; `(i, 0)` when no cell of column `i`
/// lies above row `j`.
pub fn comp_upof(shape: &Composition, i: usize, j: usize) -> Cell {
    shape.upof(i, j)
}

/// Hook length at `(i, j)`. Defined on all of N^2, not just the diagram.
pub fn hook_length(shape: &Composition, i: usize, j: usize) -> u64 {
    if i <= 1 {
        return 1;
    }
    let top = shape.upof(i - 1, j).row;
    let between: usize = (top + 1..j).map(|r| shape.part(r)).sum();
    (between + (i - 1).min(shape.part(j))) as u64
}

/// Hook lengths of every cell of a shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HookTable {
    shape: Composition,
    rows: Vec<Vec<u64>>,
}

impl HookTable {
    pub fn new(shape: &Composition) -> HookTable {
        // prefix[r] = sum of the first r parts
        let mut prefix = vec![0usize; shape.len() + 1];
        for r in 1..=shape.len() {
            prefix[r] = prefix[r - 1] + shape.part(r);
        }
        let rows = (1..=shape.len())
            .map(|j| {
                (1..=shape.part(j))
                    .map(|i| {
                        if i == 1 {
                            return 1;
                        }
                        let top = shape.upof(i - 1, j).row;
                        let between = prefix[j - 1] - prefix[top];
                        (between + (i - 1).min(shape.part(j))) as u64
                    })
                    .collect()
            })
            .collect();
        HookTable {
            shape: shape.clone(),
            rows,
        }
    }

    pub fn shape(&self) -> &Composition {
        &self.shape
    }

    pub fn get(&self, cell: Cell) -> Option<u64> {
        if !self.shape.contains(cell) {
            return None;
        }
        Some(self.rows[cell.row - 1][cell.col - 1])
    }

    /// Hooks row by row, top row first.
    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn product(&self) -> BigUint {
        self.rows
            .iter()
            .flatten()
            .fold(BigUint::one(), |acc, &h| acc * h)
    }
}

pub fn hook_product(shape: &Composition) -> BigUint {
    HookTable::new(shape).product()
}

fn check_guard(shape: &Composition, guard: usize) -> Result<()> {
    if shape.size() > guard {
        return Err(Error::GuardExceeded {
            what: "linear extension",
            requested: shape.size(),
            limit: guard,
        });
    }
    Ok(())
}

/// Lowest row strictly below `row` whose length reaches `col`.
fn next_row_down(shape: &Composition, col: usize, row: usize) -> Option<usize> {
    (row + 1..=shape.len()).find(|&r| shape.part(r) >= col)
}

/// Calls `f` once per linear extension of the diagram, passing the cell of
/// each label (label `v` at index `v - 1`). Labels are assigned upward from
/// `1`, each time to a cell with no unlabelled cell below or right of it.
pub fn for_each_linear_extension<F>(shape: &Composition, guard: usize, mut f: F) -> Result<()>
where
    F: FnMut(&[Cell]),
{
    check_guard(shape, guard)?;
    let below: Vec<Vec<Option<usize>>> = (1..=shape.len())
        .map(|j| {
            (1..=shape.part(j))
                .map(|i| next_row_down(shape, i, j))
                .collect()
        })
        .collect();

    fn rec<F: FnMut(&[Cell])>(
        remaining: &mut [usize],
        below: &[Vec<Option<usize>>],
        labels: &mut Vec<Cell>,
        total: usize,
        f: &mut F,
    ) {
        if labels.len() == total {
            f(labels);
            return;
        }
        for j in 0..remaining.len() {
            let i = remaining[j];
            if i == 0 {
                continue;
            }
            let blocked = below[j][i - 1].is_some_and(|r| remaining[r - 1] >= i);
            if blocked {
                continue;
            }
            remaining[j] -= 1;
            labels.push(Cell::new(i, j + 1));
            rec(remaining, below, labels, total, f);
            labels.pop();
            remaining[j] += 1;
        }
    }

    let mut remaining = shape.parts().to_vec();
    let mut labels = Vec::with_capacity(shape.size());
    rec(&mut remaining, &below, &mut labels, shape.size(), &mut f);
    Ok(())
}

/// Every linear extension of the diagram as a tableau.
pub fn linear_extensions(shape: &Composition, guard: usize) -> Result<Vec<StackSortingTableau>> {
    let mut out = Vec::new();
    for_each_linear_extension(shape, guard, |cells| {
        out.push(StackSortingTableau::from_parts_unchecked(
            shape.clone(),
            cells.to_vec(),
        ))
    })?;
    Ok(out)
}

/// Number of linear extensions, memoized over the unlabelled row prefixes.
pub fn count_linear_extensions(shape: &Composition, guard: usize) -> Result<BigUint> {
    check_guard(shape, guard)?;
    let below: Vec<Vec<Option<usize>>> = (1..=shape.len())
        .map(|j| {
            (1..=shape.part(j))
                .map(|i| next_row_down(shape, i, j))
                .collect()
        })
        .collect();

    fn rec(
        remaining: &mut Vec<usize>,
        below: &[Vec<Option<usize>>],
        memo: &mut FxHashMap<Vec<usize>, BigUint>,
    ) -> BigUint {
        if remaining.iter().all(|&r| r == 0) {
            return BigUint::one();
        }
        if let Some(c) = memo.get(remaining) {
            return c.clone();
        }
        let mut total = BigUint::default();
        for j in 0..remaining.len() {
            let i = remaining[j];
            if i == 0 || below[j][i - 1].is_some_and(|r| remaining[r - 1] >= i) {
                continue;
            }
            remaining[j] -= 1;
            total += rec(remaining, below, memo);
            remaining[j] += 1;
        }
        memo.insert(remaining.clone(), total.clone());
        total
    }

    let mut remaining = shape.parts().to_vec();
    Ok(rec(&mut remaining, &below, &mut FxHashMap::default()))
}

/// Number of primed permutations whose tableau is exactly `t`.
pub fn count_for_tableau(shape: &Composition, t: &StackSortingTableau) -> Result<BigUint> {
    if t.shape() != shape || !is_linear_extension(shape, t.cells()) {
        return Err(Error::NotLinearExtension);
    }
    Ok(hook_product(shape))
}

/// Number of primed permutations whose tableau has shape `shape`.
pub fn count_for_composition(shape: &Composition, guard: usize) -> Result<BigUint> {
    Ok(count_linear_extensions(shape, guard)? * hook_product(shape))
}

/// The segment of `s^(k-1)(p)` running from just after the value at
/// `(k, j')` (or from the start when `j' = 0`) through the value at
/// `(k, j)`, where `j'` is the last row above `j` reaching column `i - 1`.
pub fn window(p: &Permutation, t: &StackSortingTableau, cell: Cell, k: usize) -> Result<Vec<u32>> {
    let shape = t.shape();
    let Cell { col: i, row: j } = cell;
    if !shape.contains(cell) {
        return Err(Error::OutOfRange {
            what: "window row",
            value: j,
            min: 1,
            max: shape.len(),
        });
    }
    if k == 0 || k >= i {
        return Err(Error::OutOfRange {
            what: "window pass",
            value: k,
            min: 1,
            max: i.saturating_sub(1),
        });
    }
    if p.len() != t.size() + 1 {
        return Err(Error::NotPrimed { n: t.size() });
    }
    let top = shape.upof(i - 1, j).row;
    let iterate = p.stack_sort_pow(k - 1);
    let seq = iterate.entries();
    let position = |c: Cell| {
        let v = t.value_at(c).expect("window endpoints lie in the diagram");
        iterate.index_of(v).ok_or(Error::NotPrimed { n: t.size() })
    };
    let end = position(Cell::new(k, j))? + 1;
    let start = if top == 0 {
        0
    } else {
        position(Cell::new(k, top))? + 1
    };
    Ok(seq.get(start..end).map(<[u32]>::to_vec).unwrap_or_default())
}

/// Decides `T = T_p` from `p` alone: the first column of `T` must appear in
/// order in `p`, and every other value must sit inside its first-pass window.
pub fn tableau_membership(p: &Permutation, t: &StackSortingTableau) -> bool {
    if p.len() != t.size() + 1 || !p.is_primed() {
        return false;
    }
    let shape = t.shape();
    let first_column: Vec<u32> = (1..=shape.len())
        .map(|j| t.value_at(Cell::new(1, j)).unwrap())
        .collect();
    if !is_subsequence(&first_column, p.entries()) {
        return false;
    }
    shape.cells().filter(|c| c.col > 1).all(|c| {
        let v = t.value_at(c).unwrap();
        window(p, t, c, 1).is_ok_and(|w| w.contains(&v))
    })
}
