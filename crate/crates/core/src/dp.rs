//! Forward dynamic program counting primed permutations of bounded sort
//! depth.
//!
//! A tableau is grown one row at a time. After `m` cells, a state records
//! the width `w`, the last row length, the hook lengths `h_j` of cells
//! `(j + 1, last row)` and, for every column `j <= w`, the label `p_j` of
//! its lowest cell. Appending a row of length `i` multiplies the running
//! count by the hooks of the new row, and the new labels range over the
//! tuples that keep the filling a linear extension.
//!
//! New labels are enumerated through `r_j = p^i_j - (i - j)`, the number of
//! old labels below the new cell `(j, row)` plus one. The new row is
//! decreasing iff `r` is weakly decreasing, and the cell sits below the old
//! lowest cell of column `j` iff `r_j <= p_j`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hook::hook_length;
use crate::tableau::StackSortingTableau;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DpState {
    /// Cells placed so far.
    pub m: usize,
    /// Longest row so far.
    pub width: usize,
    /// Length of the last row.
    pub last_row: usize,
    /// `hooks[j - 1]` is the hook at `(j + 1, last row)`.
    pub hooks: Vec<u32>,
    /// `bottoms[j - 1]` is the label of the lowest cell of column `j`.
    pub bottoms: Vec<u32>,
}

impl DpState {
    pub fn initial() -> DpState {
        DpState {
            m: 0,
            width: 0,
            last_row: 0,
            hooks: Vec::new(),
            bottoms: Vec::new(),
        }
    }

    /// The state a filling belongs to.
    pub fn of_tableau(t: &StackSortingTableau) -> DpState {
        let shape = t.shape();
        let rows = shape.len();
        let width = shape.width();
        let hooks = (1..=width)
            .map(|j| hook_length(shape, j + 1, rows) as u32)
            .collect();
        let bottoms = (1..=width)
            .map(|j| {
                t.value_at(shape.upof(j, rows + 1))
                    .expect("every column up to the width has a lowest cell")
            })
            .collect();
        DpState {
            m: shape.size(),
            width,
            last_row: shape.part(rows),
            hooks,
            bottoms,
        }
    }

    fn key(&self) -> StateKey {
        let mut k = Vec::with_capacity(2 + 2 * self.width);
        k.push(self.width as u32);
        k.push(self.last_row as u32);
        k.extend_from_slice(&self.hooks);
        k.extend_from_slice(&self.bottoms);
        StateKey(k.into_boxed_slice())
    }

    fn from_key(m: usize, key: &StateKey) -> DpState {
        let k = &key.0;
        let width = k[0] as usize;
        DpState {
            m,
            width,
            last_row: k[1] as usize,
            hooks: k[2..2 + width].to_vec(),
            bottoms: k[2 + width..].to_vec(),
        }
    }
}

/// Layer-local encoding of a state (everything but `m`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct StateKey(Box<[u32]>);

fn check_row_length(i: usize, t: usize) -> Result<()> {
    if i == 0 || i > t {
        return Err(Error::OutOfRange {
            what: "row length",
            value: i,
            min: 1,
            max: t,
        });
    }
    Ok(())
}

/// Hooks of the cells `(j + 1, new row)` after appending a row of length `i`.
pub fn extend_hooks(s: &DpState, i: usize, t: usize) -> Result<Vec<u32>> {
    check_row_length(i, t)?;
    Ok(next_hooks(s, i))
}

fn next_hooks(s: &DpState, i: usize) -> Vec<u32> {
    let w = s.width.max(i);
    (1..=w)
        .map(|j| {
            if j <= s.last_row {
                j.min(i) as u32
            } else if j <= s.width {
                s.hooks[j - 1] + j.min(i) as u32
            } else {
                (s.m + j) as u32
            }
        })
        .collect()
}

/// All label tuples `p^i` (length `max(w, i)`) for a new row of length `i`.
pub fn enumerate_positions(s: &DpState, i: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for_each_position(s, i, |p| out.push(p.to_vec()));
    out
}

fn for_each_position<F: FnMut(&[u32])>(s: &DpState, i: usize, mut f: F) {
    let w = s.width;
    let cap_all = (s.m + 1) as u32;
    let caps: Vec<u32> = (1..=i)
        .map(|j| {
            if j <= w {
                s.bottoms[j - 1].min(cap_all)
            } else {
                cap_all
            }
        })
        .collect();
    let mut r = vec![0u32; i];
    let mut labels = vec![0u32; w.max(i)];

    #[allow(clippy::too_many_arguments)]
    fn rec<F: FnMut(&[u32])>(
        j: usize,
        upper: u32,
        caps: &[u32],
        r: &mut [u32],
        labels: &mut [u32],
        s: &DpState,
        f: &mut F,
    ) {
        let i = r.len();
        if j == i {
            // old lowest cells of untouched columns shift past new labels
            for (label, &old) in labels.iter_mut().zip(&s.bottoms).skip(i) {
                let below = r.iter().filter(|&&rk| rk <= old).count() as u32;
                *label = old + below;
            }
            f(labels);
            return;
        }
        let top = upper.min(caps[j]);
        for v in (1..=top).rev() {
            r[j] = v;
            labels[j] = v + (i - 1 - j) as u32;
            rec(j + 1, v, caps, r, labels, s, f);
        }
    }

    rec(0, u32::MAX, &caps, &mut r, &mut labels, s, &mut f);
}

/// Every successor of `s` with its count multiplier (the product of the
/// non-trivial hooks of the appended row).
pub fn successors(s: &DpState, t: usize) -> Vec<(DpState, BigUint)> {
    let mut out = Vec::new();
    for i in 1..=t {
        let hooks = next_hooks(s, i);
        let multiplier: BigUint = hooks[..i - 1].iter().map(|&h| BigUint::from(h)).product();
        for_each_position(s, i, |p| {
            out.push((
                DpState {
                    m: s.m + i,
                    width: s.width.max(i),
                    last_row: i,
                    hooks: hooks.clone(),
                    bottoms: p.to_vec(),
                },
                multiplier.clone(),
            ))
        });
    }
    out
}

/// Options for a counting sweep.
#[derive(Debug, Clone, Copy, Default)]
pub struct DpOptions {
    /// Fail once any layer holds more states than this.
    pub max_states: Option<usize>,
}

/// All states of one layer with their counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountLayer {
    pub m: usize,
    pub table: BTreeMap<DpState, BigUint>,
}

impl CountLayer {
    pub fn total(&self) -> BigUint {
        self.table.values().sum()
    }
}

/// Exact accumulator. `u128` covers every count up to n = 30, t = 4 and is
/// tried first; `BigUint` takes over on overflow.
trait Tally: Clone + Send + Sync {
    fn nothing() -> Self;
    fn unit() -> Self;
    fn from_hooks(hooks: &[u32]) -> Option<Self>;
    /// `self += a * b`; `None` on overflow.
    fn add_product(&mut self, a: &Self, b: &Self) -> Option<()>;
    fn add(&mut self, other: &Self) -> Option<()>;
    fn to_big(&self) -> BigUint;
}

impl Tally for u128 {
    fn nothing() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn from_hooks(hooks: &[u32]) -> Option<Self> {
        hooks
            .iter()
            .try_fold(1u128, |acc, &h| acc.checked_mul(h as u128))
    }
    fn add_product(&mut self, a: &Self, b: &Self) -> Option<()> {
        *self = self.checked_add(a.checked_mul(*b)?)?;
        Some(())
    }
    fn add(&mut self, other: &Self) -> Option<()> {
        *self = self.checked_add(*other)?;
        Some(())
    }
    fn to_big(&self) -> BigUint {
        BigUint::from(*self)
    }
}

impl Tally for BigUint {
    fn nothing() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn from_hooks(hooks: &[u32]) -> Option<Self> {
        Some(hooks.iter().map(|&h| BigUint::from(h)).product())
    }
    fn add_product(&mut self, a: &Self, b: &Self) -> Option<()> {
        *self += a * b;
        Some(())
    }
    fn add(&mut self, other: &Self) -> Option<()> {
        *self += other;
        Some(())
    }
    fn to_big(&self) -> BigUint {
        self.clone()
    }
}

type Layer<T> = FxHashMap<StateKey, T>;

enum SweepError {
    Overflow,
    Guard(Error),
}

/// Adds every successor of `layer` (at size `m`) into `pending[i - 1]`
/// (size `m + i`), skipping sizes beyond `n_max`.
fn expand<T: Tally>(m: usize, layer: Layer<T>, t: usize, n_max: usize) -> Option<Vec<Layer<T>>> {
    let rows = t.min(n_max - m);
    layer
        .into_par_iter()
        .try_fold(
            || vec![Layer::<T>::default(); rows],
            |mut acc, (key, count)| {
                let s = DpState::from_key(m, &key);
                for i in 1..=rows {
                    let hooks = next_hooks(&s, i);
                    let factor = T::from_hooks(&hooks[..i - 1])?;
                    let mut scaled = T::nothing();
                    scaled.add_product(&count, &factor)?;
                    let width = s.width.max(i) as u32;
                    let target = &mut acc[i - 1];
                    let mut overflow = false;
                    for_each_position(&s, i, |p| {
                        let mut k = Vec::with_capacity(2 + 2 * width as usize);
                        k.push(width);
                        k.push(i as u32);
                        k.extend_from_slice(&hooks);
                        k.extend_from_slice(p);
                        let slot = target
                            .entry(StateKey(k.into_boxed_slice()))
                            .or_insert_with(T::nothing);
                        if slot.add(&scaled).is_none() {
                            overflow = true;
                        }
                    });
                    if overflow {
                        return None;
                    }
                }
                Some(acc)
            },
        )
        .try_reduce(
            || vec![Layer::<T>::default(); rows],
            |mut a, b| {
                for (into, from) in a.iter_mut().zip(b) {
                    let (mut big, small) = if into.len() >= from.len() {
                        (std::mem::take(into), from)
                    } else {
                        (from, std::mem::take(into))
                    };
                    for (k, v) in small {
                        big.entry(k).or_insert_with(T::nothing).add(&v)?;
                    }
                    *into = big;
                }
                Some(a)
            },
        )
}

/// Runs the sweep up to `n_max`, handing each finished layer to `visit`.
fn sweep<T: Tally>(
    n_max: usize,
    t: usize,
    opts: DpOptions,
    mut visit: impl FnMut(usize, &Layer<T>),
) -> std::result::Result<(), SweepError> {
    let mut pending: Vec<Layer<T>> = (0..=n_max).map(|_| Layer::default()).collect();
    pending[0].insert(DpState::initial().key(), T::unit());
    for m in 0..=n_max {
        let layer = std::mem::take(&mut pending[m]);
        if let Some(limit) = opts.max_states {
            if layer.len() > limit {
                return Err(SweepError::Guard(Error::GuardExceeded {
                    what: "dp states per layer",
                    requested: layer.len(),
                    limit,
                }));
            }
        }
        visit(m, &layer);
        if m == n_max || t == 0 {
            continue;
        }
        let produced = expand(m, layer, t, n_max).ok_or(SweepError::Overflow)?;
        for (k, next) in produced.into_iter().enumerate() {
            let target = &mut pending[m + k + 1];
            if target.is_empty() {
                *target = next;
                continue;
            }
            for (key, v) in next {
                target
                    .entry(key)
                    .or_insert_with(T::nothing)
                    .add(&v)
                    .ok_or(SweepError::Overflow)?;
            }
        }
    }
    Ok(())
}

fn layer_total<T: Tally>(layer: &Layer<T>) -> Option<T> {
    let mut total = T::nothing();
    for v in layer.values() {
        total.add(v)?;
    }
    Some(total)
}

fn totals<T: Tally>(
    n_max: usize,
    t: usize,
    opts: DpOptions,
) -> std::result::Result<Vec<BigUint>, SweepError> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut overflow = false;
    sweep::<T>(n_max, t, opts, |_, layer| match layer_total(layer) {
        Some(total) => out.push(total.to_big()),
        None => overflow = true,
    })?;
    if overflow {
        return Err(SweepError::Overflow);
    }
    Ok(out)
}

/// `|W'_t(n)|` for every `n` in `0..=n_max`, from a single sweep.
pub fn count_all(n_max: usize, t: usize, opts: DpOptions) -> Result<Vec<BigUint>> {
    count_all_via::<u128>(n_max, t, opts)
}

/// Sweeps with the fixed-width tally `T`, redoing the sweep with `BigUint`
/// if `T` overflows.
fn count_all_via<T: Tally>(n_max: usize, t: usize, opts: DpOptions) -> Result<Vec<BigUint>> {
    let t = t.min(n_max);
    match totals::<T>(n_max, t, opts) {
        Ok(v) => Ok(v),
        Err(SweepError::Guard(e)) => Err(e),
        Err(SweepError::Overflow) => match totals::<BigUint>(n_max, t, opts) {
            Ok(v) => Ok(v),
            Err(SweepError::Guard(e)) => Err(e),
            Err(SweepError::Overflow) => unreachable!("BigUint does not overflow"),
        },
    }
}

/// `(n, |W'_t(n)|)` for `n = 1..=n_max`.
pub fn count_table(n_max: usize, t: usize, opts: DpOptions) -> Result<Vec<(usize, BigUint)>> {
    Ok(count_all(n_max, t, opts)?
        .into_iter()
        .enumerate()
        .skip(1)
        .collect())
}

/// Number of primed permutations of size `n` with sort depth at most `t`.
pub fn count_sortable(n: usize, t: usize) -> BigUint {
    count_sortable_with(n, t, DpOptions::default()).expect("no guard configured")
}

pub fn count_sortable_with(n: usize, t: usize, opts: DpOptions) -> Result<BigUint> {
    Ok(count_all(n, t, opts)?
        .pop()
        .expect("layer n is always visited"))
}

/// Every layer `0..=n_max` with its states. Meant for small sizes.
pub fn layers(n_max: usize, t: usize) -> Vec<CountLayer> {
    let t = t.min(n_max);
    let mut out = Vec::new();
    let done = sweep::<BigUint>(n_max, t, DpOptions::default(), |m, layer| {
        out.push(CountLayer {
            m,
            table: layer
                .iter()
                .map(|(k, v)| (DpState::from_key(m, k), v.clone()))
                .collect(),
        })
    });
    assert!(done.is_ok(), "unguarded BigUint sweep cannot fail");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hook::{count_for_composition, count_linear_extensions};
    use crate::shape::{Cell, Composition};
    use crate::tableau::{build_tableau, is_linear_extension};
    use crate::Permutation;
    use num_traits::ToPrimitive;

    fn example_state() -> DpState {
        DpState {
            m: 6,
            width: 3,
            last_row: 1,
            hooks: vec![1, 1, 3],
            bottoms: vec![2, 3, 1],
        }
    }

    /// The three membership conditions for `P^i`, checked literally over
    /// every tuple in `[m + i]^(max(w, i))`.
    fn positions_by_definition(s: &DpState, i: usize) -> Vec<Vec<u32>> {
        let w = s.width;
        let len = w.max(i);
        let top = (s.m + i) as u32;
        let mut out = Vec::new();
        let mut tuple = vec![1u32; len];
        loop {
            let count = |pj: u32| {
                (1..=i)
                    .filter(|&k| tuple[k - 1] <= pj + (i - k) as u32)
                    .count() as u32
            };
            let decreasing = tuple[..i].windows(2).all(|x| x[0] > x[1]);
            let below =
                (1..=w.min(i)).all(|j| tuple[j - 1] < s.bottoms[j - 1] + count(s.bottoms[j - 1]));
            let shifted =
                (i + 1..=w).all(|j| tuple[j - 1] == s.bottoms[j - 1] + count(s.bottoms[j - 1]));
            if decreasing && below && shifted {
                out.push(tuple.clone());
            }
            // odometer
            let mut k = 0;
            loop {
                if k == len {
                    return out;
                }
                if tuple[k] < top {
                    tuple[k] += 1;
                    break;
                }
                tuple[k] = 1;
                k += 1;
            }
        }
    }

    #[test]
    fn hooks_of_example_state() {
        let s = example_state();
        assert_eq!(extend_hooks(&s, 4, 4).unwrap(), vec![1, 3, 6, 10]);
        assert_eq!(
            extend_hooks(&DpState::initial(), 3, 4).unwrap(),
            vec![1, 2, 3]
        );
        let full = DpState {
            m: 5,
            width: 3,
            last_row: 3,
            hooks: vec![1, 2, 3],
            bottoms: vec![3, 2, 1],
        };
        assert_eq!(extend_hooks(&full, 3, 3).unwrap(), vec![1, 2, 3]);
        assert!(extend_hooks(&s, 0, 4).is_err());
        assert!(extend_hooks(&s, 5, 4).is_err());
    }

    #[test]
    fn positions_of_example_state() {
        let s = example_state();
        let p4 = enumerate_positions(&s, 4);
        assert!(p4.contains(&vec![5, 4, 2, 1]));
        for i in 1..=4 {
            let mut fast = enumerate_positions(&s, i);
            let mut slow = positions_by_definition(&s, i);
            fast.sort();
            slow.sort();
            assert_eq!(fast, slow, "i = {i}");
        }
    }

    #[test]
    fn positions_from_initial_state() {
        for i in 1..=5 {
            let expected: Vec<u32> = (1..=i as u32).rev().collect();
            assert_eq!(enumerate_positions(&DpState::initial(), i), vec![expected]);
        }
    }

    #[test]
    fn single_cell_rows() {
        let s = example_state();
        for p in enumerate_positions(&s, 1) {
            assert!(p[0] <= s.bottoms[0]);
        }
        assert_eq!(enumerate_positions(&s, 1).len(), s.bottoms[0] as usize);
    }

    #[test]
    fn positions_agree_with_definition_on_reachable_states() {
        for layer in layers(6, 3) {
            for s in layer.table.keys() {
                for i in 1..=3 {
                    let mut fast = enumerate_positions(s, i);
                    let mut slow = positions_by_definition(s, i);
                    fast.sort();
                    slow.sort();
                    assert_eq!(fast, slow, "{s:?}, i = {i}");
                }
            }
        }
    }

    #[test]
    fn successor_multipliers() {
        for (i, (s, mult)) in successors(&DpState::initial(), 4).into_iter().enumerate() {
            let i = i + 1;
            assert_eq!(s.m, i);
            assert_eq!(s.width, i);
            assert_eq!(s.last_row, i);
            assert_eq!(s.hooks, (1..=i as u32).collect::<Vec<_>>());
            assert_eq!(s.bottoms, (1..=i as u32).rev().collect::<Vec<_>>());
            let fact: BigUint = (1..i as u32).map(BigUint::from).product();
            assert_eq!(mult, fact);
        }
        let s = example_state();
        let succ = successors(&s, 4);
        let target = succ
            .iter()
            .find(|(x, _)| x.last_row == 4 && x.bottoms == vec![5, 4, 2, 1])
            .unwrap();
        assert_eq!(target.1, BigUint::from(18u32));
        assert_eq!(target.0.width, 4);
        assert_eq!(target.0.hooks, vec![1, 3, 6, 10]);
        assert!(succ
            .iter()
            .filter(|(x, _)| x.last_row == 1)
            .all(|(_, m)| m.is_one()));
    }

    #[test]
    fn appendix_spot_values() {
        assert_eq!(count_sortable(5, 2), BigUint::from(21u32));
        assert_eq!(count_sortable(9, 3), BigUint::from(13337u32));
        for t in 1..=6 {
            assert_eq!(count_sortable(1, t), BigUint::one());
        }
        assert_eq!(count_sortable(0, 0), BigUint::one());
        assert_eq!(count_sortable(0, 3), BigUint::one());
        assert_eq!(count_sortable(4, 0), BigUint::zero());
    }

    #[test]
    fn short_tables() {
        let vals = |n, t| -> Vec<u64> {
            count_table(n, t, DpOptions::default())
                .unwrap()
                .iter()
                .map(|(_, c)| c.to_u64().unwrap())
                .collect()
        };
        assert_eq!(vals(10, 2), vec![1, 2, 4, 9, 21, 51, 127, 323, 835, 2188]);
        assert_eq!(vals(7, 3), vec![1, 2, 6, 18, 60, 218, 826]);
        assert_eq!(vals(5, 4), vec![1, 2, 6, 24, 96]);
    }

    #[test]
    fn factorial_ceiling_and_monotonicity() {
        let mut fact = BigUint::one();
        for n in 1..=8usize {
            fact *= n;
            let mut prev = BigUint::zero();
            for t in 0..=n + 1 {
                let c = count_sortable(n, t);
                assert!(c >= prev && c <= fact);
                prev = c;
            }
            assert_eq!(count_sortable(n, n), fact);
        }
    }

    #[test]
    fn bigint_fallback_agrees() {
        let a = totals::<u128>(12, 3, DpOptions::default()).ok().unwrap();
        let b = totals::<BigUint>(12, 3, DpOptions::default()).ok().unwrap();
        assert_eq!(a, b);
        let mut acc: u128 = u128::MAX;
        assert!(acc.add(&1).is_none());
        assert!(<u128 as Tally>::from_hooks(&[u32::MAX; 5]).is_none());
    }

    impl Tally for u16 {
        fn nothing() -> Self {
            0
        }
        fn unit() -> Self {
            1
        }
        fn from_hooks(hooks: &[u32]) -> Option<Self> {
            hooks
                .iter()
                .try_fold(1u16, |acc, &h| acc.checked_mul(u16::try_from(h).ok()?))
        }
        fn add_product(&mut self, a: &Self, b: &Self) -> Option<()> {
            *self = self.checked_add(a.checked_mul(*b)?)?;
            Some(())
        }
        fn add(&mut self, other: &Self) -> Option<()> {
            *self = self.checked_add(*other)?;
            Some(())
        }
        fn to_big(&self) -> BigUint {
            BigUint::from(*self)
        }
    }

    #[test]
    fn overflowing_sweep_falls_back_to_bigint() {
        // 9! does not fit in u16
        assert!(matches!(
            totals::<u16>(9, 9, DpOptions::default()),
            Err(SweepError::Overflow)
        ));
        let via_u16 = count_all_via::<u16>(9, 9, DpOptions::default()).unwrap();
        let via_u128 = count_all(9, 9, DpOptions::default()).unwrap();
        assert_eq!(via_u16, via_u128);
        assert_eq!(via_u16[9], BigUint::from(362880u32));
    }

    #[test]
    fn state_guard() {
        let opts = DpOptions {
            max_states: Some(3),
        };
        assert!(matches!(
            count_sortable_with(8, 3, opts),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn layer_sums_match_composition_counts() {
        for n in 1..=7 {
            for t in 1..=n {
                let final_layer = layers(n, t).pop().unwrap();
                let expected: BigUint = Composition::all_of(n)
                    .iter()
                    .filter(|a| a.width() <= t)
                    .map(|a| count_for_composition(a, 12).unwrap())
                    .sum();
                assert_eq!(final_layer.total(), expected, "n = {n}, t = {t}");
            }
        }
    }

    #[test]
    fn state_counts_match_permutation_census() {
        // every state's count is the number of primed permutations whose
        // tableau falls into that state
        let n = 7;
        let t = 3;
        let mut census: BTreeMap<DpState, BigUint> = BTreeMap::new();
        let mut sigma: Vec<u32> = (1..=n as u32).collect();
        loop {
            let p = Permutation::primed(&sigma).unwrap();
            let tab = build_tableau(&p).unwrap();
            if tab.shape().width() <= t {
                *census.entry(DpState::of_tableau(&tab)).or_default() += 1u32;
            }
            if !next_permutation(&mut sigma) {
                break;
            }
        }
        let last = layers(n, t).pop().unwrap();
        assert_eq!(last.table, census);
    }

    fn next_permutation(v: &mut [u32]) -> bool {
        let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
            return false;
        };
        let j = v.iter().rposition(|&x| x > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
        true
    }

    /// Follows every successor chain while carrying the actual filling.
    #[test]
    fn chains_build_linear_extensions() {
        fn walk(
            state: &DpState,
            shape: &Composition,
            cells: &[Cell],
            n: usize,
            t: usize,
            leaves: &mut BTreeMap<Composition, u64>,
        ) {
            if state.m == n {
                *leaves.entry(shape.clone()).or_default() += 1;
                return;
            }
            for i in 1..=t.min(n - state.m) {
                for labels in enumerate_positions(state, i) {
                    let row = shape.len() + 1;
                    let new_shape = shape.with_row(i).unwrap();
                    let mut r: Vec<u32> = (0..i).map(|j| labels[j] - (i - 1 - j) as u32).collect();
                    r.sort_unstable();
                    let mut next = vec![Cell::new(0, 0); state.m + i];
                    for (old, &c) in cells.iter().enumerate() {
                        let old = old as u32 + 1;
                        let shift = r.iter().filter(|&&x| x <= old).count() as u32;
                        next[(old + shift - 1) as usize] = c;
                    }
                    for j in 0..i {
                        next[labels[j] as usize - 1] = Cell::new(j + 1, row);
                    }
                    assert!(
                        is_linear_extension(&new_shape, &next),
                        "{new_shape}: {next:?}"
                    );
                    let tab = StackSortingTableau::new(new_shape.clone(), next.clone()).unwrap();
                    let hooks = next_hooks(state, i);
                    let expected = DpState {
                        m: state.m + i,
                        width: state.width.max(i),
                        last_row: i,
                        hooks,
                        bottoms: labels.clone(),
                    };
                    assert_eq!(DpState::of_tableau(&tab), expected);
                    walk(&expected, &new_shape, &next, n, t, leaves);
                }
            }
        }
        for n in 1..=6 {
            for t in 1..=n {
                let mut leaves = BTreeMap::new();
                walk(
                    &DpState::initial(),
                    &Composition::empty(),
                    &[],
                    n,
                    t,
                    &mut leaves,
                );
                for a in Composition::all_of(n)
                    .into_iter()
                    .filter(|a| a.width() <= t)
                {
                    let expected = count_linear_extensions(&a, 12).unwrap();
                    let got = leaves.get(&a).copied().unwrap_or(0);
                    assert_eq!(BigUint::from(got), expected, "{a}");
                }
                assert!(leaves.keys().all(|a| a.width() <= t));
            }
        }
    }
}
