//! Sequences of distinct non-negative integers and West's stack-sorting map.
//!
//! Positions are reported 1-based wherever they leave this module
//! (`prefix_filter` takes a 1-based index); internally everything is a
//! plain slice index.

use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashSet;

use crate::error::{Error, Result};

/// A finite sequence of pairwise distinct non-negative integers.
///
/// Values need not be contiguous: filtered prefixes such as `[9, 10, 5]`
/// are first-class. A *primed* permutation of size `n` holds exactly the
/// values `0..=n` and ends in `0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let mut seen = FxHashSet::default();
        for &v in &entries {
            if !seen.insert(v) {
                return Err(Error::DuplicateEntry(v));
            }
        }
        Ok(Permutation(entries))
    }

    /// Appends `0` to a permutation of `1..=n`, producing an element of S_n'.
    pub fn primed(sigma: &[u32]) -> Result<Self> {
        let mut entries = sigma.to_vec();
        entries.push(0);
        let p = Permutation::new(entries)?;
        if !p.is_primed() {
            return Err(Error::NotPrimed { n: sigma.len() });
        }
        Ok(p)
    }

    /// Wraps entries already known to be distinct.
    pub(crate) fn from_distinct(entries: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// Slice index of `value`, if present.
    pub fn index_of(&self, value: u32) -> Option<usize> {
        self.0.iter().position(|&v| v == value)
    }

    /// True iff the entries are exactly `0..=n` and the last one is `0`.
    pub fn is_primed(&self) -> bool {
        let Some(&last) = self.0.last() else {
            return false;
        };
        if last != 0 {
            return false;
        }
        let n = self.0.len() - 1;
        let mut seen = vec![false; n + 1];
        for &v in &self.0 {
            let v = v as usize;
            if v > n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// Checks `is_primed` and returns `n` (one less than the length).
    pub fn primed_size(&self) -> Result<usize> {
        if self.is_primed() {
            Ok(self.0.len() - 1)
        } else {
            Err(Error::NotPrimed {
                n: self.0.len().saturating_sub(1),
            })
        }
    }

    /// One pass of the stack-sorting map.
    pub fn stack_sort(&self) -> Permutation {
        Permutation(stack_sort_slice(&self.0))
    }

    pub fn is_sorted(&self) -> bool {
        is_increasing(&self.0)
    }

    /// Least `k` such that `s^k` of this sequence is increasing.
    pub fn sort_depth(&self) -> usize {
        let mut current = self.0.clone();
        let mut depth = 0;
        while !is_increasing(&current) {
            current = stack_sort_slice(&current);
            depth += 1;
        }
        depth
    }

    /// `s^0, s^1, ...` up to and including the first sorted iterate.
    pub fn iterates(&self) -> Vec<Permutation> {
        let mut out = vec![self.clone()];
        while !out.last().unwrap().is_sorted() {
            let next = out.last().unwrap().stack_sort();
            out.push(next);
        }
        out
    }

    /// `s^k` of this sequence.
    pub fn stack_sort_pow(&self, k: usize) -> Permutation {
        let mut current = self.0.clone();
        for _ in 0..k {
            if is_increasing(&current) {
                break;
            }
            current = stack_sort_slice(&current);
        }
        Permutation(current)
    }

    /// Replaces the `r`-th smallest entry by `r - 1`.
    pub fn standardize(&self) -> Permutation {
        let mut order: Vec<usize> = (0..self.0.len()).collect();
        order.sort_unstable_by_key(|&i| self.0[i]);
        let mut out = vec![0; self.0.len()];
        for (rank, &i) in order.iter().enumerate() {
            out[i] = rank as u32;
        }
        Permutation(out)
    }

    /// Subsequence of entries `>= m`.
    pub fn filter_ge(&self, m: u32) -> Permutation {
        Permutation(self.0.iter().copied().filter(|&v| v >= m).collect())
    }

    /// The first `i` entries with everything below the `i`-th entry removed
    /// (`i` is 1-based). The result ends in its own minimum.
    pub fn prefix_filter(&self, i: usize) -> Result<Permutation> {
        if i == 0 || i > self.0.len() {
            return Err(Error::OutOfRange {
                what: "prefix index",
                value: i,
                min: 1,
                max: self.0.len(),
            });
        }
        let pivot = self.0[i - 1];
        Ok(Permutation(
            self.0[..i]
                .iter()
                .copied()
                .filter(|&v| v >= pivot)
                .collect(),
        ))
    }

    /// Sort depth computed as the maximum over all filtered prefixes.
    pub fn sort_depth_decomposed(&self) -> usize {
        (1..=self.0.len())
            .map(|i| self.prefix_filter(i).unwrap().sort_depth())
            .max()
            .unwrap_or(0)
    }

    pub fn without_last(&self) -> Permutation {
        let mut v = self.0.clone();
        v.pop();
        Permutation(v)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_values(f, &self.0)
    }
}

pub(crate) fn write_values(f: &mut impl fmt::Write, values: &[u32]) -> fmt::Result {
    for (k, v) in values.iter().enumerate() {
        if k > 0 {
            f.write_char(' ')?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// Whitespace- or comma-separated decimal integers.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|tok| !tok.is_empty())
            .map(|tok| {
                tok.parse::<u32>().map_err(|e| Error::Parse {
                    input: s.to_string(),
                    reason: format!("{tok:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(entries)
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(entries: Vec<u32>) -> Result<Self> {
        Permutation::new(entries)
    }
}

/// Push while the stack top exceeds the incoming entry, otherwise pop.
pub fn stack_sort_slice(input: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(input.len());
    let mut stack: Vec<u32> = Vec::with_capacity(input.len());
    for &x in input {
        while let Some(&top) = stack.last() {
            if top > x {
                break;
            }
            out.push(top);
            stack.pop();
        }
        stack.push(x);
    }
    while let Some(top) = stack.pop() {
        out.push(top);
    }
    out
}

pub fn is_increasing(values: &[u32]) -> bool {
    values.windows(2).all(|w| w[0] < w[1])
}

/// True iff `needle` occurs in `haystack` as a (not necessarily contiguous)
/// subsequence.
pub fn is_subsequence(needle: &[u32], haystack: &[u32]) -> bool {
    let mut it = haystack.iter();
    needle.iter().all(|x| it.any(|y| y == x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(v: &[u32]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    /// s(L n R) = s(L) s(R) n, applied literally.
    fn recursive_sort(x: &[u32]) -> Vec<u32> {
        let Some((at, &max)) = x.iter().enumerate().max_by_key(|(_, &v)| v) else {
            return Vec::new();
        };
        let mut out = recursive_sort(&x[..at]);
        out.extend(recursive_sort(&x[at + 1..]));
        out.push(max);
        out
    }

    #[test]
    fn stack_sort_examples() {
        assert_eq!(perm(&[1, 3, 2, 4]).stack_sort(), perm(&[1, 2, 3, 4]));
        assert_eq!(perm(&[0, 1, 2, 3]).stack_sort(), perm(&[0, 1, 2, 3]));
        assert_eq!(
            perm(&[9, 3, 10, 7, 8, 2, 6, 1, 4, 5, 0]).stack_sort(),
            perm(&[3, 9, 7, 2, 1, 4, 0, 5, 6, 8, 10])
        );
    }

    #[test]
    fn duplicates_rejected() {
        assert_eq!(
            Permutation::new(vec![1, 2, 1]),
            Err(Error::DuplicateEntry(1))
        );
        assert!("3 1 3".parse::<Permutation>().is_err());
    }

    #[test]
    fn is_sorted_examples() {
        assert!(perm(&[0, 1, 2]).is_sorted());
        assert!(!perm(&[1, 0]).is_sorted());
        assert!(perm(&[]).is_sorted());
    }

    #[test]
    fn sort_depth_examples() {
        assert_eq!(perm(&[9, 3, 10, 7, 8, 2, 6, 1, 4, 5, 0]).sort_depth(), 4);
        assert_eq!(perm(&[0, 1, 2]).sort_depth(), 0);
        // s(231) = 213, s(213) = 123
        assert_eq!(perm(&[2, 3, 1]).stack_sort(), perm(&[2, 1, 3]));
        assert_eq!(perm(&[2, 3, 1]).sort_depth(), 2);
        assert_eq!(perm(&[]).sort_depth(), 0);
        assert_eq!(perm(&[7]).sort_depth(), 0);
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(perm(&[9, 5, 7]).standardize(), perm(&[2, 0, 1]));
        assert_eq!(perm(&[0, 1, 2]).standardize(), perm(&[0, 1, 2]));
        assert_eq!(perm(&[2, 1, 3]).standardize(), perm(&[1, 0, 2]));
    }

    #[test]
    fn filter_ge_examples() {
        let p = perm(&[2, 1, 3]);
        assert_eq!(p.filter_ge(2), perm(&[2, 3]));
        assert_eq!(p.filter_ge(0), p);
        assert_eq!(p.filter_ge(4), perm(&[]));
    }

    #[test]
    fn prefix_filter_examples() {
        let p = perm(&[2, 1, 3]);
        assert_eq!(p.prefix_filter(1).unwrap(), perm(&[2]));
        assert_eq!(p.prefix_filter(2).unwrap(), perm(&[2, 1]));
        assert_eq!(p.prefix_filter(3).unwrap(), perm(&[3]));
        assert!(matches!(p.prefix_filter(0), Err(Error::OutOfRange { .. })));
        assert!(matches!(p.prefix_filter(4), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn decomposed_depth_examples() {
        let p = perm(&[2, 1, 3]);
        assert_eq!(p.sort_depth(), 1);
        assert_eq!(p.sort_depth_decomposed(), 1);
        assert_eq!(perm(&[0, 1, 2, 5]).sort_depth_decomposed(), 0);
        let ex = perm(&[9, 3, 10, 7, 8, 2, 6, 1, 4, 5, 0]);
        assert_eq!(ex.prefix_filter(11).unwrap(), ex);
        assert_eq!(ex.sort_depth_decomposed(), 4);
    }

    #[test]
    fn parse_formats() {
        let a: Permutation = "9 3 10 7 8 2 6 1 4 5 0".parse().unwrap();
        let b: Permutation = "9,3,10,7,8,2,6,1,4,5,0".parse().unwrap();
        let c: Permutation = " 9, 3 ,10\t7 8 2 6 1 4 5 0\n".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert!(a.is_primed());
        assert_eq!(a.to_string(), "9 3 10 7 8 2 6 1 4 5 0");
        assert!(matches!(
            "1 x 2".parse::<Permutation>(),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            "-1 0".parse::<Permutation>(),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn primed_detection() {
        assert!(perm(&[0]).is_primed());
        assert!(perm(&[2, 1, 0]).is_primed());
        assert!(!perm(&[2, 0, 1]).is_primed());
        assert!(!perm(&[3, 1, 0]).is_primed());
        assert!(!perm(&[]).is_primed());
        assert_eq!(Permutation::primed(&[2, 1]).unwrap(), perm(&[2, 1, 0]));
        assert!(Permutation::primed(&[3, 1]).is_err());
    }

    #[test]
    fn subsequence_helper() {
        assert!(is_subsequence(&[1, 3], &[1, 2, 3]));
        assert!(!is_subsequence(&[3, 1], &[1, 2, 3]));
        assert!(is_subsequence(&[], &[]));
    }

    fn distinct_seq() -> impl Strategy<Value = Vec<u32>> {
        prop::collection::hash_set(0u32..40, 0..12).prop_flat_map(|set| {
            let v: Vec<u32> = set.into_iter().collect();
            Just(v).prop_shuffle()
        })
    }

    proptest! {
        #[test]
        fn sort_preserves_multiset(v in distinct_seq()) {
            let p = Permutation::new(v.clone()).unwrap();
            let mut a = p.stack_sort().into_entries();
            let mut b = v;
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn matches_recursive_identity(v in distinct_seq()) {
            let p = Permutation::new(v.clone()).unwrap();
            prop_assert_eq!(p.stack_sort().into_entries(), recursive_sort(&v));
        }

        #[test]
        fn depth_bounded_by_length(v in distinct_seq()) {
            let p = Permutation::new(v).unwrap();
            if !p.is_empty() {
                prop_assert!(p.sort_depth() < p.len().max(1));
                prop_assert!(p.stack_sort_pow(p.len() - 1).is_sorted());
            }
        }

        #[test]
        fn standardization_invariance(v in distinct_seq()) {
            let p = Permutation::new(v).unwrap();
            prop_assert_eq!(p.standardize().stack_sort(), p.stack_sort().standardize());
            prop_assert_eq!(p.standardize().sort_depth(), p.sort_depth());
        }

        #[test]
        fn reduction_and_decomposition(v in distinct_seq()) {
            let p = Permutation::new(v).unwrap();
            if let Some(last) = p.last() {
                let reduced = p.without_last().sort_depth().max(p.filter_ge(last).sort_depth());
                prop_assert_eq!(p.sort_depth(), reduced);
            }
            prop_assert_eq!(p.sort_depth_decomposed(), p.sort_depth());
        }
    }
}
