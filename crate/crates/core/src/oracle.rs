//! Brute-force verification by exhaustive enumeration.
//!
//! Everything here iterates over all permutations of a given size, so every
//! entry point takes a guard on `n`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hook::{
    count_linear_extensions, hook_product, linear_extensions, tableau_membership, window,
};
use crate::perm::{is_increasing, is_subsequence, stack_sort_slice, Permutation};
use crate::shape::{Cell, Composition};
use crate::tableau::{is_linear_extension, SortingTrace, StackSortingTableau};

/// Default cap on `n` for exhaustive enumeration.
pub const DEFAULT_ORACLE_GUARD: usize = 9;

/// Failures kept verbatim per property; the rest are only counted.
const MAX_RECORDED_FAILURES: usize = 20;

fn check_guard(n: usize, guard: usize) -> Result<()> {
    if n > guard {
        return Err(Error::GuardExceeded {
            what: "oracle",
            requested: n,
            limit: guard,
        });
    }
    Ok(())
}

/// Advances `v` to the next permutation in lexicographic order; returns
/// `false` (leaving `v` untouched) when `v` is the last one.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|x| *x > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Calls `f` on every permutation of `1..=n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[u32])) {
    let mut sigma: Vec<u32> = (1..=n as u32).collect();
    loop {
        f(&sigma);
        if !next_permutation(&mut sigma) {
            break;
        }
    }
}

/// Calls `f` on every element of S_n' (a permutation of `1..=n` followed by `0`).
pub fn for_each_primed(n: usize, mut f: impl FnMut(&Permutation)) {
    for_each_permutation(n, |sigma| {
        let mut v = sigma.to_vec();
        v.push(0);
        f(&Permutation::from_distinct(v));
    });
}

/// `hist[d]` is the number of elements of S_n' with sort depth `d`.
pub fn primed_depth_histogram(n: usize, guard: usize) -> Result<Vec<u64>> {
    check_guard(n, guard)?;
    let mut hist = vec![0u64; n + 1];
    for_each_primed(n, |p| hist[p.sort_depth()] += 1);
    Ok(hist)
}

/// Number of elements of S_n' with sort depth at most `t`, by direct
/// simulation of every one of them.
pub fn brute_count(n: usize, t: usize, guard: usize) -> Result<u64> {
    Ok(primed_depth_histogram(n, guard)?.iter().take(t + 1).sum())
}

/// One class of S_n' under `p -> T_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub shape: Composition,
    pub tableau: StackSortingTableau,
    pub count: u64,
}

/// Groups S_n' by tableau. Entries are ordered by shape, then by the cells
/// of the tableau.
pub fn tableau_census(n: usize, guard: usize) -> Result<Vec<CensusEntry>> {
    check_guard(n, guard)?;
    let mut classes: BTreeMap<(Composition, Vec<Cell>), (StackSortingTableau, u64)> =
        BTreeMap::new();
    for_each_primed(n, |p| {
        let t = SortingTrace::new(p).expect("primed").tableau();
        let key = (t.shape().clone(), t.cells().to_vec());
        classes.entry(key).or_insert_with(|| (t, 0)).1 += 1;
    });
    Ok(classes
        .into_values()
        .map(|(tableau, count)| CensusEntry {
            shape: tableau.shape().clone(),
            tableau,
            count,
        })
        .collect())
}

/// Per-shape summary of a census.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShapeCensus {
    pub shape: Composition,
    /// Linear extensions of the diagram.
    #[serde(serialize_with = "crate::decimal::serialize")]
    pub extensions: BigUint,
    #[serde(serialize_with = "crate::decimal::serialize")]
    pub hook_product: BigUint,
    /// Permutations with this shape, counted directly.
    pub count: u64,
    /// Distinct tableaux that actually occurred.
    pub tableaux_seen: usize,
}

impl ShapeCensus {
    pub fn consistent(&self) -> bool {
        BigUint::from(self.count) == &self.extensions * &self.hook_product
            && BigUint::from(self.tableaux_seen) == self.extensions
    }
}

/// Census rows for every composition of `n`; a shape realized by no
/// permutation shows up with a zero count.
pub fn shape_census(n: usize, guard: usize, extension_guard: usize) -> Result<Vec<ShapeCensus>> {
    let entries = tableau_census(n, guard)?;
    let mut by_shape: BTreeMap<Composition, (u64, usize)> = BTreeMap::new();
    for e in &entries {
        let slot = by_shape.entry(e.shape.clone()).or_default();
        slot.0 += e.count;
        slot.1 += 1;
    }
    Composition::all_of(n)
        .into_iter()
        .map(|shape| {
            let (count, seen) = by_shape.get(&shape).copied().unwrap_or((0, 0));
            Ok(ShapeCensus {
                extensions: count_linear_extensions(&shape, extension_guard)?,
                hook_product: hook_product(&shape),
                shape,
                count,
                tableaux_seen: seen,
            })
        })
        .collect()
}

/// Outcome of one property over all instances checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub n: usize,
    pub checked: u64,
    /// Total failures, of which at most the first few are kept below.
    pub failed: u64,
    pub failures: Vec<String>,
}

impl PropertyReport {
    pub fn new(property: &str, n: usize) -> Self {
        PropertyReport {
            property: property.to_string(),
            n,
            checked: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(describe());
            }
        }
    }
}

/// Property names in report order.
pub const PRIMED_PROPERTIES: &[&str] = &[
    "column-block-structure",
    "block-advance",
    "columns-partition",
    "columns-subsequence",
    "row-monotone",
    "order-preserving",
    "bijection",
    "width-equals-depth",
    "composition-agreement",
    "window-containment",
    "membership-agreement",
];

pub const UNRESTRICTED_PROPERTIES: &[&str] = &[
    "tail-sorted",
    "drop-last-subsequence",
    "filter-subsequence",
    "reduction",
    "decomposition",
];

struct Reports(BTreeMap<&'static str, PropertyReport>);

impl Reports {
    fn new(names: &[&'static str], n: usize) -> Self {
        Reports(
            names
                .iter()
                .map(|&k| (k, PropertyReport::new(k, n)))
                .collect(),
        )
    }

    fn get(&mut self, name: &'static str) -> &mut PropertyReport {
        self.0.get_mut(name).expect("known property")
    }

    fn into_ordered(mut self, names: &[&'static str]) -> Vec<PropertyReport> {
        names.iter().map(|k| self.0.remove(k).unwrap()).collect()
    }
}

/// Checks every structural property of one primed permutation. When
/// `candidates` is given, `tableau_membership` is compared against the true
/// tableau for each candidate filling; otherwise only against the fillings
/// of the permutation's own shape.
fn check_primed(p: &Permutation, candidates: Option<&[StackSortingTableau]>, r: &mut Reports) {
    let tr = SortingTrace::new(p).expect("primed input");
    let n = tr.n();
    let depth = tr.depth();
    let show = || p.to_string();

    for (idx, cb) in tr.passes.iter().enumerate() {
        let it = tr.iterates[idx].entries();
        let zero = it.iter().position(|&v| v == 0).unwrap();
        let mut rebuilt = Vec::new();
        let mut ok = cb.columns.len() == cb.blocks.len();
        for (c, b) in cb.columns.iter().zip(&cb.blocks) {
            ok &= b.iter().all(|x| x < c);
            rebuilt.extend_from_slice(b);
            rebuilt.push(*c);
        }
        ok &= rebuilt == it[..zero];
        r.get("column-block-structure")
            .record(ok, || format!("{} pass {}", show(), idx + 1));

        let next = tr.iterates[idx + 1].entries();
        let next_zero = next.iter().position(|&v| v == 0).unwrap();
        let advanced: Vec<u32> = cb.blocks.iter().flat_map(|b| stack_sort_slice(b)).collect();
        r.get("block-advance")
            .record(advanced == next[..next_zero], || {
                format!("{} pass {}", show(), idx + 1)
            });

        if idx > 0 {
            let prev = &tr.passes[idx - 1];
            let tops: Vec<u32> = prev
                .blocks
                .iter()
                .filter_map(|b| b.iter().max().copied())
                .collect();
            r.get("columns-subsequence")
                .record(is_subsequence(&cb.columns, &tops), || {
                    format!("{} pass {}", show(), idx + 1)
                });
        }

        let rows: Vec<usize> = cb.columns.iter().map(|&c| tr.row(c)).collect();
        r.get("row-monotone")
            .record(rows.windows(2).all(|w| w[0] < w[1]), || {
                format!("{} pass {}: rows {:?}", show(), idx + 1, rows)
            });
    }

    let mut all_columns: Vec<u32> = tr
        .passes
        .iter()
        .flat_map(|cb| cb.columns.iter().copied())
        .collect();
    all_columns.sort_unstable();
    r.get("columns-partition")
        .record(all_columns == (1..=n as u32).collect::<Vec<_>>(), show);

    let t = tr.tableau();
    let shape = t.shape();
    let cells = t.cells();
    let mut order_ok = true;
    for (a, &ca) in cells.iter().enumerate() {
        for (b, &cb) in cells.iter().enumerate() {
            if ca.dominates(cb) && a < b {
                order_ok = false;
            }
        }
    }
    r.get("order-preserving").record(order_ok, show);

    let mut sorted_cells = cells.to_vec();
    sorted_cells.sort_unstable();
    let mut diagram: Vec<Cell> = shape.cells().collect();
    diagram.sort_unstable();
    r.get("bijection").record(sorted_cells == diagram, show);

    r.get("width-equals-depth")
        .record(shape.width() == depth, || {
            format!("{}: {} vs {}", show(), shape, depth)
        });

    let mut agree = true;
    for v in 1..=n as u32 {
        let c = t.cell_of(v).unwrap();
        agree &= tr.col(v) == c.col && tr.row(v) == c.row;
        agree &= tr.colpos(v) == shape.colpos(c.col, c.row);
        if let Some(l) = tr.leftof(v) {
            agree &= t.cell_of(l) == Some(shape.leftof(c.col, c.row));
        }
        if let Some(u) = tr.upof(v) {
            agree &= t.cell_of(u) == Some(shape.upof(c.col, c.row));
        } else {
            agree &= shape.upof(c.col, c.row).row == 0;
        }
    }
    r.get("composition-agreement").record(agree, show);

    for cell in shape.cells().filter(|c| c.col > 1) {
        let first = window(p, &t, cell, 1).expect("valid window");
        for k in 2..cell.col {
            let later = window(p, &t, cell, k).expect("valid window");
            let contained = later.iter().all(|x| first.contains(x));
            let rest_left = first
                .iter()
                .filter(|x| !later.contains(x))
                .all(|&x| tr.col(x) < k);
            r.get("window-containment")
                .record(contained && rest_left, || {
                    format!("{} cell {} k={}", show(), cell, k)
                });
        }
    }

    let own_shape_candidates;
    let candidates = match candidates {
        Some(c) => c,
        None => {
            own_shape_candidates = linear_extensions(shape, usize::MAX).expect("no guard");
            &own_shape_candidates
        }
    };
    for cand in candidates {
        let expected = *cand == t;
        r.get("membership-agreement")
            .record(tableau_membership(p, cand) == expected, || {
                format!("{} against {:?}", show(), cand.cells())
            });
    }
}

/// Checks the tail, subsequence and reduction properties for one sequence
/// of distinct values.
fn check_unrestricted(p: &Permutation, r: &mut Reports) {
    let show = || p.to_string();
    let Some(last) = p.last() else { return };
    let n = p.len();
    let head = p.without_last();
    let iterates = p.iterates();
    let depth = iterates.len() - 1;

    for k in 0..n {
        let sk = &iterates[k.min(depth)];
        let e = sk.entries();
        let at = sk.index_of(last).unwrap();
        let tail = &e[at + 1..];
        r.get("tail-sorted").record(
            is_increasing(tail) && tail.iter().all(|&x| x > last),
            || format!("{} k={}", show(), k),
        );
        r.get("drop-last-subsequence")
            .record(is_subsequence(head.stack_sort_pow(k).entries(), e), || {
                format!("{} k={}", show(), k)
            });
        for m in p.entries() {
            let filtered = p.filter_ge(*m).stack_sort_pow(k);
            r.get("filter-subsequence")
                .record(is_subsequence(filtered.entries(), e), || {
                    format!("{} m={} k={}", show(), m, k)
                });
        }
    }

    let reduced = head.sort_depth().max(p.filter_ge(last).sort_depth());
    r.get("reduction").record(reduced == depth, show);
    r.get("decomposition")
        .record(p.sort_depth_decomposed() == depth, show);
}

/// Runs every property check exhaustively: the tableau properties over
/// S_n' (with `tableau_membership` compared against the true tableau for
/// every filling of every composition of `n`) and the sorting properties
/// over all permutations of `1..=n`.
pub fn verify_lemmas(n: usize, guard: usize) -> Result<Vec<PropertyReport>> {
    check_guard(n, guard)?;
    let candidates: Vec<StackSortingTableau> = Composition::all_of(n)
        .iter()
        .map(|a| linear_extensions(a, usize::MAX).expect("no guard"))
        .collect::<Vec<_>>()
        .concat();

    let mut primed = Reports::new(PRIMED_PROPERTIES, n);
    for_each_primed(n, |p| check_primed(p, Some(&candidates), &mut primed));

    let mut plain = Reports::new(UNRESTRICTED_PROPERTIES, n);
    for_each_permutation(n, |sigma| {
        check_unrestricted(&Permutation::from_distinct(sigma.to_vec()), &mut plain)
    });

    let mut out = primed.into_ordered(PRIMED_PROPERTIES);
    out.extend(plain.into_ordered(UNRESTRICTED_PROPERTIES));
    Ok(out)
}

/// The same checks for a single sequence. Tableau properties apply only
/// when `p` is primed; membership is then compared over its own shape.
pub fn verify_permutation(p: &Permutation) -> Vec<PropertyReport> {
    let mut out = Vec::new();
    if p.is_primed() {
        let mut primed = Reports::new(PRIMED_PROPERTIES, p.len() - 1);
        check_primed(p, None, &mut primed);
        out.extend(primed.into_ordered(PRIMED_PROPERTIES));
    }
    let mut plain = Reports::new(UNRESTRICTED_PROPERTIES, p.len());
    check_unrestricted(p, &mut plain);
    out.extend(plain.into_ordered(UNRESTRICTED_PROPERTIES));
    out
}

/// Brute-force counts over unrestricted permutations of `1..=n` next to
/// the classical closed forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicCounts {
    pub n: usize,
    pub w1: u64,
    #[serde(serialize_with = "crate::decimal::serialize")]
    pub catalan: BigUint,
    pub w2: u64,
    #[serde(serialize_with = "crate::decimal::serialize")]
    pub zeilberger: BigUint,
}

impl ClassicCounts {
    pub fn consistent(&self) -> bool {
        BigUint::from(self.w1) == self.catalan && BigUint::from(self.w2) == self.zeilberger
    }
}

pub fn classic_counts(n: usize, guard: usize) -> Result<ClassicCounts> {
    check_guard(n, guard)?;
    let (mut w1, mut w2) = (0, 0);
    for_each_permutation(n, |sigma| {
        let d = Permutation::from_distinct(sigma.to_vec()).sort_depth();
        w1 += u64::from(d <= 1);
        w2 += u64::from(d <= 2);
    });
    Ok(ClassicCounts {
        n,
        w1,
        catalan: catalan(n),
        w2,
        zeilberger: zeilberger(n),
    })
}

/// Exact binomial coefficient by the multiplicative formula.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `C(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> BigUint {
    let n = n as u64;
    binomial(2 * n, n) / (n + 1)
}

/// `2 C(3n, n) / ((n + 1)(2n + 1))`.
pub fn zeilberger(n: usize) -> BigUint {
    let n = n as u64;
    binomial(3 * n, n) * 2u32 / ((n + 1) * (2 * n + 1))
}

/// `M_0, ..., M_max` with `M_n = M_(n-1) + sum_(k=0)^(n-2) M_k M_(n-2-k)`.
pub fn motzkin_sequence(max: usize) -> Vec<BigUint> {
    let mut m: Vec<BigUint> = Vec::with_capacity(max + 1);
    for n in 0..=max {
        if n == 0 {
            m.push(BigUint::one());
            continue;
        }
        let mut next = m[n - 1].clone();
        for k in 0..n.saturating_sub(1) {
            next += &m[k] * &m[n - 2 - k];
        }
        m.push(next);
    }
    m
}

pub fn motzkin(n: usize) -> BigUint {
    motzkin_sequence(n).pop().unwrap()
}

/// Whether a census satisfies the per-tableau hook-product count.
pub fn census_entry_consistent(e: &CensusEntry) -> bool {
    is_linear_extension(&e.shape, e.tableau.cells())
        && BigUint::from(e.count) == hook_product(&e.shape)
}
