//! The published tables beyond the sizes the acceptance suite requires.

use stacksort::{count_table, BigUint, DpOptions};

fn column(t: usize) -> Vec<BigUint> {
    include_str!("data/appendix.tsv")
        .lines()
        .skip(1)
        .map(|line| line.split('\t').nth(t - 1).unwrap().parse().unwrap())
        .collect()
}

fn assert_prefix(t: usize, n_max: usize) {
    let want = column(t);
    for (n, got) in count_table(n_max, t, DpOptions::default()).unwrap() {
        assert_eq!(got, want[n - 1], "t={t} n={n}");
    }
}

#[test]
fn t2_full_table() {
    assert_prefix(2, 30);
}

#[test]
fn t3_full_table() {
    assert_prefix(3, 30);
}

#[test]
fn t4_through_18() {
    assert_prefix(4, 18);
}
