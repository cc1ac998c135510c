//! West's stack-sorting map on permutations ending in their minimum.
//!
//! For `pi` in S_n' (a permutation of `1..=n` followed by `0`) the passes of
//! the stack-sorting map arrange `1..=n` into a composition-shaped tableau
//! whose width is the sort depth of `pi`. Each tableau is realized by
//! exactly as many permutations as the product of its hook lengths, which
//! turns counting t-stack-sortable elements of S_n' into a polynomial-time
//! dynamic program over partially built tableaux.
//!
//! - [`perm`]: the map itself, sort depth, filtering and standardization.
//! - [`shape`] and [`tableau`]: compositions, cells and the tableau of a permutation.
//! - [`hook`]: hook lengths, linear extensions and per-shape counts.
//! - [`dp`]: the counting sweep.
//! - [`oracle`]: exhaustive brute-force checks of all of the above.

mod decimal;
pub mod dp;
pub mod error;
pub mod hook;
pub mod oracle;
pub mod perm;
pub mod shape;
pub mod tableau;

pub use dp::{count_sortable, count_table, DpOptions, DpState};
pub use error::{Error, Result};
pub use hook::{hook_length, hook_product, HookTable};
pub use num_bigint::BigUint;
pub use perm::Permutation;
pub use shape::{Cell, Composition};
pub use tableau::{build_tableau, column_blocks, StackSortingTableau};
