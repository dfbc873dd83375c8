//! Concurrent disjoint-set kernels.
//!
//! All shared state is arrays of word-sized atomics. Parents always satisfy
//! `P[v] <= v` for the id-ordered union rules, which is what makes every
//! chain acyclic; the rank-ordered [`UnionRule::Jtb`] rule instead orders
//! roots by a per-vertex random priority.

mod config;
mod find;
mod labels;
mod splice;
mod union;

pub use config::{matrix_help, valid_combination, UnionConfig, UnionRule};
pub use find::{
    find_atomic_halve, find_atomic_split, find_compress, find_naive, find_two_try_split, FindRule,
};
pub use labels::{ForestSlots, Hooks, Labels};
pub use splice::{splice, SpliceRule};
pub use union::{
    union_async, union_early, union_hooks, union_jtb, union_rem_cas, union_rem_lock, JtbRanks,
    LockTable, UnionFind,
};
