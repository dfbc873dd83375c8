//! Parallel min-based graph connectivity.
//!
//! The crate composes connectivity algorithms from two phases. A sampling
//! phase (k-out, hook-based or BFS) labels most of the vertices of the
//! largest component cheaply; a finish phase (a concurrent union-find
//! variant, Shiloach-Vishkin, one of the sixteen Liu-Tarjan rule
//! combinations, Stergiou's two-array scheme or label propagation) then
//! processes only the edges of vertices outside that component.
//!
//! The same building blocks drive three frameworks in [`driver`]: static
//! connectivity, spanning forest, and batch-incremental connectivity.
//! [`validate`] holds the independent oracles and checkers, and [`bench`]
//! the experiment harness used by the `connlab` binary.

pub mod bench;
pub mod driver;
pub mod dset;
pub mod error;
pub mod exec;
pub mod graph;
pub mod minbased;
pub mod sampling;
pub mod validate;

pub use driver::{
    incremental, label_finalization, spanning_forest, static_connectivity, AlgorithmSpec, Batch,
    BatchOp, Finish, ForestEdges, IncrementalSession, Sampling,
};
pub use dset::{FindRule, Labels, SpliceRule, UnionConfig, UnionFind, UnionRule};
pub use error::{Error, Result};
pub use exec::Executor;
pub use graph::{EdgeList, Graph};
pub use minbased::LtVariant;
pub use validate::RunStats;

/// Vertex identifier. Graphs are limited to fewer than 2^31 vertices so that
/// sentinels (`n`, `u32::MAX`) never collide with a real id.
pub type VertexId = u32;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = (1 << 31) - 1;
