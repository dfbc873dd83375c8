//! The three frameworks built from sampling and finish phases: static
//! connectivity, spanning forest, and batch-incremental connectivity.

mod incremental;
mod spec;
mod static_conn;

pub use incremental::{incremental, Batch, BatchOp, BatchOutcome, IncrementalSession};
pub use spec::{AlgorithmSpec, Finish, Sampling};
pub use static_conn::{
    finish_phase, label_finalization, spanning_forest, static_connectivity, ForestEdges,
};
