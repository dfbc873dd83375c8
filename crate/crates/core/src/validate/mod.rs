//! Independent oracles, the spanning-forest checker and run statistics.
//!
//! The oracles are deliberately simple and sequential; nothing here shares
//! code with the kernels they check.

mod forest;
mod oracle;
mod stats;

pub use forest::{check_forest, ForestReport, Violation};
pub use oracle::{
    canonicalize, component_count, oracle_components, oracle_from_edges, oracle_union_find,
    partition_equal,
};
pub use stats::{sampling_stats, RunStats, SamplingStats, PHASES};
