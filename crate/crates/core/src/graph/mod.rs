//! Graph representations, file formats and synthetic generators.

mod csr;
mod edge_list;
pub mod generators;

pub use csr::{build_csr, load_graph, Graph, BINARY_MAGIC};
pub use edge_list::{load_edge_list, EdgeList};
pub use generators::{gen_ba, gen_rmat};
