use super::compress_all;
use crate::dset::{ForestSlots, Labels, UnionFind};
use crate::exec::Executor;
use crate::graph::Graph;
use crate::VertexId;

pub const DEFAULT_HB_EDGES: usize = 4;

/// Hook-based sampling. Every vertex whose smallest neighbor is smaller
/// than itself first points at that neighbor; each write goes to the
/// vertex's own entry, so no atomics are contended. Vertices that are still
/// roots afterwards union their first `n_edges` edges. Ends with full
/// compression. Returns the number of adjacency entries read.
pub fn hb_sample(
    ex: &Executor,
    g: &Graph,
    labels: &Labels,
    uf: &UnionFind,
    n_edges: usize,
    forest: Option<&ForestSlots>,
) -> u64 {
    let n = g.num_vertices();
    let mut inspected = ex.sum(0..n, |v| {
        let v = v as VertexId;
        match g.neighbors(v).first() {
            Some(&w) => {
                if w < v {
                    labels.set(v, w);
                    if let Some(f) = forest {
                        f.record(v, v, w);
                    }
                }
                1
            }
            None => 0,
        }
    });
    let roots = ex.filter_indices(n, |v| labels.is_root(v as VertexId));
    inspected += ex.sum_slice(&roots, |&v| {
        let nbrs = g.neighbors(v);
        let take = n_edges.min(nbrs.len());
        for &w in &nbrs[..take] {
            uf.union_recording(labels, v, w, forest);
        }
        take as u64
    });
    compress_all(ex, labels);
    inspected
}
