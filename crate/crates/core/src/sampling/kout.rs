use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::compress_all;
use crate::dset::{ForestSlots, Labels, UnionFind};
use crate::exec::Executor;
use crate::graph::Graph;
use crate::VertexId;

pub const DEFAULT_K: usize = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KOutMode {
    /// The first `k` neighbors.
    #[default]
    FirstK,
    /// The first neighbor plus `k - 1` uniformly drawn ones, with
    /// replacement.
    FirstPlusRandom,
}

/// Unions each vertex with up to `k` of its neighbors, then compresses.
/// Returns the number of adjacency entries read.
#[allow(clippy::too_many_arguments)]
pub fn kout_sample(
    ex: &Executor,
    g: &Graph,
    labels: &Labels,
    uf: &UnionFind,
    k: usize,
    mode: KOutMode,
    seed: u64,
    forest: Option<&ForestSlots>,
) -> u64 {
    let n = g.num_vertices();
    let inspected = ex.sum(0..n, |v| {
        let v = v as VertexId;
        let nbrs = g.neighbors(v);
        if nbrs.is_empty() || k == 0 {
            return 0;
        }
        match mode {
            KOutMode::FirstK => {
                let take = k.min(nbrs.len());
                for &w in &nbrs[..take] {
                    uf.union_recording(labels, v, w, forest);
                }
                take as u64
            }
            KOutMode::FirstPlusRandom => {
                uf.union_recording(labels, v, nbrs[0], forest);
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (v as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                for _ in 1..k {
                    let w = nbrs[rng.random_range(0..nbrs.len())];
                    uf.union_recording(labels, v, w, forest);
                }
                k as u64
            }
        }
    });
    compress_all(ex, labels);
    inspected
}
