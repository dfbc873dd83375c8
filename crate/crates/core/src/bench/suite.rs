use crate::error::Result;
use crate::graph::generators::{self, RMAT_STREAM};
use crate::graph::{build_csr, gen_ba, gen_rmat, EdgeList, Graph};

#[derive(Clone, Debug)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

impl NamedGraph {
    pub fn new(name: impl Into<String>, graph: Graph) -> Self {
        NamedGraph {
            name: name.into(),
            graph,
        }
    }

    pub fn from_edges(name: impl Into<String>, el: &EdgeList) -> Result<Self> {
        Ok(Self::new(name, build_csr(el)?))
    }
}

/// The default benchmark graphs: long and short diameters, skewed and
/// uniform degrees, one to many components.
pub fn desk_suite(seed: u64) -> Result<Vec<NamedGraph>> {
    let n = 1usize << 14;
    let (a, b, c) = RMAT_STREAM;
    let gnp = |deg: f64, s: u64| generators::gnp(n, deg / n as f64, seed ^ s);
    let list = [
        ("path_65536", generators::path(1 << 16)),
        ("grid_256x256", generators::grid(256, 256)),
        ("star_16384", generators::star(n)),
        ("clique_1024", generators::clique(1 << 10)),
        ("gnp_16384_d0.5", gnp(0.5, 1)),
        ("gnp_16384_d2", gnp(2.0, 2)),
        ("gnp_16384_d16", gnp(16.0, 3)),
        ("rmat_14_10", gen_rmat(14, 10, a, b, c, seed)?),
        ("ba_16384_5", gen_ba(n, 5, seed)?),
        (
            "two_components",
            generators::disjoint_union(&gen_rmat(12, 8, a, b, c, seed ^ 4)?, &generators::grid(64, 64)),
        ),
        ("components_1000", generators::disjoint_components(1000, 16, 4, seed ^ 5)),
    ];
    list.into_iter().map(|(name, el)| NamedGraph::from_edges(name, &el)).collect()
}
