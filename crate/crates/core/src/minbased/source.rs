use crate::dset::Labels;
use crate::exec::Executor;
use crate::graph::Graph;
use crate::VertexId;

/// The edges a finisher works on.
///
/// A graph source covers the adjacency ranges of its active vertices only.
/// In the working edge list, every neighbor that was inactive at
/// construction time (it carried the most frequent label) is replaced by
/// that label's root, so the inactive component is represented by a single
/// vertex and its members' parents are never touched individually.
pub enum EdgeSource<'a> {
    Graph {
        g: &'a Graph,
        active: Vec<VertexId>,
        contraction: Option<Contraction>,
    },
    Edges {
        edges: &'a [(VertexId, VertexId)],
        endpoints: Vec<VertexId>,
    },
}

pub struct Contraction {
    root: VertexId,
    inactive: Vec<u64>,
}

impl Contraction {
    #[inline]
    fn is_inactive(&self, w: VertexId) -> bool {
        self.inactive[w as usize / 64] >> (w % 64) & 1 == 1
    }

    #[inline]
    fn map(&self, w: VertexId) -> VertexId {
        if self.is_inactive(w) {
            self.root
        } else {
            w
        }
    }
}

/// Working copy of a source's edges, plus the original edge each entry
/// came from.
pub(crate) struct WorkingEdges {
    pub edges: Vec<(VertexId, VertexId)>,
    pub origin: Vec<u32>,
}

impl<'a> EdgeSource<'a> {
    /// Every vertex of `g` is active.
    pub fn all(g: &'a Graph) -> Self {
        EdgeSource::Graph {
            g,
            active: (0..g.num_vertices() as VertexId).collect(),
            contraction: None,
        }
    }

    /// Vertices whose label differs from `l_max` are active.
    pub fn active(ex: &Executor, g: &'a Graph, labels: &Labels, l_max: Option<VertexId>) -> Self {
        let Some(l_max) = l_max else {
            return Self::all(g);
        };
        let n = g.num_vertices();
        let active = ex.filter_indices(n, |v| labels.get(v as VertexId) != l_max);
        let mut inactive = vec![u64::MAX; n.div_ceil(64)];
        for &v in &active {
            inactive[v as usize / 64] &= !(1u64 << (v % 64));
        }
        EdgeSource::Graph {
            g,
            active,
            contraction: Some(Contraction {
                root: l_max,
                inactive,
            }),
        }
    }

    pub fn edges(edges: &'a [(VertexId, VertexId)]) -> Self {
        let mut endpoints: Vec<VertexId> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        endpoints.sort_unstable();
        endpoints.dedup();
        EdgeSource::Edges { edges, endpoints }
    }

    pub fn active_vertices(&self) -> Option<&[VertexId]> {
        match self {
            EdgeSource::Graph { active, .. } => Some(active),
            EdgeSource::Edges { .. } => None,
        }
    }

    /// Vertices that shortcut phases visit; `None` means all of them.
    pub(crate) fn scope(&self) -> Option<&[VertexId]> {
        match self {
            EdgeSource::Graph { .. } => None,
            EdgeSource::Edges { endpoints, .. } => Some(endpoints),
        }
    }

    /// The original edge behind position `pos` (a directed adjacency index
    /// for graphs, a list index for edge lists).
    pub fn original(&self, pos: u32) -> (VertexId, VertexId) {
        match self {
            EdgeSource::Graph { g, .. } => {
                let offsets = g.offsets();
                let u = offsets.partition_point(|&o| o <= pos as u64) - 1;
                (u as VertexId, g.targets()[pos as usize])
            }
            EdgeSource::Edges { edges, .. } => edges[pos as usize],
        }
    }

    /// Materializes the working edge list. Between two active vertices only
    /// the direction from the smaller id is kept. Returns the list and the
    /// number of adjacency entries read.
    pub(crate) fn working(&self, ex: &Executor) -> (WorkingEdges, u64) {
        match self {
            EdgeSource::Edges { edges, .. } => {
                let w = WorkingEdges {
                    edges: edges.iter().copied().filter(|(u, v)| u != v).collect(),
                    origin: (0..edges.len() as u32)
                        .filter(|&i| edges[i as usize].0 != edges[i as usize].1)
                        .collect(),
                };
                (w, edges.len() as u64)
            }
            EdgeSource::Graph {
                g,
                active,
                contraction,
            } => {
                assert!(g.num_edges() <= u32::MAX as usize, "edge positions must fit in 32 bits");
                let per_vertex = ex.map_collect(active.len(), |i| {
                    let v = active[i];
                    let start = g.edge_start(v) as u32;
                    let mut out = Vec::new();
                    for (k, &w) in g.neighbors(v).iter().enumerate() {
                        let mapped = match contraction {
                            Some(c) => c.map(w),
                            None => w,
                        };
                        // the other direction is seen from w's side
                        if w < v && is_active(contraction, w) {
                            continue;
                        }
                        if mapped != v {
                            out.push(((v, mapped), start + k as u32));
                        }
                    }
                    out
                });
                let inspected = ex.sum_slice(active, |&v| g.degree(v) as u64);
                let total = per_vertex.iter().map(Vec::len).sum();
                let mut w = WorkingEdges {
                    edges: Vec::with_capacity(total),
                    origin: Vec::with_capacity(total),
                };
                for (e, pos) in per_vertex.into_iter().flatten() {
                    w.edges.push(e);
                    w.origin.push(pos);
                }
                (w, inspected)
            }
        }
    }
}

fn is_active(contraction: &Option<Contraction>, w: VertexId) -> bool {
    match contraction {
        Some(c) => !c.is_inactive(w),
        None => true,
    }
}
