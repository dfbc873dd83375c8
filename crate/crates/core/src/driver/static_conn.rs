use std::sync::atomic::{AtomicU32, Ordering};
use std::time::Instant;

use super::spec::{AlgorithmSpec, Finish, Sampling};
use crate::dset::{find_naive, ForestSlots, Labels, UnionConfig, UnionFind, UnionRule};
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::graph::Graph;
use crate::minbased::{label_propagation, liu_tarjan, shiloach_vishkin, stergiou, EdgeSource, FinishStats};
use crate::sampling::{bfs_sample, hb_sample, kout_sample, most_frequent_label};
use crate::validate::{sampling_stats, RunStats};
use crate::VertexId;

/// Spanning-forest edges, one optional slot per vertex. Slot `r` holds the
/// edge that made `r` stop being a root.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ForestEdges {
    pub edges: Vec<Option<(VertexId, VertexId)>>,
}

impl ForestEdges {
    pub fn populated(&self) -> usize {
        self.edges.iter().flatten().count()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges.iter().flatten().copied()
    }
}

/// Points every vertex at the root of its chain.
pub fn label_finalization(ex: &Executor, labels: &Labels) -> Vec<VertexId> {
    ex.map_collect(labels.len(), |v| find_naive(labels, v as VertexId))
}

// Rank-ordered linking leaves arbitrary roots; rewrite them to component
// minima so all finishes produce the same canonical labels.
fn canonical_minima(ex: &Executor, roots: &mut [VertexId]) {
    let minima: Vec<AtomicU32> = (0..roots.len()).map(|_| AtomicU32::new(VertexId::MAX)).collect();
    ex.for_each(0..roots.len(), |v| {
        minima[roots[v] as usize].fetch_min(v as VertexId, Ordering::Relaxed);
    });
    let canon = ex.map_collect(roots.len(), |v| minima[roots[v] as usize].load(Ordering::Relaxed));
    roots.copy_from_slice(&canon);
}

fn sampling_union_find(spec: &AlgorithmSpec, n: usize) -> Result<UnionFind> {
    let cfg = spec.finish.union_config().unwrap_or_default();
    UnionFind::new(cfg, n, spec.seed)
}

struct Run {
    labels: Labels,
    stats: RunStats,
}

fn timed<T>(stats: &mut RunStats, phase: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    stats.add_time(phase, start.elapsed().as_secs_f64());
    out
}

/// Runs the finish phase over the given source. Union-find finishes make a
/// single pass over the edges of the active vertices.
pub fn finish_phase(
    ex: &Executor,
    src: &EdgeSource<'_>,
    labels: &Labels,
    finish: &Finish,
    uf: Option<&UnionFind>,
    forest: Option<&ForestSlots>,
) -> Result<FinishStats> {
    match finish {
        Finish::UnionFind(_) => {
            let uf = uf.expect("union-find finish needs its union-find");
            let inspections = match src {
                EdgeSource::Graph { g, active, .. } => ex.sum_slice(active, |&v| {
                    for &w in g.neighbors(v) {
                        uf.union_recording(labels, v, w, forest);
                    }
                    g.degree(v) as u64
                }),
                EdgeSource::Edges { edges, .. } => ex.sum(0..edges.len(), |i| {
                    let (u, v) = edges[i];
                    uf.union_recording(labels, u, v, forest);
                    1
                }),
            };
            Ok(FinishStats {
                rounds: 1,
                inspections,
            })
        }
        Finish::ShiloachVishkin => shiloach_vishkin(ex, src, labels, forest, None),
        Finish::LiuTarjan(v) => liu_tarjan(ex, src, labels, *v, forest, None),
        Finish::Stergiou => stergiou(ex, src, labels, None),
        Finish::LabelPropagation => label_propagation(ex, src, labels, None),
    }
}

fn run(ex: &Executor, g: &Graph, spec: &AlgorithmSpec, forest: Option<&ForestSlots>) -> Result<Run> {
    spec.validate()?;
    let n = g.num_vertices();
    let labels = Labels::make_set(n);
    let mut stats = RunStats::default();
    let finish_uf = match spec.finish {
        Finish::UnionFind(cfg) => Some(UnionFind::new(cfg, n, spec.seed)?),
        _ => None,
    };

    let mut l_max = None;
    if spec.sampling != Sampling::None {
        let owned;
        let uf = match &finish_uf {
            Some(uf) => uf,
            None => {
                owned = sampling_union_find(spec, n)?;
                &owned
            }
        };
        let (read, bfs) = timed(&mut stats, "sample", || match spec.sampling {
            Sampling::KOut { k, mode } => (kout_sample(ex, g, &labels, uf, k, mode, spec.seed, forest), None),
            Sampling::Hb { n_edges } => (hb_sample(ex, g, &labels, uf, n_edges, forest), None),
            Sampling::Bfs { probes } => {
                let out = bfs_sample(ex, g, &labels, probes, spec.seed, forest);
                (out.map_or(0, |o| o.inspections), out)
            }
            Sampling::None => unreachable!(),
        });
        if let Some(out) = bfs {
            stats.bfs_source = Some(out.source);
            stats.bfs_source_label = Some(out.label);
        }
        stats.add_inspections("sample", read);
        let snapshot = labels.to_vec();
        l_max = Some(timed(&mut stats, "gather", || most_frequent_label(ex, &snapshot)));
        let quality = sampling_stats(ex, g, &snapshot);
        stats.cov = quality.cov;
        stats.ic = quality.ic;
        stats.l_max = l_max;
    }

    let src = timed(&mut stats, "gather", || EdgeSource::active(ex, g, &labels, l_max));
    stats.active_vertices = src.active_vertices().map_or(0, <[_]>::len);
    let fs = timed(&mut stats, "finish", || {
        finish_phase(ex, &src, &labels, &spec.finish, finish_uf.as_ref(), forest)
    })?;
    stats.rounds = fs.rounds;
    stats.add_inspections("finish", fs.inspections);
    Ok(Run { labels, stats })
}

/// Static connectivity: sampling, gathering of the vertices outside the
/// most frequent component, finish, and finalization. Returned labels are
/// component minima.
pub fn static_connectivity(ex: &Executor, g: &Graph, spec: &AlgorithmSpec) -> Result<(Vec<VertexId>, RunStats)> {
    let Run { labels, mut stats } = run(ex, g, spec, None)?;
    let rank_linked = matches!(spec.finish, Finish::UnionFind(UnionConfig { union: UnionRule::Jtb, .. }));
    let final_labels = timed(&mut stats, "finalize", || {
        let mut out = label_finalization(ex, &labels);
        if rank_linked {
            canonical_minima(ex, &mut out);
        }
        out
    });
    stats.component_count = ex.sum(0..final_labels.len(), |v| (final_labels[v] == v as VertexId) as u64) as usize;
    stats.finish_ratio();
    Ok((final_labels, stats))
}

/// Spanning forest: the static pipeline with every successful root link
/// recording its original edge. Requires a root-based finish.
pub fn spanning_forest(ex: &Executor, g: &Graph, spec: &AlgorithmSpec) -> Result<(ForestEdges, RunStats)> {
    spec.validate()?;
    if !spec.is_root_based() {
        return Err(Error::config(format!(
            "{spec} is not root-based; spanning forest needs a union-find finish without \
             splice, shiloach-vishkin, or a liu-tarjan variant with root update"
        )));
    }
    let n = g.num_vertices();
    let slots = ForestSlots::new(n);
    let Run { mut stats, .. } = run(ex, g, spec, Some(&slots))?;
    let forest = ForestEdges { edges: slots.to_edges() };
    stats.component_count = n - forest.populated();
    stats.finish_ratio();
    Ok((forest, stats))
}
