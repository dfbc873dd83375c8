use std::sync::atomic::{AtomicU32, Ordering};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::spec::{AlgorithmSpec, Finish};
use super::static_conn::finish_phase;
use crate::dset::{find_naive, Labels, UnionFind};
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::graph::Graph;
use crate::minbased::EdgeSource;
use crate::validate::RunStats;
use crate::{VertexId, MAX_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BatchOp {
    Insert(VertexId, VertexId),
    Query(VertexId, VertexId),
}

impl BatchOp {
    pub fn endpoints(&self) -> (VertexId, VertexId) {
        match *self {
            BatchOp::Insert(u, v) | BatchOp::Query(u, v) => (u, v),
        }
    }
}

/// Operations of one batch and, after it ran, one result per position
/// (always `false` at insert positions).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Batch {
    pub ops: Vec<BatchOp>,
    pub results: Vec<bool>,
}

impl Batch {
    pub fn new(ops: Vec<BatchOp>) -> Self {
        Batch { ops, results: Vec::new() }
    }

    pub fn num_queries(&self) -> usize {
        self.ops.iter().filter(|o| matches!(o, BatchOp::Query(..))).count()
    }

    /// Results at query positions, in order.
    pub fn query_results(&self) -> Vec<bool> {
        self.ops
            .iter()
            .zip(&self.results)
            .filter(|(o, _)| matches!(o, BatchOp::Query(..)))
            .map(|(_, &r)| r)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BatchOutcome {
    pub inserts: usize,
    pub queries: usize,
    /// Queries answered `true`.
    pub hits: usize,
    pub seconds: f64,
    pub inspections: u64,
}

// Entry of a vertex that has not appeared yet.
const UNSET: VertexId = VertexId::MAX;

/// State kept across batches: the label array, grown on demand, and for
/// union-find finishes the union-find's own auxiliary arrays.
pub struct IncrementalSession {
    ex: Executor,
    spec: AlgorithmSpec,
    labels: Labels,
    uf: Option<UnionFind>,
    racy: bool,
    stats: RunStats,
}

impl IncrementalSession {
    /// `racy` interleaves inserts and queries of a batch instead of running
    /// all inserts first; it is for throughput measurement only and needs a
    /// union-find finish.
    pub fn new(ex: Executor, spec: AlgorithmSpec, racy: bool) -> Result<Self> {
        spec.validate()?;
        if !spec.is_root_based() {
            return Err(Error::config(format!(
                "{spec} is not root-based; incremental connectivity needs a union-find finish without \
                 splice, shiloach-vishkin, or a liu-tarjan variant with root update"
            )));
        }
        if racy && !matches!(spec.finish, Finish::UnionFind(_)) {
            return Err(Error::config("interleaved batches need a union-find finish"));
        }
        let mut session = IncrementalSession {
            ex,
            spec,
            labels: Labels::make_set(0),
            uf: None,
            racy,
            stats: RunStats::default(),
        };
        session.reserve(0)?;
        Ok(session)
    }

    /// Starts from the components of `g`.
    pub fn with_graph(ex: Executor, spec: AlgorithmSpec, g: &Graph, racy: bool) -> Result<Self> {
        let mut s = Self::new(ex, spec, racy)?;
        let n = g.num_vertices();
        s.reserve(n)?;
        s.ex.for_each(0..n, |v| s.labels.set(v as VertexId, v as VertexId));
        let start = Instant::now();
        let fs = finish_phase(&s.ex, &EdgeSource::all(g), &s.labels, &s.spec.finish, s.uf.as_ref(), None)?;
        s.stats.add_time("insert", start.elapsed().as_secs_f64());
        s.stats.add_inspections("insert", fs.inspections);
        Ok(s)
    }

    pub fn spec(&self) -> &AlgorithmSpec {
        &self.spec
    }

    pub fn capacity(&self) -> usize {
        self.labels.len()
    }

    pub fn stats(&self) -> &RunStats {
        &self.stats
    }

    /// Grows the label array to at least `n` entries.
    pub fn reserve(&mut self, n: usize) -> Result<()> {
        if n > MAX_VERTICES {
            return Err(Error::malformed(format!("vertex count {n} exceeds {MAX_VERTICES}")));
        }
        if n <= self.labels.len() && (self.uf.is_some() || self.spec.finish.union_config().is_none()) {
            return Ok(());
        }
        let n = n.max(self.labels.len());
        let old = std::mem::replace(&mut self.labels, Labels::filled(n, UNSET));
        self.ex.for_each(0..old.len(), |v| self.labels.set(v as VertexId, old.get(v as VertexId)));
        if let Some(cfg) = self.spec.finish.union_config() {
            // hooks and locks are only consulted on roots, which are never
            // hooked or locked between batches, so fresh ones are equivalent;
            // ranks are generated as a prefix-stable sequence
            self.uf = Some(UnionFind::new(cfg, n, self.spec.seed)?);
        }
        Ok(())
    }

    #[inline]
    fn touch(&self, v: VertexId) {
        if self.labels.get(v) == UNSET {
            self.labels.cas(v, UNSET, v);
        }
    }

    #[inline]
    fn connected(&self, u: VertexId, v: VertexId) -> bool {
        match &self.uf {
            Some(uf) => uf.find(&self.labels, u) == uf.find(&self.labels, v),
            None => find_naive(&self.labels, u) == find_naive(&self.labels, v),
        }
    }

    /// Runs one batch: all inserts, a barrier, then all queries (or
    /// everything interleaved in racy mode). Fills `batch.results`.
    pub fn apply(&mut self, batch: &mut Batch) -> Result<BatchOutcome> {
        let max_id = batch
            .ops
            .iter()
            .map(|o| {
                let (u, v) = o.endpoints();
                u.max(v)
            })
            .max();
        if let Some(max_id) = max_id {
            if max_id == UNSET {
                return Err(Error::malformed("vertex id u32::MAX is reserved"));
            }
            self.reserve(max_id as usize + 1)?;
        }
        let start = Instant::now();
        let ops = &batch.ops;
        self.ex.for_each(0..ops.len(), |i| {
            let (u, v) = ops[i].endpoints();
            self.touch(u);
            self.touch(v);
        });
        let inserts: Vec<(VertexId, VertexId)> = ops
            .iter()
            .filter_map(|o| match *o {
                BatchOp::Insert(u, v) => Some((u, v)),
                BatchOp::Query(..) => None,
            })
            .collect();
        let mut inspections = 0;
        let results = if self.racy {
            let uf = self.uf.as_ref().expect("racy mode has a union-find");
            inspections = inserts.len() as u64;
            let labels = &self.labels;
            let out = self.ex.map_collect(ops.len(), |i| match ops[i] {
                BatchOp::Insert(u, v) => {
                    uf.union(labels, u, v);
                    false
                }
                BatchOp::Query(u, v) => find_naive(labels, u) == find_naive(labels, v),
            });
            self.stats.add_time("insert", start.elapsed().as_secs_f64());
            out
        } else {
            if !inserts.is_empty() {
                let src = EdgeSource::edges(&inserts);
                let fs = finish_phase(&self.ex, &src, &self.labels, &self.spec.finish, self.uf.as_ref(), None)?;
                inspections = fs.inspections;
            }
            let inserted = start.elapsed().as_secs_f64();
            let out = self.ex.map_collect(ops.len(), |i| match ops[i] {
                BatchOp::Insert(..) => false,
                BatchOp::Query(u, v) => self.connected(u, v),
            });
            self.stats.add_time("insert", inserted);
            self.stats.add_time("query", start.elapsed().as_secs_f64() - inserted);
            out
        };
        let seconds = start.elapsed().as_secs_f64();
        self.stats.add_inspections("insert", inspections);
        self.stats.rounds += 1;
        let hits = results.iter().filter(|&&r| r).count();
        batch.results = results;
        Ok(BatchOutcome {
            inserts: inserts.len(),
            queries: ops.len() - inserts.len(),
            hits,
            seconds,
            inspections,
        })
    }

    /// Component labels of all vertices seen so far (component minima);
    /// unseen ids are their own singleton.
    pub fn labels(&self) -> Vec<VertexId> {
        let n = self.labels.len();
        let roots = self.ex.map_collect(n, |v| {
            if self.labels.get(v as VertexId) == UNSET {
                v as VertexId
            } else {
                find_naive(&self.labels, v as VertexId)
            }
        });
        let minima: Vec<AtomicU32> = (0..n).map(|_| AtomicU32::new(UNSET)).collect();
        self.ex.for_each(0..n, |v| {
            minima[roots[v] as usize].fetch_min(v as VertexId, Ordering::Relaxed);
        });
        self.ex.map_collect(n, |v| minima[roots[v] as usize].load(Ordering::Relaxed))
    }
}

/// Runs every batch in order against an initial graph (or nothing) and
/// returns the final labels. Query results land in each batch.
pub fn incremental(
    ex: &Executor,
    init: Option<&Graph>,
    spec: &AlgorithmSpec,
    batches: &mut [Batch],
) -> Result<(Vec<VertexId>, Vec<BatchOutcome>, RunStats)> {
    let mut session = match init {
        Some(g) => IncrementalSession::with_graph(ex.clone(), *spec, g, false)?,
        None => IncrementalSession::new(ex.clone(), *spec, false)?,
    };
    let outcomes = batches
        .iter_mut()
        .map(|b| session.apply(b))
        .collect::<Result<Vec<_>>>()?;
    let mut stats = session.stats().clone();
    let labels = session.labels();
    stats.component_count = labels.iter().enumerate().filter(|&(v, &l)| l == v as VertexId).count();
    Ok((labels, outcomes, stats))
}
