use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exec::Executor;
use crate::graph::Graph;
use crate::sampling::most_frequent_label;
use crate::VertexId;

/// Phase names used as keys in [`RunStats`].
pub const PHASES: [&str; 6] = ["sample", "gather", "finish", "finalize", "insert", "query"];

/// Timing, work counters and sampling quality of one run.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    /// Wall time per phase, in seconds.
    pub phase_times: BTreeMap<String, f64>,
    /// Adjacency or edge-list entries read per phase.
    pub edge_inspections: BTreeMap<String, u64>,
    /// Fraction of vertices carrying the most frequent label after sampling.
    pub cov: f64,
    /// Fraction of directed edges whose endpoints disagree after sampling.
    pub ic: f64,
    /// Sampling time as a fraction of the total.
    pub sampling_ratio: f64,
    /// Rounds of the finish phase (1 for single-pass union-find).
    pub rounds: usize,
    pub component_count: usize,
    /// Most frequent label after sampling, if a sampling phase ran.
    pub l_max: Option<VertexId>,
    /// Vertices processed by the finish phase.
    pub active_vertices: usize,
    /// BFS sampling source and the label of its component.
    pub bfs_source: Option<VertexId>,
    pub bfs_source_label: Option<VertexId>,
}

impl RunStats {
    pub fn add_time(&mut self, phase: &str, seconds: f64) {
        *self.phase_times.entry(phase.to_owned()).or_default() += seconds;
    }

    pub fn add_inspections(&mut self, phase: &str, count: u64) {
        *self.edge_inspections.entry(phase.to_owned()).or_default() += count;
    }

    pub fn time(&self, phase: &str) -> f64 {
        self.phase_times.get(phase).copied().unwrap_or(0.0)
    }

    pub fn inspections(&self, phase: &str) -> u64 {
        self.edge_inspections.get(phase).copied().unwrap_or(0)
    }

    pub fn total_time(&self) -> f64 {
        self.phase_times.values().sum()
    }

    pub fn total_inspections(&self) -> u64 {
        self.edge_inspections.values().sum()
    }

    pub(crate) fn finish_ratio(&mut self) {
        let total = self.total_time();
        self.sampling_ratio = if total > 0.0 {
            (self.time("sample") / total).clamp(0.0, 1.0)
        } else {
            0.0
        };
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplingStats {
    pub cov: f64,
    pub ic: f64,
    pub l_max: VertexId,
}

/// Cov and IC of a compressed post-sampling labeling.
pub fn sampling_stats(ex: &Executor, g: &Graph, labels: &[VertexId]) -> SamplingStats {
    let n = g.num_vertices();
    let m = g.num_edges();
    if n == 0 {
        return SamplingStats {
            cov: 0.0,
            ic: 0.0,
            l_max: 0,
        };
    }
    let l_max = most_frequent_label(ex, labels);
    let in_mode = ex.sum(0..n, |v| (labels[v] == l_max) as u64);
    // an edge between two l_max vertices never differs, so counting all
    // differing edges is the same as counting those of active vertices
    let crossing = ex.sum(0..n, |u| {
        let lu = labels[u];
        g.neighbors(u as VertexId)
            .iter()
            .filter(|&&w| labels[w as usize] != lu)
            .count() as u64
    });
    SamplingStats {
        cov: in_mode as f64 / n as f64,
        ic: if m == 0 { 0.0 } else { crossing as f64 / m as f64 },
        l_max,
    }
}
