//! Experiment harness: static variant sweeps, incremental batch-size and
//! insert/query-ratio sweeps, and edge-inspection reports. Every timed row is
//! preceded by an untimed run checked against the oracle.

mod config;
mod suite;

pub use config::{BenchConfig, BenchMode, GraphSource};
pub use suite::{desk_suite, NamedGraph};

use std::io::{BufRead, Write};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::driver::{static_connectivity, AlgorithmSpec, Batch, BatchOp, Finish, IncrementalSession};
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::graph::generators::rng;
use crate::validate::{oracle_components, RunStats};
use crate::VertexId;

/// One CSV row. Field order is the column order.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub graph: String,
    pub spec: String,
    pub sample: String,
    pub finish: String,
    pub find: String,
    pub splice: String,
    pub workers: usize,
    pub batch_size: usize,
    pub ratio: f64,
    pub time_ms: f64,
    pub throughput_eps: f64,
    pub cov: f64,
    pub ic: f64,
    pub ratio_sampling: f64,
    pub inspections_sample: u64,
    pub inspections_finish: u64,
    pub rounds: usize,
    pub components: usize,
}

pub const CSV_HEADER: [&str; 18] = [
    "graph",
    "spec",
    "sample",
    "finish",
    "find",
    "splice",
    "workers",
    "batch_size",
    "ratio",
    "time_ms",
    "throughput_eps",
    "cov",
    "ic",
    "ratio_sampling",
    "inspections_sample",
    "inspections_finish",
    "rounds",
    "components",
];

/// A row plus the raw per-repeat times it summarizes.
#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    pub row: Row,
    pub samples_ms: Vec<f64>,
    /// Operations (edges or batch operations) the throughput divides.
    pub ops: u64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BenchOptions {
    pub repeats: usize,
    /// Discard one extra run before the timed repeats.
    pub warmup: bool,
    /// When false, times and throughputs are reported as zero so that the
    /// output is reproducible byte for byte.
    pub timing: bool,
    pub seed: u64,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            repeats: 5,
            warmup: true,
            timing: true,
            seed: 1,
        }
    }
}

/// Middle element of the sorted samples (the lower one for even counts).
pub fn median(samples: &[f64]) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted[(sorted.len() - 1) / 2]
}

fn base_row(graph: &str, spec: &AlgorithmSpec, workers: usize) -> Row {
    let (find, splice) = match spec.finish {
        Finish::UnionFind(cfg) => (cfg.find.token().to_owned(), cfg.splice.token().to_owned()),
        _ => (String::new(), String::new()),
    };
    Row {
        graph: graph.to_owned(),
        spec: spec.to_string(),
        sample: spec.sampling.to_string(),
        finish: spec.finish.token(),
        find,
        splice,
        workers,
        ..Row::default()
    }
}

fn fill_stats(row: &mut Row, stats: &RunStats, timing: bool) {
    row.cov = stats.cov;
    row.ic = stats.ic;
    row.ratio_sampling = if timing { stats.sampling_ratio } else { 0.0 };
    row.inspections_sample = stats.inspections("sample");
    row.inspections_finish = stats.inspections("finish") + stats.inspections("insert");
    row.rounds = stats.rounds;
    row.components = stats.component_count;
}

fn summarize(mut row: Row, samples_ms: Vec<f64>, ops: u64, timing: bool) -> Record {
    if timing {
        row.time_ms = median(&samples_ms);
        row.throughput_eps = if row.time_ms > 0.0 {
            ops as f64 / (row.time_ms / 1000.0)
        } else {
            0.0
        };
    }
    Record {
        row,
        samples_ms: if timing { samples_ms } else { Vec::new() },
        ops,
    }
}

/// One row per (graph, spec, workers) with the median static run time.
pub fn sweep_static(
    graphs: &[NamedGraph],
    specs: &[AlgorithmSpec],
    workers: &[usize],
    opts: &BenchOptions,
) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for ng in graphs {
        let oracle = oracle_components(&ng.graph);
        for spec in specs {
            let spec = spec.with_seed(opts.seed);
            for &w in workers {
                let ex = Executor::new(w)?;
                let (labels, stats) = static_connectivity(&ex, &ng.graph, &spec)?;
                if labels != oracle {
                    return Err(Error::Verification(format!(
                        "{spec} with {w} workers disagrees with the oracle on {}",
                        ng.name
                    )));
                }
                let mut row = base_row(&ng.name, &spec, w);
                fill_stats(&mut row, &stats, opts.timing);
                let mut samples = Vec::new();
                if opts.timing {
                    if opts.warmup {
                        static_connectivity(&ex, &ng.graph, &spec)?;
                    }
                    for _ in 0..opts.repeats.max(1) {
                        let (_, s) = static_connectivity(&ex, &ng.graph, &spec)?;
                        samples.push(s.total_time() * 1000.0);
                    }
                }
                out.push(summarize(row, samples, ng.graph.num_edges() as u64, opts.timing));
            }
        }
    }
    Ok(out)
}

/// The graph's undirected edges in random order as inserts, with
/// `1 / ratio` random-pair queries per insert shuffled in (none when
/// `ratio` is not positive).
pub fn make_stream(ng: &NamedGraph, ratio: f64, seed: u64) -> Vec<BatchOp> {
    let mut rng = rng(seed);
    let mut ops: Vec<BatchOp> = ng
        .graph
        .undirected_edges()
        .into_iter()
        .map(|(u, v)| BatchOp::Insert(u, v))
        .collect();
    let n = ng.graph.num_vertices() as VertexId;
    if ratio > 0.0 && n > 0 {
        let queries = (ops.len() as f64 / ratio).round() as usize;
        ops.extend((0..queries).map(|_| BatchOp::Query(rng.random_range(0..n), rng.random_range(0..n))));
    }
    ops.shuffle(&mut rng);
    ops
}

/// Splits a stream into consecutive batches; zero means a single batch.
pub fn split_batches(ops: &[BatchOp], batch_size: usize) -> Vec<Batch> {
    if ops.is_empty() {
        return Vec::new();
    }
    let size = if batch_size == 0 { ops.len() } else { batch_size };
    ops.chunks(size).map(|c| Batch::new(c.to_vec())).collect()
}

/// Checks query answers against a sequential union-find fed with each
/// batch's inserts before its queries.
pub fn check_stream(batches: &[Batch], n: usize) -> std::result::Result<(), String> {
    let mut parent: Vec<VertexId> = (0..n as VertexId).collect();
    fn root(p: &mut [VertexId], mut x: VertexId) -> VertexId {
        while p[x as usize] != x {
            p[x as usize] = p[p[x as usize] as usize];
            x = p[x as usize];
        }
        x
    }
    for (i, b) in batches.iter().enumerate() {
        for op in &b.ops {
            if let BatchOp::Insert(u, v) = *op {
                let (a, c) = (root(&mut parent, u), root(&mut parent, v));
                parent[a.max(c) as usize] = a.min(c);
            }
        }
        for (op, &r) in b.ops.iter().zip(&b.results) {
            if let BatchOp::Query(u, v) = *op {
                if r != (root(&mut parent, u) == root(&mut parent, v)) {
                    return Err(format!("batch {i}: wrong answer for query ({u}, {v})"));
                }
            }
        }
    }
    Ok(())
}

/// Reads the stream format: `i u v` inserts, `q u v` queries, a line `b`
/// closes the current batch, `#` starts a comment.
pub fn read_stream(reader: impl BufRead, origin: &Path) -> Result<Vec<Batch>> {
    let mut batches = Vec::new();
    let mut ops = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            path: origin.to_path_buf(),
            line: idx + 1,
            message,
        };
        let words: Vec<&str> = t.split_whitespace().collect();
        match words.as_slice() {
            ["b"] => {
                if !ops.is_empty() {
                    batches.push(Batch::new(std::mem::take(&mut ops)));
                }
            }
            [kind @ ("i" | "q"), u, v] => {
                let id = |w: &str| {
                    w.parse::<VertexId>()
                        .ok()
                        .filter(|&x| (x as usize) < crate::MAX_VERTICES)
                        .ok_or_else(|| err(format!("bad vertex id {w:?}")))
                };
                let (u, v) = (id(u)?, id(v)?);
                ops.push(if *kind == "i" { BatchOp::Insert(u, v) } else { BatchOp::Query(u, v) });
            }
            _ => return Err(err(format!("expected `i u v`, `q u v` or `b`, got {t:?}"))),
        }
    }
    if !ops.is_empty() {
        batches.push(Batch::new(ops));
    }
    Ok(batches)
}

pub fn write_stream(batches: &[Batch], mut w: impl Write) -> Result<()> {
    for b in batches {
        for op in &b.ops {
            match *op {
                BatchOp::Insert(u, v) => writeln!(w, "i {u} {v}")?,
                BatchOp::Query(u, v) => writeln!(w, "q {u} {v}")?,
            }
        }
        writeln!(w, "b")?;
    }
    w.flush()?;
    Ok(())
}

/// One past the largest vertex id in the stream.
pub fn stream_vertices(batches: &[Batch]) -> usize {
    batches
        .iter()
        .flat_map(|b| &b.ops)
        .map(|op| {
            let (u, v) = op.endpoints();
            u.max(v) as usize + 1
        })
        .max()
        .unwrap_or(0)
}

fn run_stream(ex: &Executor, spec: &AlgorithmSpec, batches: &mut [Batch], n: usize) -> Result<(f64, RunStats)> {
    let mut session = IncrementalSession::new(ex.clone(), *spec, false)?;
    session.reserve(n)?;
    let mut seconds = 0.0;
    for b in batches.iter_mut() {
        seconds += session.apply(b)?.seconds;
    }
    let mut stats = session.stats().clone();
    let labels = session.labels();
    stats.component_count = labels.iter().enumerate().filter(|&(v, &l)| l == v as VertexId).count();
    Ok((seconds, stats))
}

/// One row per (graph, spec, batch size, ratio, workers); throughput is
/// operations per second over the whole stream.
pub fn sweep_incremental(
    graphs: &[NamedGraph],
    specs: &[AlgorithmSpec],
    batch_sizes: &[usize],
    ratios: &[f64],
    workers: &[usize],
    opts: &BenchOptions,
) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for ng in graphs {
        let n = ng.graph.num_vertices();
        for &ratio in ratios {
            let stream = make_stream(ng, ratio, opts.seed);
            for &bs in batch_sizes {
                for spec in specs {
                    let spec = spec.with_seed(opts.seed);
                    for &w in workers {
                        let ex = Executor::new(w)?;
                        let mut batches = split_batches(&stream, bs);
                        let (_, stats) = run_stream(&ex, &spec, &mut batches, n)?;
                        check_stream(&batches, n).map_err(|e| {
                            Error::Verification(format!("{spec} with {w} workers on {}: {e}", ng.name))
                        })?;
                        let mut row = base_row(&ng.name, &spec, w);
                        row.batch_size = if bs == 0 { stream.len() } else { bs.min(stream.len()) };
                        row.ratio = ratio;
                        fill_stats(&mut row, &stats, opts.timing);
                        let mut samples = Vec::new();
                        if opts.timing {
                            if opts.warmup {
                                run_stream(&ex, &spec, &mut split_batches(&stream, bs), n)?;
                            }
                            for _ in 0..opts.repeats.max(1) {
                                let (secs, _) = run_stream(&ex, &spec, &mut split_batches(&stream, bs), n)?;
                                samples.push(secs * 1000.0);
                            }
                        }
                        out.push(summarize(row, samples, stream.len() as u64, opts.timing));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Inspection counts of insert-only streams, per (spec, batch size), at one
/// worker.
pub fn edge_inspection_report(
    ng: &NamedGraph,
    specs: &[AlgorithmSpec],
    batch_sizes: &[usize],
    opts: &BenchOptions,
) -> Result<Vec<Record>> {
    let quiet = BenchOptions {
        timing: false,
        ..*opts
    };
    sweep_incremental(std::slice::from_ref(ng), specs, batch_sizes, &[0.0], &[1], &quiet)
}

pub fn write_csv(records: &[Record], w: impl Write) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    if records.is_empty() {
        wtr.write_record(CSV_HEADER)?;
    }
    for r in records {
        wtr.serialize(&r.row)?;
    }
    wtr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_csr, generators};

    #[test]
    fn stream_round_trip() {
        let batches = split_batches(&make_stream(&small(), 0.5, 3), 40);
        let mut buf = Vec::new();
        write_stream(&batches, &mut buf).unwrap();
        let back = read_stream(&buf[..], Path::new("mem")).unwrap();
        assert_eq!(back, batches);
        assert!(read_stream(&b"i 1\n"[..], Path::new("mem")).is_err());
    }

    fn small() -> NamedGraph {
        NamedGraph::new("gnp", build_csr(&generators::gnp(300, 0.01, 1)).unwrap())
    }

    #[test]
    fn median_is_middle() {
        assert_eq!(median(&[5.0, 1.0, 4.0, 2.0, 3.0]), 3.0);
        assert_eq!(median(&[2.0, 1.0]), 1.0);
    }

    #[test]
    fn static_row_count() {
        let specs = [
            AlgorithmSpec::parse("kout+async+halve").unwrap(),
            AlgorithmSpec::parse("none+sv").unwrap(),
        ];
        let opts = BenchOptions::default();
        let recs = sweep_static(&[small()], &specs, &[1], &opts).unwrap();
        assert_eq!(recs.len(), 2);
        for r in &recs {
            assert_eq!(r.samples_ms.len(), 5);
            assert_eq!(r.row.time_ms, median(&r.samples_ms));
        }
        let recs = sweep_static(&[small(), small()], &specs, &[1, 2], &BenchOptions { repeats: 1, ..opts }).unwrap();
        assert_eq!(recs.len(), 8);
    }

    #[test]
    fn csv_header_matches() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().trim(), CSV_HEADER.join(","));
        let specs = [AlgorithmSpec::parse("none+async+halve").unwrap()];
        let recs = sweep_static(&[small()], &specs, &[1], &BenchOptions { timing: false, ..Default::default() }).unwrap();
        let mut buf = Vec::new();
        write_csv(&recs, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER.join(","));
    }

    #[test]
    fn incremental_rows_and_throughput() {
        let specs = [AlgorithmSpec::parse("none+async+halve").unwrap()];
        let opts = BenchOptions { repeats: 3, ..Default::default() };
        let recs = sweep_incremental(&[small()], &specs, &[0, 100, 1 << 30], &[1.0], &[1], &opts).unwrap();
        assert_eq!(recs.len(), 3);
        let ops = recs[0].ops as f64;
        for r in &recs {
            let expect = ops / (r.row.time_ms / 1000.0);
            assert!((r.row.throughput_eps - expect).abs() <= 1e-6 * expect);
        }
        assert_eq!(recs[0].row.batch_size, recs[2].row.batch_size);
    }

    #[test]
    fn union_find_inspects_each_streamed_edge_once() {
        let g = small();
        let specs = [AlgorithmSpec::parse("none+rem_cas+halve+halve_one").unwrap()];
        let recs = edge_inspection_report(&g, &specs, &[50], &BenchOptions::default()).unwrap();
        assert_eq!(recs[0].row.inspections_finish, g.graph.num_edges() as u64 / 2);
    }
}
