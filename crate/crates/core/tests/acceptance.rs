//! End-to-end acceptance checks. Prints one line per criterion and exits
//! nonzero if any gated criterion fails. Criterion 9 is reported only.

use std::collections::{BTreeMap, HashMap};
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use connlab::bench::{self, desk_suite, BenchOptions, NamedGraph};
use connlab::driver::{spanning_forest, static_connectivity, AlgorithmSpec, Finish, IncrementalSession, Sampling};
use connlab::dset::{find_naive, Labels, UnionConfig, UnionFind, UnionRule};
use connlab::graph::generators::{self, RMAT_STREAM};
use connlab::graph::{build_csr, gen_rmat, EdgeList, Graph};
use connlab::minbased::{liu_tarjan, EdgeSource, Phase, RoundObserver};
use connlab::sampling::{bfs_sample, hb_sample, kout_sample};
use connlab::validate::{check_forest, oracle_components, oracle_from_edges, oracle_union_find, partition_equal};
use connlab::{Executor, LtVariant, VertexId};

type Outcome = Result<String, String>;
type Criterion = (usize, &'static str, fn(&Env) -> Outcome, bool);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Env {
    suite: Vec<NamedGraph>,
    oracles: Vec<Vec<VertexId>>,
    pools: BTreeMap<usize, Executor>,
}

impl Env {
    fn ex(&self, workers: usize) -> &Executor {
        &self.pools[&workers]
    }
}

fn criterion_1(env: &Env) -> Outcome {
    let specs = AlgorithmSpec::all();
    ensure(specs.len() >= 150, || format!("only {} specs", specs.len()))?;
    ensure(env.suite.len() >= 10, || format!("only {} graphs", env.suite.len()))?;
    let mut runs = 0;
    for (ng, oracle) in env.suite.iter().zip(&env.oracles) {
        ensure(partition_equal(oracle, &oracle_union_find(&ng.graph)), || {
            format!("oracles disagree on {}", ng.name)
        })?;
        for workers in [1, 2, 8] {
            for spec in &specs {
                let (labels, _) = static_connectivity(env.ex(workers), &ng.graph, &spec.with_seed(7))
                    .map_err(|e| format!("{spec} on {}: {e}", ng.name))?;
                ensure(&labels == oracle, || format!("{spec} on {} with {workers} workers", ng.name))?;
                runs += 1;
            }
        }
    }
    Ok(format!(
        "{} specs x {} graphs x workers {{1,2,8}}: {runs} runs equal the oracle",
        specs.len(),
        env.suite.len()
    ))
}

fn criterion_2(env: &Env) -> Outcome {
    let specs: Vec<_> = AlgorithmSpec::all().into_iter().filter(|s| s.is_root_based()).collect();
    let mut runs = 0;
    for (ng, oracle) in env.suite.iter().zip(&env.oracles) {
        let n = ng.graph.num_vertices();
        let c = oracle.iter().enumerate().filter(|&(v, &l)| l == v as VertexId).count();
        for (i, spec) in specs.iter().enumerate() {
            let workers = [1, 2, 8][i % 3];
            let (forest, _) = spanning_forest(env.ex(workers), &ng.graph, &spec.with_seed(3))
                .map_err(|e| format!("{spec} on {}: {e}", ng.name))?;
            let report = check_forest(&ng.graph, &forest.edges, oracle);
            ensure(report.passed(), || format!("{spec} on {}: {}", ng.name, report.to_json()))?;
            ensure(forest.populated() == n - c, || format!("{spec} on {}: edge count", ng.name))?;
            runs += 1;
        }
    }
    Ok(format!("{} root-based specs, {runs} forests pass all four clauses", specs.len()))
}

fn criterion_3(env: &Env) -> Outcome {
    let specs: Vec<_> = Finish::all()
        .into_iter()
        .filter(Finish::is_root_based)
        .map(|f| AlgorithmSpec::new(Sampling::None, f))
        .collect();
    let mut checked = 0;
    for (gi, ng) in env.suite.iter().enumerate() {
        let n = ng.graph.num_vertices();
        let ops = bench::make_stream(ng, 1.0, 100 + gi as u64);
        let size = ops.len().div_ceil(10).max(1);
        for (si, spec) in specs.iter().enumerate() {
            let workers = [1, 2, 8][(gi + si) % 3];
            let mut batches = bench::split_batches(&ops, size);
            ensure(batches.len() == 10, || format!("{} batches", batches.len()))?;
            let mut session = IncrementalSession::new(env.ex(workers).clone(), spec.with_seed(5), false)
                .map_err(|e| e.to_string())?;
            session.reserve(n).map_err(|e| e.to_string())?;
            let mut prefix = Vec::new();
            for (bi, b) in batches.iter_mut().enumerate() {
                session.apply(b).map_err(|e| format!("{spec}: {e}"))?;
                prefix.extend(b.ops.iter().filter_map(|op| match *op {
                    connlab::BatchOp::Insert(u, v) => Some((u, v)),
                    _ => None,
                }));
                let oracle = oracle_from_edges(n, &prefix);
                let where_ = || format!("{spec} on {} batch {bi}", ng.name);
                ensure(partition_equal(&session.labels(), &oracle), where_)?;
                for (op, &r) in b.ops.iter().zip(&b.results) {
                    if let connlab::BatchOp::Query(u, v) = *op {
                        ensure(r == (oracle[u as usize] == oracle[v as usize]), where_)?;
                    }
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{} root-based finishes, {checked} batch prefixes match", specs.len()))
}

struct Monotone {
    prev: Option<Vec<VertexId>>,
    violations: usize,
    rounds: usize,
}

impl RoundObserver for Monotone {
    fn observe(&mut self, round: usize, _phase: Phase, labels: &Labels) {
        let cur = labels.to_vec();
        if let Some(prev) = &self.prev {
            self.violations += cur.iter().zip(prev).filter(|(c, p)| c > p).count();
        }
        self.rounds = self.rounds.max(round);
        self.prev = Some(cur);
    }
}

fn criterion_4(env: &Env) -> Outcome {
    let all = LtVariant::ALL;
    ensure(all.len() == 16, || format!("{} variants", all.len()))?;
    let rooted = all.iter().filter(|v| v.is_root_based()).count();
    ensure(rooted == 6, || format!("{rooted} root-based variants"))?;
    for (ng, oracle) in env.suite.iter().zip(&env.oracles) {
        for (i, &variant) in all.iter().enumerate() {
            let labels = Labels::make_set(ng.graph.num_vertices());
            let mut obs = Monotone {
                prev: None,
                violations: 0,
                rounds: 0,
            };
            let ex = env.ex([1, 2, 8][i % 3]);
            liu_tarjan(ex, &EdgeSource::all(&ng.graph), &labels, variant, None, Some(&mut obs))
                .map_err(|e| format!("{variant} on {}: {e}", ng.name))?;
            let roots: Vec<_> = (0..labels.len() as VertexId).map(|v| find_naive(&labels, v)).collect();
            ensure(partition_equal(&roots, oracle), || format!("{variant} on {}", ng.name))?;
            ensure(obs.violations == 0, || format!("{variant} on {}: label increased", ng.name))?;
        }
    }
    Ok("16 variants, 6 root-based, all converge with non-increasing labels".into())
}

fn largest_component(el: &EdgeList) -> EdgeList {
    let oracle = oracle_from_edges(el.n, &el.edges);
    let mut sizes: HashMap<VertexId, usize> = HashMap::new();
    for &l in &oracle {
        *sizes.entry(l).or_default() += 1;
    }
    let (&big, _) = sizes.iter().max_by_key(|&(&l, &s)| (s, std::cmp::Reverse(l))).unwrap();
    let mut id = vec![VertexId::MAX; el.n];
    let mut next = 0;
    for v in 0..el.n {
        if oracle[v] == big {
            id[v] = next;
            next += 1;
        }
    }
    let edges = el
        .edges
        .iter()
        .filter(|&&(u, _)| oracle[u as usize] == big)
        .map(|&(u, v)| (id[u as usize], id[v as usize]))
        .collect();
    EdgeList::new(next as usize, edges).unwrap()
}

fn criterion_5(env: &Env) -> Outcome {
    let ex = env.ex(1);
    let kout = AlgorithmSpec::parse("kout+async+halve").unwrap();
    for ng in &env.suite {
        let (_, stats) = static_connectivity(ex, &ng.graph, &kout).map_err(|e| e.to_string())?;
        let n = ng.graph.num_vertices() as u64;
        ensure(stats.inspections("sample") <= 2 * n, || format!("{}: sample inspections", ng.name))?;
    }
    let (a, b, c) = RMAT_STREAM;
    let el = largest_component(&gen_rmat(14, 10, a, b, c, 1).map_err(|e| e.to_string())?);
    let g = build_csr(&el).map_err(|e| e.to_string())?;
    ensure(oracle_components(&g).iter().all(|&l| l == 0), || "rmat core not connected".into())?;
    let none = AlgorithmSpec::parse("none+async+halve").unwrap();
    let (_, with) = static_connectivity(ex, &g, &kout).map_err(|e| e.to_string())?;
    let (_, without) = static_connectivity(ex, &g, &none).map_err(|e| e.to_string())?;
    ensure(with.total_inspections() < without.total_inspections(), || {
        format!("{} >= {}", with.total_inspections(), without.total_inspections())
    })?;
    Ok(format!(
        "sample <= 2n on the suite; connected rmat ({} vertices) inspections {} with k-out vs {} without",
        g.num_vertices(),
        with.total_inspections(),
        without.total_inspections()
    ))
}

// Independent recount of the post-sampling census.
fn census(g: &Graph, labels: &[VertexId]) -> (f64, f64) {
    let n = g.num_vertices();
    let mut hist: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &l in labels {
        *hist.entry(l).or_default() += 1;
    }
    let mode = hist.iter().rev().max_by_key(|&(_, &c)| c).map_or(0, |(_, &c)| c);
    let mut crossing = 0usize;
    for (u, v) in g.undirected_edges() {
        if labels[u as usize] != labels[v as usize] {
            crossing += 2;
        }
    }
    let m = g.num_edges();
    (
        mode as f64 / n as f64,
        if m == 0 { 0.0 } else { crossing as f64 / m as f64 },
    )
}

fn criterion_6(env: &Env) -> Outcome {
    let ex = env.ex(1);
    let mut checked = 0;
    for ng in &env.suite {
        let g = &ng.graph;
        let n = g.num_vertices();
        for sampling in &Sampling::DEFAULTS[1..] {
            let spec = AlgorithmSpec::new(*sampling, Finish::UnionFind(UnionConfig::default())).with_seed(11);
            let (_, stats) = static_connectivity(ex, g, &spec).map_err(|e| e.to_string())?;
            let labels = Labels::make_set(n);
            let uf = UnionFind::new(UnionConfig::default(), n, spec.seed).map_err(|e| e.to_string())?;
            match *sampling {
                Sampling::KOut { k, mode } => {
                    kout_sample(ex, g, &labels, &uf, k, mode, spec.seed, None);
                }
                Sampling::Hb { n_edges } => {
                    hb_sample(ex, g, &labels, &uf, n_edges, None);
                }
                Sampling::Bfs { probes } => {
                    bfs_sample(ex, g, &labels, probes, spec.seed, None);
                }
                Sampling::None => unreachable!(),
            }
            let (cov, ic) = census(g, &labels.to_vec());
            ensure(cov == stats.cov && ic == stats.ic, || {
                format!("{spec} on {}: ({}, {}) vs census ({cov}, {ic})", ng.name, stats.cov, stats.ic)
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (graph, sampling) pairs match the census exactly"))
}

fn criterion_7(env: &Env) -> Outcome {
    const N: usize = 1 << 16;
    const OPS: usize = 1_000_000;
    let ex = env.ex(8);
    let configs = UnionConfig::all_valid();
    for rep in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(rep);
        let ops: Vec<(bool, VertexId, VertexId)> = (0..OPS)
            .map(|_| {
                (
                    rng.random_bool(0.5),
                    rng.random_range(0..N as VertexId),
                    rng.random_range(0..N as VertexId),
                )
            })
            .collect();
        let unions: Vec<(VertexId, VertexId)> = ops.iter().filter(|o| o.0).map(|o| (o.1, o.2)).collect();
        let oracle = oracle_from_edges(N, &unions);
        let cfg = configs[rep as usize % configs.len()];
        let alt = configs[(rep as usize + 20) % configs.len()];
        for cfg in [cfg, alt] {
            let p = Labels::make_set(N);
            let uf = UnionFind::new(cfg, N, rep).map_err(|e| e.to_string())?;
            let bad = AtomicBool::new(false);
            let ordered = cfg.union != UnionRule::Jtb;
            ex.for_each(0..OPS, |i| {
                let (is_union, u, v) = ops[i];
                if is_union {
                    uf.union(&p, u, v);
                } else {
                    let r = if cfg.union.is_rem() { find_naive(&p, u) } else { uf.find(&p, u) };
                    if ordered && r > u {
                        bad.store(true, Ordering::Relaxed);
                    }
                }
            });
            let where_ = || format!("{cfg:?} rep {rep}");
            ensure(!bad.load(Ordering::Relaxed), where_)?;
            if ordered {
                ensure((0..N as VertexId).all(|v| p.get(v) <= v), where_)?;
            }
            // acyclic: every chain reaches a root within N steps
            let acyclic = (0..N as VertexId).all(|mut v| {
                for _ in 0..=N {
                    let q = p.get(v);
                    if q == v {
                        return true;
                    }
                    v = q;
                }
                false
            });
            ensure(acyclic, where_)?;
            let roots: Vec<_> = (0..N as VertexId).map(|v| find_naive(&p, v)).collect();
            ensure(partition_equal(&roots, &oracle), where_)?;
        }
    }
    Ok(format!("20 repetitions x 2 configs x 10^6 ops at 8 workers, all {} configs covered", configs.len()))
}

fn criterion_8(env: &Env) -> Outcome {
    let ex = env.ex(1);
    let graphs = [&env.suite[7], &env.suite[10]];
    for ng in graphs {
        for spec in AlgorithmSpec::all() {
            let spec = spec.with_seed(42);
            let a = static_connectivity(ex, &ng.graph, &spec).map_err(|e| e.to_string())?.0;
            let b = static_connectivity(ex, &ng.graph, &spec).map_err(|e| e.to_string())?.0;
            ensure(a == b, || format!("labels differ for {spec} on {}", ng.name))?;
            if spec.is_root_based() {
                let a = spanning_forest(ex, &ng.graph, &spec).map_err(|e| e.to_string())?.0;
                let b = spanning_forest(ex, &ng.graph, &spec).map_err(|e| e.to_string())?.0;
                ensure(a.edges == b.edges, || format!("forest differs for {spec} on {}", ng.name))?;
            }
        }
    }
    let specs: Vec<_> = ["none+async+halve", "kout+rem_cas+split+splice", "hb+sv", "bfs+lt_prs", "kout:3:random+jtb"]
        .iter()
        .map(|s| AlgorithmSpec::parse(s).unwrap())
        .collect();
    let opts = BenchOptions {
        repeats: 1,
        warmup: false,
        timing: false,
        seed: 9,
    };
    let csv = || -> Result<Vec<u8>, String> {
        let mut out = Vec::new();
        let mut records = bench::sweep_static(&env.suite[7..9], &specs, &[1], &opts).map_err(|e| e.to_string())?;
        records.extend(
            bench::sweep_incremental(&env.suite[7..8], &specs[..1], &[0, 1000], &[0.5], &[1], &opts)
                .map_err(|e| e.to_string())?,
        );
        bench::write_csv(&records, &mut out).map_err(|e| e.to_string())?;
        Ok(out)
    };
    ensure(csv()? == csv()?, || "csv differs".into())?;
    Ok("labels, forests and csv identical across runs at 1 worker".into())
}

fn median_ms(ex: &Executor, g: &Graph, spec: &AlgorithmSpec) -> f64 {
    let mut t: Vec<f64> = (0..3)
        .map(|_| {
            let start = Instant::now();
            static_connectivity(ex, g, spec).unwrap();
            start.elapsed().as_secs_f64() * 1e3
        })
        .collect();
    t.sort_by(f64::total_cmp);
    t[1]
}

fn family(f: &Finish) -> String {
    match f {
        Finish::UnionFind(cfg) => cfg.union.token().to_owned(),
        Finish::LiuTarjan(_) => "lt".into(),
        other => other.token(),
    }
}

fn best_by_family(ex: &Executor, g: &Graph) -> Vec<(String, f64)> {
    let mut best: BTreeMap<String, f64> = BTreeMap::new();
    for f in Finish::all() {
        let t = median_ms(ex, g, &AlgorithmSpec::new(Sampling::None, f));
        let e = best.entry(family(&f)).or_insert(f64::INFINITY);
        *e = e.min(t);
    }
    let mut v: Vec<_> = best.into_iter().collect();
    v.sort_by(|a, b| a.1.total_cmp(&b.1));
    v
}

fn criterion_9(env: &Env) -> Outcome {
    let ex = env.ex(8);
    let (a, b, c) = RMAT_STREAM;
    let rmat = build_csr(&gen_rmat(14, 10, a, b, c, 1).unwrap()).unwrap();
    let ranked = best_by_family(ex, &rmat);
    let top: Vec<&str> = ranked.iter().take(2).map(|(f, _)| f.as_str()).collect();
    let path = build_csr(&generators::path(1 << 16)).unwrap();
    let on_path = best_by_family(ex, &path);
    let slowest = on_path.last().map(|(f, _)| f.clone()).unwrap_or_default();
    let fmt = |v: &[(String, f64)]| v.iter().map(|(f, t)| format!("{f}={t:.2}ms")).collect::<Vec<_>>().join(" ");
    // same path with shuffled ids, where in-order sweeps cannot carry a
    // label along the whole path in one round
    let mut ids: Vec<VertexId> = (0..1 << 16).collect();
    rand::seq::SliceRandom::shuffle(&mut ids[..], &mut ChaCha8Rng::seed_from_u64(4));
    let shuffled = EdgeList::new(ids.len(), ids.windows(2).map(|w| (w[0], w[1])).collect()).unwrap();
    let on_shuffled = best_by_family(ex, &build_csr(&shuffled).unwrap());
    let detail = format!(
        "rmat: {} | path: {} | shuffled path: {}",
        fmt(&ranked),
        fmt(&on_path),
        fmt(&on_shuffled)
    );
    let shape = top.contains(&"async") && top.contains(&"rem_cas") && slowest == "lp";
    if shape {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() -> ExitCode {
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let suite = desk_suite(1).expect("desk suite");
    let oracles = suite.iter().map(|ng| oracle_components(&ng.graph)).collect();
    let pools = [1, 2, 8].into_iter().map(|w| (w, Executor::new(w).unwrap())).collect();
    let env = Env { suite, oracles, pools };
    let criteria: [Criterion; 9] = [
        (1, "correctness sweep", criterion_1, true),
        (2, "spanning forest", criterion_2, true),
        (3, "incremental prefix equivalence", criterion_3, true),
        (4, "liu-tarjan family", criterion_4, true),
        (5, "sampling mechanics", criterion_5, true),
        (6, "cov/ic census", criterion_6, true),
        (7, "concurrent stress", criterion_7, true),
        (8, "determinism", criterion_8, true),
        (9, "performance trend (soft)", criterion_9, false),
    ];
    let failed = AtomicU64::new(0);
    for (id, name, check, gated) in criteria {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = check(&env);
        let secs = start.elapsed().as_secs_f64();
        let (word, detail) = match (&outcome, gated) {
            (Ok(d), _) => ("PASS", d),
            (Err(d), true) => ("FAIL", d),
            (Err(d), false) => ("SOFT-FAIL", d),
        };
        println!("criterion {id} {name}: {word} [{secs:.1}s] {detail}");
        if outcome.is_err() && gated {
            failed.fetch_add(1, Ordering::Relaxed);
        }
    }
    if failed.load(Ordering::Relaxed) == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
