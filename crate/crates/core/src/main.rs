use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use connlab::bench::{self, BenchConfig, NamedGraph};
use connlab::driver::{spanning_forest, static_connectivity, AlgorithmSpec, IncrementalSession};
use connlab::graph::generators::RMAT_DEFAULT;
use connlab::graph::{build_csr, gen_ba, gen_rmat, load_graph, Graph};
use connlab::validate::{check_forest, component_count, oracle_components, oracle_union_find, partition_equal};
use connlab::{Error, Executor, Result};

#[derive(Parser)]
#[command(name = "connlab", version, about = "Parallel min-based graph connectivity")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads; 1 runs deterministically.
    #[arg(long, global = true, env = "CONN_LAB_THREADS")]
    workers: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph.
    Gen(GenArgs),
    /// Connected components.
    Static(StaticArgs),
    /// Spanning forest.
    Forest(ForestArgs),
    /// Batch-incremental connectivity over an edge stream.
    Incremental(IncArgs),
    /// Run a benchmark described by a TOML file.
    Bench(BenchArgs),
    /// Print the oracle component census of a graph.
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Rmat,
    Ba,
}

#[derive(Args)]
struct GenArgs {
    kind: GenKind,
    #[arg(long, default_value_t = 10)]
    scale: u32,
    #[arg(long, default_value_t = 8)]
    ef: usize,
    /// RMAT quadrant probabilities a,b,c.
    #[arg(long, value_delimiter = ',')]
    abc: Option<Vec<f64>>,
    #[arg(long, default_value_t = 1024)]
    n: usize,
    #[arg(long, default_value_t = 5)]
    attach: usize,
    /// Write the binary CSR format instead of text.
    #[arg(long)]
    binary: bool,
    #[arg(long, short)]
    out: PathBuf,
}

#[derive(Args)]
struct SpecArgs {
    /// Full spec string `sample+finish[+find[+splice]]`; overrides the parts.
    #[arg(long)]
    spec: Option<String>,
    #[arg(long, default_value = "kout")]
    sample: String,
    #[arg(long, default_value = "async")]
    finish: String,
    #[arg(long)]
    find: Option<String>,
    #[arg(long)]
    splice: Option<String>,
}

impl SpecArgs {
    fn resolve(&self, seed: u64) -> Result<AlgorithmSpec> {
        let text = match &self.spec {
            Some(s) => s.clone(),
            None => {
                let mut parts = vec![self.sample.clone(), self.finish.clone()];
                match (&self.find, &self.splice) {
                    (Some(f), Some(s)) => parts.extend([f.clone(), s.clone()]),
                    (Some(f), None) => parts.push(f.clone()),
                    (None, Some(_)) => {
                        return Err(Error::Config("--splice needs --find as well".into()));
                    }
                    (None, None) => {}
                }
                parts.join("+")
            }
        };
        Ok(AlgorithmSpec::parse(&text)?.with_seed(seed))
    }
}

#[derive(Args)]
struct StaticArgs {
    graph: PathBuf,
    #[command(flatten)]
    spec: SpecArgs,
    /// Check the result against the BFS oracle.
    #[arg(long)]
    verify: bool,
    /// Print run statistics as JSON.
    #[arg(long)]
    json: bool,
    /// Write one label per line.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ForestArgs {
    graph: PathBuf,
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long)]
    no_verify: bool,
    #[arg(long)]
    json: bool,
    /// Write one `u v` forest edge per line.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct IncArgs {
    /// Stream file (`i u v`, `q u v`, `b` between batches).
    stream: Option<PathBuf>,
    /// Build the stream from a graph's edges in random order instead.
    #[arg(long, conflicts_with = "stream")]
    from_graph: Option<PathBuf>,
    /// Operations per batch; 0 keeps one batch (or the file's batches).
    #[arg(long, default_value_t = 0)]
    batch_size: usize,
    /// Inserts per query when generating a stream; 0 means no queries.
    #[arg(long, default_value_t = 0.0)]
    ratio: f64,
    #[arg(long)]
    spec: Option<String>,
    /// Check every query answer against a sequential replay.
    #[arg(long)]
    verify: bool,
    /// Run union-find finishes without the two sub-phases.
    #[arg(long)]
    racy: bool,
    /// Write the final labels.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    config: PathBuf,
    /// CSV destination; stdout when absent.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    graph: PathBuf,
}

fn executor(workers: Option<usize>) -> Result<Executor> {
    match workers {
        Some(w) => Executor::new(w),
        None => Ok(Executor::sequential()),
    }
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_labels(path: &Path, labels: &[u32]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    for l in labels {
        writeln!(w, "{l}")?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_gen(cli: &Cli, a: &GenArgs) -> Result<bool> {
    let el = match a.kind {
        GenKind::Rmat => {
            let (pa, pb, pc) = match a.abc.as_deref() {
                None => RMAT_DEFAULT,
                Some(&[x, y, z]) => (x, y, z),
                Some(_) => return Err(Error::Config("--abc takes three probabilities".into())),
            };
            gen_rmat(a.scale, a.ef, pa, pb, pc, cli.seed)?
        }
        GenKind::Ba => gen_ba(a.n, a.attach, cli.seed)?,
    };
    if a.binary {
        build_csr(&el)?.save_binary(&a.out)?;
    } else {
        el.save_text(&a.out)?;
    }
    println!("n: {}", el.n);
    println!("m: {}", el.len());
    Ok(true)
}

fn cmd_static(cli: &Cli, a: &StaticArgs) -> Result<bool> {
    let spec = a.spec.resolve(cli.seed)?;
    let ex = executor(cli.workers)?;
    let g = load_graph(&a.graph)?;
    let start = Instant::now();
    let (labels, stats) = static_connectivity(&ex, &g, &spec)?;
    let elapsed = start.elapsed().as_secs_f64();
    println!("spec: {spec}");
    println!("components: {}", stats.component_count);
    println!("time_ms: {:.3}", elapsed * 1e3);
    for (phase, t) in &stats.phase_times {
        println!("  {phase}: {:.3} ms", t * 1e3);
    }
    if a.json {
        println!("{}", serde_json::to_string_pretty(&stats)?);
    }
    if let Some(out) = &a.out {
        write_labels(out, &labels)?;
    }
    if a.verify {
        let ok = labels == oracle_components(&g);
        println!("verify: {}", if ok { "pass" } else { "FAIL" });
        return Ok(ok);
    }
    Ok(true)
}

fn cmd_forest(cli: &Cli, a: &ForestArgs) -> Result<bool> {
    let spec = a.spec.resolve(cli.seed)?;
    let ex = executor(cli.workers)?;
    let g = load_graph(&a.graph)?;
    let (forest, stats) = spanning_forest(&ex, &g, &spec)?;
    println!("spec: {spec}");
    println!("forest edges: {}", forest.populated());
    println!("components: {}", stats.component_count);
    if let Some(out) = &a.out {
        let mut w = BufWriter::new(File::create(out)?);
        for (u, v) in forest.iter() {
            writeln!(w, "{u} {v}")?;
        }
        w.flush()?;
    }
    if a.no_verify {
        return Ok(true);
    }
    let report = check_forest(&g, &forest.edges, &oracle_components(&g));
    if a.json {
        println!("{}", report.to_json());
    }
    println!("verify: {}", if report.passed() { "pass" } else { "FAIL" });
    if !a.json {
        for v in &report.violations {
            println!("  {v:?}");
        }
    }
    Ok(report.passed())
}

fn cmd_incremental(cli: &Cli, a: &IncArgs) -> Result<bool> {
    let spec = AlgorithmSpec::parse(a.spec.as_deref().unwrap_or("none+async+halve"))?.with_seed(cli.seed);
    let ex = executor(cli.workers)?;
    let mut batches = match (&a.stream, &a.from_graph) {
        (Some(path), _) => {
            let batches = bench::read_stream(BufReader::new(File::open(path)?), path)?;
            if a.batch_size > 0 {
                let ops: Vec<_> = batches.into_iter().flat_map(|b| b.ops).collect();
                bench::split_batches(&ops, a.batch_size)
            } else {
                batches
            }
        }
        (None, Some(path)) => {
            let ng = NamedGraph::new(path.display().to_string(), load_graph(path)?);
            bench::split_batches(&bench::make_stream(&ng, a.ratio, cli.seed), a.batch_size)
        }
        (None, None) => return Err(Error::Config("give a stream file or --from-graph".into())),
    };
    let n = bench::stream_vertices(&batches);
    let mut session = IncrementalSession::new(ex, spec, a.racy)?;
    session.reserve(n)?;
    let (mut ops, mut seconds, mut hits) = (0usize, 0.0, 0usize);
    for (i, b) in batches.iter_mut().enumerate() {
        let o = session.apply(b)?;
        let size = o.inserts + o.queries;
        let tput = if o.seconds > 0.0 { size as f64 / o.seconds } else { 0.0 };
        println!(
            "batch {i}: inserts {} queries {} hits {} throughput {tput:.0} ops/s",
            o.inserts, o.queries, o.hits
        );
        ops += size;
        seconds += o.seconds;
        hits += o.hits;
    }
    let labels = session.labels();
    println!("batches: {}", batches.len());
    println!("hits: {hits}");
    println!("components: {}", component_count(&labels));
    if seconds > 0.0 {
        println!("throughput: {:.0} ops/s", ops as f64 / seconds);
    }
    if let Some(out) = &a.out {
        write_labels(out, &labels)?;
    }
    if a.verify {
        let res = bench::check_stream(&batches, n);
        match &res {
            Ok(()) => println!("verify: pass"),
            Err(e) => println!("verify: FAIL ({e})"),
        }
        return Ok(res.is_ok());
    }
    Ok(true)
}

fn cmd_bench(cli: &Cli, a: &BenchArgs) -> Result<bool> {
    let mut cfg = BenchConfig::load(&a.config)?;
    if let Some(w) = cli.workers {
        cfg.workers = vec![w];
    }
    let records = cfg.run()?;
    bench::write_csv(&records, sink(a.out.as_deref())?)?;
    Ok(true)
}

fn cmd_validate(a: &ValidateArgs) -> Result<bool> {
    let g: Graph = load_graph(&a.graph)?;
    g.check()?;
    let labels = oracle_components(&g);
    let agree = partition_equal(&labels, &oracle_union_find(&g));
    let mut sizes = std::collections::BTreeMap::<u32, usize>::new();
    for &l in &labels {
        *sizes.entry(l).or_default() += 1;
    }
    let largest = sizes.values().copied().max().unwrap_or(0);
    let isolated = (0..g.num_vertices() as u32).filter(|&v| g.degree(v) == 0).count();
    let census = serde_json::json!({
        "vertices": g.num_vertices(),
        "edges": g.num_edges() / 2,
        "components": sizes.len(),
        "largest_component": largest,
        "isolated_vertices": isolated,
        "oracles_agree": agree,
    });
    println!("{}", serde_json::to_string_pretty(&census)?);
    Ok(agree)
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.cmd {
        Cmd::Gen(a) => cmd_gen(cli, a),
        Cmd::Static(a) => cmd_static(cli, a),
        Cmd::Forest(a) => cmd_forest(cli, a),
        Cmd::Incremental(a) => cmd_incremental(cli, a),
        Cmd::Bench(a) => cmd_bench(cli, a),
        Cmd::Validate(a) => cmd_validate(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
