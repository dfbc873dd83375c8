use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::suite::{desk_suite, NamedGraph};
use super::{edge_inspection_report, sweep_incremental, sweep_static, BenchOptions, Record};
use crate::driver::AlgorithmSpec;
use crate::error::{Error, Result};
use crate::graph::generators::RMAT_STREAM;
use crate::graph::{build_csr, gen_ba, gen_rmat, load_graph};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BenchMode {
    #[default]
    Static,
    Incremental,
    Inspections,
}

/// A benchmark input: a file or a generator call.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphSource {
    File { path: PathBuf, name: Option<String> },
    Rmat { scale: u32, edge_factor: usize, seed: Option<u64> },
    Ba { n: usize, attach: usize, seed: Option<u64> },
}

/// Benchmark description, usually read from TOML:
///
/// ```toml
/// mode = "static"
/// specs = ["none+async+halve", "kout+rem_cas+split+halve_one"]
/// workers = [1, 8]
/// repeats = 5
/// suite = "desk"
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchConfig {
    pub mode: BenchMode,
    /// Spec strings, or the single entry "all".
    pub specs: Vec<String>,
    pub workers: Vec<usize>,
    pub repeats: usize,
    pub warmup: bool,
    pub timing: bool,
    pub seed: u64,
    /// "desk" for the built-in suite, "none" to use only `graphs`.
    pub suite: String,
    pub graphs: Vec<GraphSource>,
    pub batch_sizes: Vec<usize>,
    pub ratios: Vec<f64>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            mode: BenchMode::Static,
            specs: vec!["none+async+halve".into(), "kout+async+halve".into()],
            workers: vec![1],
            repeats: 5,
            warmup: true,
            timing: true,
            seed: 1,
            suite: "desk".into(),
            graphs: Vec::new(),
            batch_sizes: vec![0],
            ratios: vec![0.0],
        }
    }
}

impl BenchConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::config(format!("bad bench config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn specs(&self) -> Result<Vec<AlgorithmSpec>> {
        if self.specs.iter().any(|s| s == "all") {
            let all = AlgorithmSpec::all();
            return Ok(match self.mode {
                BenchMode::Static => all,
                _ => all
                    .into_iter()
                    .filter(|s| s.sampling == crate::driver::Sampling::None && s.is_root_based())
                    .collect(),
            });
        }
        self.specs.iter().map(|s| AlgorithmSpec::parse(s)).collect()
    }

    pub fn graphs(&self) -> Result<Vec<NamedGraph>> {
        let mut out = match self.suite.as_str() {
            "desk" => desk_suite(self.seed)?,
            "none" | "" => Vec::new(),
            other => return Err(Error::config(format!("unknown suite {other:?}; expected desk or none"))),
        };
        let (a, b, c) = RMAT_STREAM;
        for src in &self.graphs {
            out.push(match src {
                GraphSource::File { path, name } => NamedGraph::new(
                    name.clone().unwrap_or_else(|| path.display().to_string()),
                    load_graph(path)?,
                ),
                GraphSource::Rmat {
                    scale,
                    edge_factor,
                    seed,
                } => NamedGraph::new(
                    format!("rmat_{scale}_{edge_factor}"),
                    build_csr(&gen_rmat(*scale, *edge_factor, a, b, c, seed.unwrap_or(self.seed))?)?,
                ),
                GraphSource::Ba { n, attach, seed } => NamedGraph::new(
                    format!("ba_{n}_{attach}"),
                    build_csr(&gen_ba(*n, *attach, seed.unwrap_or(self.seed))?)?,
                ),
            });
        }
        if out.is_empty() {
            return Err(Error::config("bench config selects no graphs"));
        }
        Ok(out)
    }

    pub fn options(&self) -> BenchOptions {
        BenchOptions {
            repeats: self.repeats,
            warmup: self.warmup,
            timing: self.timing,
            seed: self.seed,
        }
    }

    pub fn run(&self) -> Result<Vec<Record>> {
        let graphs = self.graphs()?;
        let specs = self.specs()?;
        let opts = self.options();
        match self.mode {
            BenchMode::Static => sweep_static(&graphs, &specs, &self.workers, &opts),
            BenchMode::Incremental => {
                sweep_incremental(&graphs, &specs, &self.batch_sizes, &self.ratios, &self.workers, &opts)
            }
            BenchMode::Inspections => {
                let mut out = Vec::new();
                for g in &graphs {
                    out.extend(edge_inspection_report(g, &specs, &self.batch_sizes, &opts)?);
                }
                Ok(out)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_toml() {
        let cfg = BenchConfig::from_toml(
            r#"
            mode = "incremental"
            specs = ["none+sv"]
            workers = [1, 2]
            suite = "none"
            batch_sizes = [10, 100]
            ratios = [1.0]
            [[graphs]]
            kind = "rmat"
            scale = 8
            edge_factor = 4
            "#,
        )
        .unwrap();
        assert_eq!(cfg.mode, BenchMode::Incremental);
        assert_eq!(cfg.graphs().unwrap()[0].name, "rmat_8_4");
        assert_eq!(cfg.repeats, 5);
        assert!(BenchConfig::from_toml("bogus = 1").is_err());
    }

    #[test]
    fn all_specs_filtered_by_mode() {
        let mut cfg = BenchConfig {
            specs: vec!["all".into()],
            ..Default::default()
        };
        assert_eq!(cfg.specs().unwrap().len(), 204);
        cfg.mode = BenchMode::Incremental;
        let specs = cfg.specs().unwrap();
        assert!(specs.iter().all(|s| s.is_root_based()));
        // 14 union-find without Rem, 12 Rem with one-step splicing, sv, 6 lt
        assert_eq!(specs.len(), 14 + 12 + 1 + 6);
    }
}
