use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dset::{matrix_help, FindRule, SpliceRule, UnionConfig, UnionRule};
use crate::error::{Error, Result};
use crate::minbased::LtVariant;
use crate::sampling::{KOutMode, DEFAULT_HB_EDGES, DEFAULT_K, DEFAULT_PROBES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sampling {
    None,
    KOut { k: usize, mode: KOutMode },
    Hb { n_edges: usize },
    Bfs { probes: usize },
}

impl Sampling {
    pub const DEFAULTS: [Sampling; 4] = [
        Sampling::None,
        Sampling::KOut {
            k: DEFAULT_K,
            mode: KOutMode::FirstK,
        },
        Sampling::Hb {
            n_edges: DEFAULT_HB_EDGES,
        },
        Sampling::Bfs {
            probes: DEFAULT_PROBES,
        },
    ];

    pub fn token(&self) -> &'static str {
        match self {
            Sampling::None => "none",
            Sampling::KOut { .. } => "kout",
            Sampling::Hb { .. } => "hb",
            Sampling::Bfs { .. } => "bfs",
        }
    }
}

impl fmt::Display for Sampling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Sampling::KOut { k, mode } if k != DEFAULT_K || mode != KOutMode::FirstK => {
                write!(f, "kout:{k}")?;
                if mode == KOutMode::FirstPlusRandom {
                    f.write_str(":random")?;
                }
                Ok(())
            }
            Sampling::Hb { n_edges } if n_edges != DEFAULT_HB_EDGES => write!(f, "hb:{n_edges}"),
            Sampling::Bfs { probes } if probes != DEFAULT_PROBES => write!(f, "bfs:{probes}"),
            s => f.write_str(s.token()),
        }
    }
}

impl FromStr for Sampling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let head = parts.next().unwrap_or_default();
        let mut number = |default: usize| -> Result<usize> {
            match parts.next() {
                None => Ok(default),
                Some(x) => x
                    .parse()
                    .ok()
                    .filter(|&v: &usize| v >= 1)
                    .ok_or_else(|| Error::config(format!("bad sampling parameter {x:?} in {s:?}"))),
            }
        };
        let sampling = match head {
            "none" => Sampling::None,
            "kout" => {
                let k = number(DEFAULT_K)?;
                let mode = match parts.next() {
                    None | Some("first") => KOutMode::FirstK,
                    Some("random") => KOutMode::FirstPlusRandom,
                    Some(x) => return Err(Error::config(format!("unknown k-out mode {x:?}"))),
                };
                Sampling::KOut { k, mode }
            }
            "hb" => Sampling::Hb {
                n_edges: number(DEFAULT_HB_EDGES)?,
            },
            "bfs" => Sampling::Bfs {
                probes: number(DEFAULT_PROBES)?,
            },
            _ => {
                return Err(Error::config(format!(
                    "unknown sampling {s:?}; expected none, kout[:k[:random]], hb[:n] or bfs[:probes]"
                )))
            }
        };
        if parts.next().is_some() {
            return Err(Error::config(format!("too many parameters in sampling {s:?}")));
        }
        Ok(sampling)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Finish {
    UnionFind(UnionConfig),
    ShiloachVishkin,
    LiuTarjan(LtVariant),
    Stergiou,
    LabelPropagation,
}

impl Finish {
    /// Every valid finish: 32 union-find configurations, Shiloach-Vishkin,
    /// 16 Liu-Tarjan variants, Stergiou and label propagation.
    pub fn all() -> Vec<Finish> {
        let mut out: Vec<Finish> = UnionConfig::all_valid().into_iter().map(Finish::UnionFind).collect();
        out.push(Finish::ShiloachVishkin);
        out.extend(LtVariant::ALL.into_iter().map(Finish::LiuTarjan));
        out.push(Finish::Stergiou);
        out.push(Finish::LabelPropagation);
        out
    }

    pub fn is_root_based(&self) -> bool {
        match self {
            Finish::UnionFind(cfg) => cfg.is_root_based(),
            Finish::ShiloachVishkin => true,
            Finish::LiuTarjan(v) => v.is_root_based(),
            Finish::Stergiou | Finish::LabelPropagation => false,
        }
    }

    /// Token naming the finish algorithm, without find or splice options.
    pub fn token(&self) -> String {
        match self {
            Finish::UnionFind(cfg) => cfg.union.token().to_owned(),
            Finish::ShiloachVishkin => "sv".to_owned(),
            Finish::LiuTarjan(v) => format!("lt_{}", v.name().to_lowercase()),
            Finish::Stergiou => "stergiou".to_owned(),
            Finish::LabelPropagation => "lp".to_owned(),
        }
    }

    pub fn union_config(&self) -> Option<UnionConfig> {
        match self {
            Finish::UnionFind(cfg) => Some(*cfg),
            _ => None,
        }
    }
}

impl fmt::Display for Finish {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finish::UnionFind(cfg) => write!(f, "{cfg}"),
            other => f.write_str(&other.token()),
        }
    }
}

/// A complete algorithm: sampling phase, finish phase, and the seed for
/// every random choice made along the way.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgorithmSpec {
    pub sampling: Sampling,
    pub finish: Finish,
    pub seed: u64,
}

impl Default for AlgorithmSpec {
    fn default() -> Self {
        AlgorithmSpec {
            sampling: Sampling::DEFAULTS[1],
            finish: Finish::UnionFind(UnionConfig::default()),
            seed: 0,
        }
    }
}

impl AlgorithmSpec {
    pub fn new(sampling: Sampling, finish: Finish) -> Self {
        AlgorithmSpec {
            sampling,
            finish,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Every sampling (with default parameters) crossed with every finish.
    pub fn all() -> Vec<AlgorithmSpec> {
        let finishes = Finish::all();
        Sampling::DEFAULTS
            .iter()
            .flat_map(|&s| finishes.iter().map(move |&f| AlgorithmSpec::new(s, f)))
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if let Finish::UnionFind(cfg) = self.finish {
            cfg.validate()?;
        }
        let ok = match self.sampling {
            Sampling::None => true,
            Sampling::KOut { k, .. } => k >= 1,
            Sampling::Hb { n_edges } => n_edges >= 1,
            Sampling::Bfs { probes } => probes >= 1,
        };
        if !ok {
            return Err(Error::config(format!("sampling parameters must be at least 1 in {self}")));
        }
        Ok(())
    }

    pub fn is_root_based(&self) -> bool {
        self.finish.is_root_based()
    }

    /// Parses `sample+finish[+find[+splice]]`, for example `kout+async+halve`
    /// or `none+rem_cas+split+splice`.
    pub fn parse(s: &str) -> Result<Self> {
        s.parse()
    }
}

impl fmt::Display for AlgorithmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}", self.sampling, self.finish)
    }
}

fn unknown(kind: &str, token: &str, valid: &[&str]) -> Error {
    Error::config(format!(
        "unknown {kind} {token:?}; valid: {}\n{}",
        valid.join(", "),
        matrix_help()
    ))
}

impl FromStr for AlgorithmSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens: Vec<&str> = s.trim().split('+').collect();
        if tokens.len() < 2 || tokens.len() > 4 {
            return Err(Error::config(format!(
                "spec {s:?} must have the form sample+finish[+find[+splice]]\n{}",
                matrix_help()
            )));
        }
        let sampling: Sampling = tokens[0].parse()?;
        let name = tokens[1];
        let finish = if let Some(rule) = UnionRule::from_token(name) {
            let find = match tokens.get(2) {
                Some(t) => FindRule::from_token(t).ok_or_else(|| {
                    unknown("find rule", t, &FindRule::ALL.map(FindRule::token))
                })?,
                None => match rule {
                    UnionRule::Jtb => FindRule::TwoTrySplit,
                    _ => FindRule::AtomicHalve,
                },
            };
            let splice = match tokens.get(3) {
                Some(t) => SpliceRule::from_token(t).ok_or_else(|| {
                    unknown("splice rule", t, &SpliceRule::ALL.map(SpliceRule::token))
                })?,
                None if rule.is_rem() => SpliceRule::HalveOne,
                None => SpliceRule::None,
            };
            let cfg = UnionConfig::new(rule, find, splice);
            cfg.validate()?;
            Finish::UnionFind(cfg)
        } else {
            if tokens.len() > 2 {
                return Err(Error::config(format!(
                    "find and splice options only apply to union-find finishes, not {name:?}"
                )));
            }
            match name {
                "sv" => Finish::ShiloachVishkin,
                "stergiou" => Finish::Stergiou,
                "lp" => Finish::LabelPropagation,
                _ => match name.strip_prefix("lt_").and_then(LtVariant::from_name) {
                    Some(v) => Finish::LiuTarjan(v),
                    None => {
                        let mut valid: Vec<String> =
                            UnionRule::ALL.iter().map(|r| r.token().to_owned()).collect();
                        valid.extend(["sv", "stergiou", "lp"].map(String::from));
                        valid.extend(LtVariant::ALL.iter().map(|v| format!("lt_{}", v.name().to_lowercase())));
                        let refs: Vec<&str> = valid.iter().map(String::as_str).collect();
                        return Err(unknown("finish", name, &refs));
                    }
                },
            }
        };
        Ok(AlgorithmSpec::new(sampling, finish))
    }
}
