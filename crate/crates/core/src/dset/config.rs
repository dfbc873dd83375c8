use std::fmt;

use serde::{Deserialize, Serialize};

use super::{FindRule, SpliceRule};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UnionRule {
    Async,
    Hooks,
    Early,
    RemLock,
    RemCas,
    /// Randomized linking by rank with two-try splitting.
    Jtb,
}

impl UnionRule {
    pub const ALL: [UnionRule; 6] = [
        UnionRule::Async,
        UnionRule::Hooks,
        UnionRule::Early,
        UnionRule::RemLock,
        UnionRule::RemCas,
        UnionRule::Jtb,
    ];

    pub fn token(self) -> &'static str {
        match self {
            UnionRule::Async => "async",
            UnionRule::Hooks => "hooks",
            UnionRule::Early => "early",
            UnionRule::RemLock => "rem_lock",
            UnionRule::RemCas => "rem_cas",
            UnionRule::Jtb => "jtb",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        UnionRule::ALL.into_iter().find(|r| r.token() == s)
    }

    pub fn is_rem(self) -> bool {
        matches!(self, UnionRule::RemLock | UnionRule::RemCas)
    }

    fn allowed_finds(self) -> &'static [FindRule] {
        use FindRule::*;
        match self {
            UnionRule::Async | UnionRule::Hooks | UnionRule::Early => {
                &[Naive, AtomicSplit, AtomicHalve, Compress]
            }
            UnionRule::RemLock | UnionRule::RemCas => &[Naive, AtomicSplit, AtomicHalve],
            UnionRule::Jtb => &[Naive, TwoTrySplit],
        }
    }

    fn allowed_splices(self) -> &'static [SpliceRule] {
        use SpliceRule::*;
        if self.is_rem() {
            &[SplitOne, HalveOne, SpliceAtomic]
        } else {
            &[None]
        }
    }
}

/// A union rule together with its find and splice options.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnionConfig {
    pub union: UnionRule,
    pub find: FindRule,
    pub splice: SpliceRule,
}

impl Default for UnionConfig {
    fn default() -> Self {
        UnionConfig::new(UnionRule::Async, FindRule::AtomicHalve, SpliceRule::None)
    }
}

impl fmt::Display for UnionConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}", self.union.token(), self.find.token())?;
        if self.splice != SpliceRule::None {
            write!(f, "+{}", self.splice.token())?;
        }
        Ok(())
    }
}

impl UnionConfig {
    pub const fn new(union: UnionRule, find: FindRule, splice: SpliceRule) -> Self {
        UnionConfig {
            union,
            find,
            splice,
        }
    }

    /// Every combination accepted by [`valid_combination`], in a fixed order.
    pub fn all_valid() -> Vec<UnionConfig> {
        let mut out = Vec::new();
        for union in UnionRule::ALL {
            for &find in union.allowed_finds() {
                for &splice in union.allowed_splices() {
                    out.push(UnionConfig::new(union, find, splice));
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        if valid_combination(*self) {
            return Ok(());
        }
        Err(Error::config(format!(
            "{self} is not a valid union-find combination; {}",
            matrix_help()
        )))
    }

    /// Whether only roots are ever relinked into another tree, which is what
    /// spanning forest and interleaved incremental queries need. Splicing
    /// moves a non-root subtree and so is excluded.
    pub fn is_root_based(&self) -> bool {
        self.splice != SpliceRule::SpliceAtomic
    }
}

pub fn valid_combination(cfg: UnionConfig) -> bool {
    cfg.union.allowed_finds().contains(&cfg.find) && cfg.union.allowed_splices().contains(&cfg.splice)
}

/// Human-readable description of the validity matrix.
pub fn matrix_help() -> String {
    let mut s = String::from("valid combinations are:");
    for union in UnionRule::ALL {
        let finds: Vec<_> = union.allowed_finds().iter().map(|f| f.token()).collect();
        let splices: Vec<_> = union.allowed_splices().iter().map(|r| r.token()).collect();
        s.push_str(&format!(
            " {} x find {{{}}} x splice {{{}}};",
            union.token(),
            finds.join(","),
            splices.join(",")
        ));
    }
    s.pop();
    s
}
