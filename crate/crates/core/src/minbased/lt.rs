use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU32, AtomicU64, AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use super::{check_rounds, notify, shortcut_full, shortcut_once, shortcut_scope, EdgeSource, FinishStats, Phase, RoundObserver};
use crate::dset::{ForestSlots, Labels};
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::VertexId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConnectRule {
    /// Each endpoint is sent to the other.
    Connect,
    /// Each endpoint's parent is sent to the other endpoint's parent.
    ParentConnect,
    /// Each endpoint's parent is sent to the other endpoint and to the
    /// other endpoint's parent.
    ExtendedConnect,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UpdateRule {
    Update,
    /// Only vertices that are roots at the start of the round move.
    RootUpdate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShortcutRule {
    Shortcut,
    FullShortcut,
}

/// One Liu-Tarjan rule combination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LtVariant {
    pub connect: ConnectRule,
    pub update: UpdateRule,
    pub shortcut: ShortcutRule,
    pub alter: bool,
}

const fn lt(connect: ConnectRule, update: UpdateRule, shortcut: ShortcutRule, alter: bool) -> LtVariant {
    LtVariant {
        connect,
        update,
        shortcut,
        alter,
    }
}

use ConnectRule::*;
use ShortcutRule::*;
use UpdateRule::*;

impl LtVariant {
    pub const CUSA: LtVariant = lt(Connect, Update, Shortcut, true);
    pub const CRSA: LtVariant = lt(Connect, RootUpdate, Shortcut, true);
    pub const PUSA: LtVariant = lt(ParentConnect, Update, Shortcut, true);
    pub const PRSA: LtVariant = lt(ParentConnect, RootUpdate, Shortcut, true);
    pub const PUS: LtVariant = lt(ParentConnect, Update, Shortcut, false);
    pub const PRS: LtVariant = lt(ParentConnect, RootUpdate, Shortcut, false);
    pub const EUSA: LtVariant = lt(ExtendedConnect, Update, Shortcut, true);
    pub const EUS: LtVariant = lt(ExtendedConnect, Update, Shortcut, false);
    pub const CUFA: LtVariant = lt(Connect, Update, FullShortcut, true);
    pub const CRFA: LtVariant = lt(Connect, RootUpdate, FullShortcut, true);
    pub const PUFA: LtVariant = lt(ParentConnect, Update, FullShortcut, true);
    pub const PRFA: LtVariant = lt(ParentConnect, RootUpdate, FullShortcut, true);
    pub const PUF: LtVariant = lt(ParentConnect, Update, FullShortcut, false);
    pub const PRF: LtVariant = lt(ParentConnect, RootUpdate, FullShortcut, false);
    pub const EUFA: LtVariant = lt(ExtendedConnect, Update, FullShortcut, true);
    pub const EUF: LtVariant = lt(ExtendedConnect, Update, FullShortcut, false);

    pub const ALL: [LtVariant; 16] = [
        Self::CUSA,
        Self::CRSA,
        Self::PUSA,
        Self::PRSA,
        Self::PUS,
        Self::PRS,
        Self::EUSA,
        Self::EUS,
        Self::CUFA,
        Self::CRFA,
        Self::PUFA,
        Self::PRFA,
        Self::PUF,
        Self::PRF,
        Self::EUFA,
        Self::EUF,
    ];

    pub fn name(self) -> String {
        let mut s = String::with_capacity(4);
        s.push(match self.connect {
            Connect => 'C',
            ParentConnect => 'P',
            ExtendedConnect => 'E',
        });
        s.push(match self.update {
            Update => 'U',
            RootUpdate => 'R',
        });
        s.push(match self.shortcut {
            Shortcut => 'S',
            FullShortcut => 'F',
        });
        if self.alter {
            s.push('A');
        }
        s
    }

    /// Looks a variant up by its four-letter name, case-insensitively.
    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.name().eq_ignore_ascii_case(name))
    }

    pub fn is_root_based(self) -> bool {
        self.update == RootUpdate
    }
}

impl fmt::Display for LtVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

const NO_MESSAGE: u64 = u64::MAX;

// Minimum message per recipient, packed as (value, working edge index) so
// that the winner is independent of processing order.
struct Mailbox {
    slots: Vec<AtomicU64>,
    touched: Vec<AtomicU32>,
    count: AtomicUsize,
}

impl Mailbox {
    fn new(n: usize) -> Self {
        Mailbox {
            slots: (0..n).map(|_| AtomicU64::new(NO_MESSAGE)).collect(),
            touched: (0..n).map(|_| AtomicU32::new(0)).collect(),
            count: AtomicUsize::new(0),
        }
    }

    #[inline]
    fn send(&self, p: &Labels, to: VertexId, value: VertexId, edge: usize) {
        if value >= p.get(to) {
            return;
        }
        let packed = (value as u64) << 32 | edge as u64;
        if self.slots[to as usize].fetch_min(packed, Ordering::AcqRel) == NO_MESSAGE {
            let i = self.count.fetch_add(1, Ordering::AcqRel);
            self.touched[i].store(to, Ordering::Release);
        }
    }
}

/// Runs the given Liu-Tarjan variant to a fixpoint. Each round sends
/// messages over the working edge list, applies the minimum message per
/// vertex, shortcuts, and optionally rewrites the edges to current parents.
///
/// With `forest`, the variant must be root-based; every root that is
/// re-parented records the original edge its winning message came from.
pub fn liu_tarjan(
    ex: &Executor,
    src: &EdgeSource<'_>,
    labels: &Labels,
    variant: LtVariant,
    forest: Option<&ForestSlots>,
    mut obs: Option<&mut dyn RoundObserver>,
) -> Result<FinishStats> {
    if forest.is_some() && !variant.is_root_based() {
        return Err(Error::config(format!(
            "liu-tarjan {variant} is not root-based and cannot build a spanning forest"
        )));
    }
    let n = labels.len();
    let (mut work, mut inspections) = src.working(ex);
    assert!(work.edges.len() < 1 << 32, "working edge indices must fit in 32 bits");
    let mail = Mailbox::new(n);
    let mut stats = FinishStats::default();
    loop {
        stats.rounds += 1;
        check_rounds("liu-tarjan", stats.rounds, n)?;
        let round = stats.rounds;

        let edges = &work.edges;
        ex.for_each(0..edges.len(), |i| {
            let (a, b) = edges[i];
            match variant.connect {
                Connect => {
                    mail.send(labels, a, b, i);
                    mail.send(labels, b, a, i);
                }
                ParentConnect => {
                    let (pa, pb) = (labels.get(a), labels.get(b));
                    mail.send(labels, pa, pb, i);
                    mail.send(labels, pb, pa, i);
                }
                ExtendedConnect => {
                    let (pa, pb) = (labels.get(a), labels.get(b));
                    mail.send(labels, a, pb, i);
                    mail.send(labels, b, pa, i);
                    mail.send(labels, pa, pb, i);
                    mail.send(labels, pb, pa, i);
                }
            }
        });
        inspections += edges.len() as u64;
        notify(&mut obs, round, Phase::Connect, labels);

        let recipients = mail.count.swap(0, Ordering::AcqRel);
        let updated = ex.sum(0..recipients, |j| {
            let x = mail.touched[j].load(Ordering::Acquire);
            let packed = mail.slots[x as usize].swap(NO_MESSAGE, Ordering::AcqRel);
            let value = (packed >> 32) as VertexId;
            let moved = match variant.update {
                Update => labels.write_min(x, value),
                RootUpdate => labels.cas(x, x, value),
            };
            if moved {
                if let Some(f) = forest {
                    let (u, v) = src.original(work.origin[packed as u32 as usize]);
                    f.record(x, u, v);
                }
            }
            moved as u64
        });
        notify(&mut obs, round, Phase::Update, labels);

        let shortcut = match variant.shortcut {
            Shortcut => shortcut_scope(ex, src, labels, shortcut_once),
            FullShortcut => shortcut_scope(ex, src, labels, shortcut_full),
        };
        notify(&mut obs, round, Phase::Shortcut, labels);

        let mut altered = false;
        if variant.alter {
            let rewritten = ex.map_collect(work.edges.len(), |i| {
                let (a, b) = work.edges[i];
                (labels.get(a), labels.get(b))
            });
            let changed = AtomicBool::new(false);
            let keep = ex.filter_indices(rewritten.len(), |i| {
                if rewritten[i] != work.edges[i] {
                    changed.store(true, Ordering::Relaxed);
                }
                rewritten[i].0 != rewritten[i].1
            });
            altered = changed.into_inner();
            if altered {
                work.origin = keep.iter().map(|&i| work.origin[i as usize]).collect();
                work.edges = keep.iter().map(|&i| rewritten[i as usize]).collect();
            }
            notify(&mut obs, round, Phase::Alter, labels);
        }

        if updated == 0 && !shortcut && !altered {
            break;
        }
    }
    stats.inspections = inspections;
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_csr, generators, EdgeList};
    use crate::minbased::Snapshots;
    use crate::validate::oracle_components;

    fn chase(p: &Labels) -> Vec<VertexId> {
        (0..p.len() as VertexId).map(|v| crate::dset::find_naive(p, v)).collect()
    }

    #[test]
    fn sixteen_named_variants_six_root_based() {
        let names: Vec<String> = LtVariant::ALL.iter().map(|v| v.name()).collect();
        let mut dedup = names.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 16);
        let roots: Vec<String> = LtVariant::ALL
            .iter()
            .filter(|v| v.is_root_based())
            .map(|v| v.name())
            .collect();
        assert_eq!(roots, ["CRSA", "PRSA", "PRS", "CRFA", "PRFA", "PRF"]);
        assert!(LtVariant::ALL.iter().all(|v| v.alter || v.connect != Connect));
        assert_eq!(LtVariant::from_name("prs"), Some(LtVariant::PRS));
        assert!(!LtVariant::EUF.is_root_based());
        assert_eq!(LtVariant::from_name("CUS"), None);
    }

    #[test]
    fn triangle_and_isolated_vertex() {
        let g = build_csr(&EdgeList::new(4, vec![(0, 1), (1, 2), (2, 0)]).unwrap()).unwrap();
        let ex = Executor::sequential();
        for v in LtVariant::ALL {
            let p = Labels::make_set(4);
            liu_tarjan(&ex, &EdgeSource::all(&g), &p, v, None, None).unwrap();
            assert_eq!(chase(&p), vec![0, 0, 0, 3], "{v}");
        }
    }

    #[test]
    fn all_variants_match_oracle_and_never_increase() {
        for seed in 0..3 {
            let g = build_csr(&generators::gnp(512, 0.004, seed)).unwrap();
            let oracle = oracle_components(&g);
            for w in [1, 4] {
                let ex = Executor::new(w).unwrap();
                for v in LtVariant::ALL {
                    let p = Labels::make_set(512);
                    let mut snaps = Snapshots::default();
                    liu_tarjan(&ex, &EdgeSource::all(&g), &p, v, None, Some(&mut snaps)).unwrap();
                    assert_eq!(chase(&p), oracle, "{v} seed {seed}");
                    let mut prev: Vec<VertexId> = (0..512).collect();
                    for (_, _, s) in &snaps.taken {
                        assert!(s.iter().zip(&prev).all(|(a, b)| a <= b), "{v}");
                        prev = s.clone();
                    }
                }
            }
        }
    }

    #[test]
    fn root_based_update_touches_roots_only() {
        let g = build_csr(&generators::gnp(300, 0.01, 9)).unwrap();
        let ex = Executor::sequential();
        for v in LtVariant::ALL.into_iter().filter(|v| v.is_root_based()) {
            let p = Labels::make_set(300);
            let mut snaps = Snapshots::default();
            liu_tarjan(&ex, &EdgeSource::all(&g), &p, v, None, Some(&mut snaps)).unwrap();
            for pair in snaps.taken.windows(2) {
                let ((_, _, before), (_, phase, after)) = (&pair[0], &pair[1]);
                if *phase != Phase::Update {
                    continue;
                }
                for x in 0..300 {
                    if before[x] != after[x] {
                        assert_eq!(before[x], x as VertexId, "{v} moved non-root {x}");
                    }
                }
            }
        }
    }

    #[test]
    fn forest_requires_root_based() {
        let g = build_csr(&generators::path(3)).unwrap();
        let f = ForestSlots::new(3);
        let p = Labels::make_set(3);
        let ex = Executor::sequential();
        let err = liu_tarjan(&ex, &EdgeSource::all(&g), &p, LtVariant::PUS, Some(&f), None);
        assert!(matches!(err, Err(Error::Config(_))));
        liu_tarjan(&ex, &EdgeSource::all(&g), &p, LtVariant::PRS, Some(&f), None).unwrap();
        assert_eq!(f.to_edges().iter().flatten().count(), 2);
    }
}
