use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use super::{check_rounds, notify, shortcut_full, shortcut_scope, EdgeSource, FinishStats, Phase, RoundObserver};
use crate::dset::{ForestSlots, Labels};
use crate::error::Result;
use crate::exec::Executor;
use crate::VertexId;

const NO_HOOK: u64 = u64::MAX;

/// Shiloach-Vishkin: every edge whose endpoints carry different labels
/// hooks the larger label, if it was a root at the start of the round, onto
/// the smaller one; then every vertex is shortcut to its root.
///
/// With `forest`, endpoint labels are read from the round-start snapshot so
/// that each hook corresponds to an edge between two round-start trees, and
/// the edge behind the winning (smallest) hook is recorded at the hooked
/// root's slot.
pub fn shiloach_vishkin(
    ex: &Executor,
    src: &EdgeSource<'_>,
    labels: &Labels,
    forest: Option<&ForestSlots>,
    mut obs: Option<&mut dyn RoundObserver>,
) -> Result<FinishStats> {
    let n = labels.len();
    let hooks: Vec<AtomicU64> = match forest {
        Some(_) => (0..n).map(|_| AtomicU64::new(NO_HOOK)).collect(),
        None => Vec::new(),
    };
    let prev = labels.clone();
    let mut stats = FinishStats::default();
    // rounds assume every endpoint points at a root
    shortcut_scope(ex, src, labels, shortcut_full);
    loop {
        stats.rounds += 1;
        check_rounds("shiloach-vishkin", stats.rounds, n)?;
        prev.copy_from(labels);
        let changed = AtomicBool::new(false);
        let hook = |u: VertexId, v: VertexId, pos: u32| {
            let read = |x| if forest.is_some() { prev.get(x) } else { labels.get(x) };
            let (pu, pv) = (read(u), read(v));
            let (l, h) = (pu.min(pv), pu.max(pv));
            if l != h && prev.get(h) == h {
                labels.write_min(h, l);
                if !hooks.is_empty() {
                    hooks[h as usize].fetch_min((l as u64) << 32 | pos as u64, Ordering::AcqRel);
                }
                changed.store(true, Ordering::Relaxed);
            }
        };
        stats.inspections += match src {
            EdgeSource::Graph { g, active, .. } => ex.sum_slice(active, |&v| {
                let start = g.edge_start(v) as u32;
                for (k, &u) in g.neighbors(v).iter().enumerate() {
                    hook(u, v, start + k as u32);
                }
                g.degree(v) as u64
            }),
            EdgeSource::Edges { edges, .. } => ex.sum(0..edges.len(), |i| {
                let (u, v) = edges[i];
                hook(u, v, i as u32);
                1
            }),
        };
        notify(&mut obs, stats.rounds, Phase::Connect, labels);
        if let Some(f) = forest {
            ex.for_each(0..n, |h| {
                let packed = hooks[h].swap(NO_HOOK, Ordering::AcqRel);
                if packed != NO_HOOK {
                    let (u, v) = src.original(packed as u32);
                    f.record(h as VertexId, u, v);
                }
            });
        }
        shortcut_scope(ex, src, labels, shortcut_full);
        notify(&mut obs, stats.rounds, Phase::Shortcut, labels);
        if !changed.into_inner() {
            break;
        }
    }
    Ok(stats)
}
