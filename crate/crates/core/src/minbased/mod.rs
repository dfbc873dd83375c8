//! Round-synchronous min-based finishers: Shiloach-Vishkin, the Liu-Tarjan
//! rule family, Stergiou's two-array scheme and label propagation.
//!
//! All of them lower entries of a shared [`Labels`] array with atomic-min
//! writes and stop after the first round that changes nothing.

mod lp;
mod lt;
mod source;
mod stergiou;
mod sv;

pub use lp::label_propagation;
pub use lt::{liu_tarjan, ConnectRule, LtVariant, ShortcutRule, UpdateRule};
pub use source::EdgeSource;
pub use stergiou::stergiou;
pub use sv::shiloach_vishkin;

use crate::dset::Labels;
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::VertexId;

/// Work done by a finisher.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FinishStats {
    /// Rounds executed, including the final one that changed nothing.
    pub rounds: usize,
    pub inspections: u64,
}

/// Points in a round at which an observer is called.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Connect,
    Update,
    Shortcut,
    Alter,
    /// End of a round for finishers without separate phases.
    Round,
}

/// Receives the label array between phases. Calls happen on the driving
/// thread while no kernel is running.
pub trait RoundObserver {
    fn observe(&mut self, round: usize, phase: Phase, labels: &Labels);
}

/// Records a full copy of the labels at every call.
#[derive(Debug, Default)]
pub struct Snapshots {
    pub taken: Vec<(usize, Phase, Vec<VertexId>)>,
}

impl RoundObserver for Snapshots {
    fn observe(&mut self, round: usize, phase: Phase, labels: &Labels) {
        self.taken.push((round, phase, labels.to_vec()));
    }
}

pub(crate) fn notify(obs: &mut Option<&mut dyn RoundObserver>, round: usize, phase: Phase, labels: &Labels) {
    if let Some(o) = obs.as_deref_mut() {
        o.observe(round, phase, labels);
    }
}

pub(crate) fn round_limit(n: usize) -> usize {
    n + 1
}

pub(crate) fn check_rounds(name: &'static str, round: usize, n: usize) -> Result<()> {
    if round > round_limit(n) {
        Err(Error::NoConvergence(name, round))
    } else {
        Ok(())
    }
}

/// One shortcut step for `v`. Returns whether the entry moved.
#[inline]
pub(crate) fn shortcut_once(p: &Labels, v: VertexId) -> bool {
    let parent = p.get(v);
    let grand = p.get(parent);
    grand < parent && p.write_min(v, grand)
}

/// Shortcuts `v` until its parent is a root.
#[inline]
pub(crate) fn shortcut_full(p: &Labels, v: VertexId) -> bool {
    let mut moved = false;
    loop {
        let parent = p.get(v);
        let grand = p.get(parent);
        if grand >= parent {
            return moved;
        }
        moved |= p.write_min(v, grand);
    }
}

/// Applies `step` to every vertex in the source's shortcut scope and
/// reports whether anything moved.
pub(crate) fn shortcut_scope(
    ex: &Executor,
    src: &EdgeSource<'_>,
    p: &Labels,
    step: impl Fn(&Labels, VertexId) -> bool + Sync + Send,
) -> bool {
    let moved = match src.scope() {
        None => ex.sum(0..p.len(), |v| step(p, v as VertexId) as u64),
        Some(scope) => ex.sum_slice(scope, |&v| step(p, v) as u64),
    };
    moved > 0
}
