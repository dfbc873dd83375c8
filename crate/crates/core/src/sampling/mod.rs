//! Sampling phases: cheap partial connectivity over a subset of the edges,
//! leaving a fully compressed labeling behind.

mod bfs;
mod hb;
mod kout;

pub use bfs::{bfs_sample, BfsOutcome, DEFAULT_PROBES};
pub use hb::{hb_sample, DEFAULT_HB_EDGES};
pub use kout::{kout_sample, KOutMode, DEFAULT_K};

use std::sync::atomic::{AtomicU32, Ordering};

use crate::dset::{find_naive, Labels};
use crate::exec::Executor;
use crate::VertexId;

/// Points every vertex directly at its root.
pub fn compress_all(ex: &Executor, p: &Labels) {
    ex.for_each(0..p.len(), |v| {
        let root = find_naive(p, v as VertexId);
        p.set(v as VertexId, root);
    });
}

/// The label occurring most often; ties go to the smaller label. Returns 0
/// for an empty labeling.
pub fn most_frequent_label(ex: &Executor, labels: &[VertexId]) -> VertexId {
    let Some(&max) = labels.iter().max() else {
        return 0;
    };
    let counts: Vec<AtomicU32> = (0..=max as usize).map(|_| AtomicU32::new(0)).collect();
    ex.for_each(0..labels.len(), |v| {
        counts[labels[v] as usize].fetch_add(1, Ordering::Relaxed);
    });
    let mut best = (0u32, 0 as VertexId);
    for (label, c) in counts.iter().enumerate() {
        let c = c.load(Ordering::Relaxed);
        if c > best.0 {
            best = (c, label as VertexId);
        }
    }
    best.1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_with_ties() {
        let ex = Executor::sequential();
        assert_eq!(most_frequent_label(&ex, &[0, 0, 1, 1, 1]), 1);
        assert_eq!(most_frequent_label(&ex, &[0, 0, 1, 1]), 0);
        assert_eq!(most_frequent_label(&ex, &[]), 0);
        assert_eq!(most_frequent_label(&Executor::new(3).unwrap(), &[7, 2, 7, 2, 2]), 2);
    }
}
