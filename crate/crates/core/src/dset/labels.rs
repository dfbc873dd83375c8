use std::fmt;
use std::sync::atomic::{AtomicU32, AtomicU64, Ordering};

use crate::VertexId;

/// Shared parent array. Entry `v` is the parent of `v`; roots point to
/// themselves. Every access is a single atomic word operation.
pub struct Labels {
    parents: Box<[AtomicU32]>,
}

impl Labels {
    /// `P[v] = v` for every vertex.
    pub fn make_set(n: usize) -> Self {
        Labels {
            parents: (0..n as VertexId).map(AtomicU32::new).collect(),
        }
    }

    pub fn filled(n: usize, value: VertexId) -> Self {
        Labels {
            parents: (0..n).map(|_| AtomicU32::new(value)).collect(),
        }
    }

    pub fn from_slice(values: &[VertexId]) -> Self {
        Labels {
            parents: values.iter().map(|&x| AtomicU32::new(x)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.parents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parents.is_empty()
    }

    #[inline]
    pub fn get(&self, v: VertexId) -> VertexId {
        self.parents[v as usize].load(Ordering::Acquire)
    }

    #[inline]
    pub fn set(&self, v: VertexId, parent: VertexId) {
        self.parents[v as usize].store(parent, Ordering::Release)
    }

    #[inline]
    pub fn cas(&self, v: VertexId, current: VertexId, new: VertexId) -> bool {
        self.parents[v as usize]
            .compare_exchange(current, new, Ordering::AcqRel, Ordering::Acquire)
            .is_ok()
    }

    /// Atomic minimum; true iff the stored value decreased.
    #[inline]
    pub fn write_min(&self, v: VertexId, value: VertexId) -> bool {
        self.parents[v as usize].fetch_min(value, Ordering::AcqRel) > value
    }

    #[inline]
    pub fn is_root(&self, v: VertexId) -> bool {
        self.get(v) == v
    }

    pub fn to_vec(&self) -> Vec<VertexId> {
        self.parents.iter().map(|a| a.load(Ordering::Acquire)).collect()
    }

    pub fn into_vec(self) -> Vec<VertexId> {
        self.parents.into_vec().into_iter().map(AtomicU32::into_inner).collect()
    }

    pub fn copy_from(&self, other: &Labels) {
        debug_assert_eq!(self.len(), other.len());
        for (dst, src) in self.parents.iter().zip(other.parents.iter()) {
            dst.store(src.load(Ordering::Acquire), Ordering::Release);
        }
    }

    pub fn count_roots(&self) -> usize {
        (0..self.len() as VertexId).filter(|&v| self.is_root(v)).count()
    }
}

impl Clone for Labels {
    fn clone(&self) -> Self {
        Labels::from_slice(&self.to_vec())
    }
}

impl fmt::Debug for Labels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_vec()).finish()
    }
}

impl PartialEq<[VertexId]> for Labels {
    fn eq(&self, other: &[VertexId]) -> bool {
        self.to_vec() == other
    }
}

/// Hook array for the hooks union rule. `n` (one past the largest id) is the
/// "unhooked" sentinel; each entry leaves the sentinel at most once.
pub struct Hooks {
    hooks: Box<[AtomicU32]>,
}

impl Hooks {
    pub fn new(n: usize) -> Self {
        Hooks {
            hooks: (0..n).map(|_| AtomicU32::new(n as u32)).collect(),
        }
    }

    pub fn unhooked(&self) -> VertexId {
        self.hooks.len() as VertexId
    }

    #[inline]
    pub fn claim(&self, v: VertexId, target: VertexId) -> bool {
        self.hooks[v as usize]
            .compare_exchange(self.unhooked(), target, Ordering::AcqRel, Ordering::Acquire)
            .is_ok()
    }

    pub fn get(&self, v: VertexId) -> VertexId {
        self.hooks[v as usize].load(Ordering::Acquire)
    }
}

/// Per-vertex slots for spanning-forest edges. Slot `r` receives the edge
/// whose link made `r` stop being a root, so each slot is written once.
pub struct ForestSlots {
    slots: Box<[AtomicU64]>,
}

const EMPTY_SLOT: u64 = u64::MAX;

impl ForestSlots {
    pub fn new(n: usize) -> Self {
        ForestSlots {
            slots: (0..n).map(|_| AtomicU64::new(EMPTY_SLOT)).collect(),
        }
    }

    #[inline]
    pub fn record(&self, slot: VertexId, u: VertexId, v: VertexId) {
        let packed = ((u as u64) << 32) | v as u64;
        let prev = self.slots[slot as usize].swap(packed, Ordering::AcqRel);
        debug_assert_eq!(prev, EMPTY_SLOT, "forest slot {slot} written twice");
    }

    pub fn get(&self, slot: VertexId) -> Option<(VertexId, VertexId)> {
        match self.slots[slot as usize].load(Ordering::Acquire) {
            EMPTY_SLOT => None,
            p => Some(((p >> 32) as VertexId, p as VertexId)),
        }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn to_edges(&self) -> Vec<Option<(VertexId, VertexId)>> {
        (0..self.len() as VertexId).map(|s| self.get(s)).collect()
    }
}
