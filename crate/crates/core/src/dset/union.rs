use std::sync::atomic::{AtomicBool, Ordering};

use rand::Rng;

use super::find::find_naive;
use super::{splice, FindRule, ForestSlots, Hooks, Labels, SpliceRule, UnionConfig, UnionRule};
use crate::error::Result;
use crate::graph::generators::rng;
use crate::VertexId;

#[inline]
fn record(forest: Option<&ForestSlots>, slot: VertexId, u: VertexId, v: VertexId) {
    if let Some(f) = forest {
        f.record(slot, u, v);
    }
}

/// Links roots from the larger id to the smaller with a compare-and-swap on
/// the parent array. Returns true iff this call performed the merging link.
pub fn union_async(
    p: &Labels,
    u: VertexId,
    v: VertexId,
    find: FindRule,
    forest: Option<&ForestSlots>,
) -> bool {
    let mut pu = find.find(p, u);
    let mut pv = find.find(p, v);
    while pu != pv {
        if pu < pv {
            std::mem::swap(&mut pu, &mut pv);
        }
        if p.get(pu) == pu && p.cas(pu, pu, pv) {
            record(forest, pu, u, v);
            return true;
        }
        pu = find.find(p, u);
        pv = find.find(p, v);
    }
    false
}

/// Like [`union_async`], but the contended compare-and-swap goes to the hook
/// array; the winning worker then writes the parent uncontended.
pub fn union_hooks(
    p: &Labels,
    hooks: &Hooks,
    u: VertexId,
    v: VertexId,
    find: FindRule,
    forest: Option<&ForestSlots>,
) -> bool {
    let mut pu = find.find(p, u);
    let mut pv = find.find(p, v);
    while pu != pv {
        if pu < pv {
            std::mem::swap(&mut pu, &mut pv);
        }
        if p.get(pu) == pu && hooks.claim(pu, pv) {
            // claim is AcqRel, the store is Release: readers that see the
            // new parent also see the claim
            record(forest, pu, u, v);
            p.set(pu, pv);
            return true;
        }
        std::hint::spin_loop();
        pu = find.find(p, u);
        pv = find.find(p, v);
    }
    false
}

/// Walks both paths together, hooking as soon as the larger side is a root
/// and halving one step otherwise. Trailing finds compress both endpoints
/// unless the find rule is naive.
pub fn union_early(
    p: &Labels,
    u: VertexId,
    v: VertexId,
    find: FindRule,
    forest: Option<&ForestSlots>,
) -> bool {
    let (mut pu, mut pv) = (u, v);
    let mut merged = false;
    while pu != pv {
        if pu < pv {
            std::mem::swap(&mut pu, &mut pv);
        }
        if p.get(pu) == pu && p.cas(pu, pu, pv) {
            record(forest, pu, u, v);
            merged = true;
            break;
        }
        let z = p.get(pu);
        let w = p.get(z);
        p.cas(pu, z, w);
        pu = w;
    }
    if find != FindRule::Naive {
        find.find(p, u);
        find.find(p, v);
    }
    merged
}

/// Rem's algorithm with a per-vertex spin lock around the root link.
pub fn union_rem_lock(
    p: &Labels,
    locks: &LockTable,
    u: VertexId,
    v: VertexId,
    find: FindRule,
    splice_rule: SpliceRule,
    forest: Option<&ForestSlots>,
) -> bool {
    let (mut ru, mut rv) = (u, v);
    loop {
        let (mut pru, mut prv) = (p.get(ru), p.get(rv));
        if pru == prv {
            break;
        }
        if pru < prv {
            std::mem::swap(&mut ru, &mut rv);
            std::mem::swap(&mut pru, &mut prv);
        }
        if ru == pru {
            let linked = {
                let _guard = locks.lock(ru);
                let pv = p.get(rv);
                if p.get(ru) == ru && ru > pv {
                    record(forest, ru, u, v);
                    p.set(ru, pv);
                    true
                } else {
                    false
                }
            };
            if linked {
                return true;
            }
            // lost the race for ru; re-examine
        } else {
            ru = splice(splice_rule, p, ru, rv);
        }
    }
    if find != FindRule::Naive {
        find.find(p, u);
        find.find(p, v);
    }
    false
}

/// Lock-free Rem's algorithm: the root link is a compare-and-swap from the
/// root to the other side's parent.
pub fn union_rem_cas(
    p: &Labels,
    u: VertexId,
    v: VertexId,
    find: FindRule,
    splice_rule: SpliceRule,
    forest: Option<&ForestSlots>,
) -> bool {
    let (mut ru, mut rv) = (u, v);
    loop {
        let (mut pru, mut prv) = (p.get(ru), p.get(rv));
        if pru == prv {
            return false;
        }
        if pru < prv {
            std::mem::swap(&mut ru, &mut rv);
            std::mem::swap(&mut pru, &mut prv);
        }
        if ru == pru && p.cas(ru, ru, prv) {
            record(forest, ru, u, v);
            if find != FindRule::Naive {
                find.find(p, u);
                find.find(p, v);
            }
            return true;
        }
        ru = splice(splice_rule, p, ru, rv);
    }
}

/// Random per-vertex priorities for rank-ordered linking. Roots are ordered
/// by `(rank, id)`, so ties never occur.
pub struct JtbRanks {
    ranks: Box<[u32]>,
}

impl JtbRanks {
    pub fn new(n: usize, seed: u64) -> Self {
        let mut rng = rng(seed ^ 0x6a74_625f_7261_6e6b);
        JtbRanks {
            ranks: (0..n).map(|_| rng.random::<u32>()).collect(),
        }
    }

    #[inline]
    pub fn key(&self, v: VertexId) -> u64 {
        ((self.ranks[v as usize] as u64) << 32) | v as u64
    }
}

/// Randomized linking by rank: the root with the lower `(rank, id)` key is
/// linked under the other.
pub fn union_jtb(
    p: &Labels,
    ranks: &JtbRanks,
    u: VertexId,
    v: VertexId,
    find: FindRule,
    forest: Option<&ForestSlots>,
) -> bool {
    loop {
        let ru = find.find(p, u);
        let rv = find.find(p, v);
        if ru == rv {
            return false;
        }
        let (lo, hi) = if ranks.key(ru) < ranks.key(rv) { (ru, rv) } else { (rv, ru) };
        if p.cas(lo, lo, hi) {
            record(forest, lo, u, v);
            return true;
        }
    }
}

/// Test-and-test-and-set spin locks, one per vertex.
pub struct LockTable {
    locks: Box<[AtomicBool]>,
}

pub struct LockGuard<'a> {
    lock: &'a AtomicBool,
}

impl Drop for LockGuard<'_> {
    fn drop(&mut self) {
        self.lock.store(false, Ordering::Release);
    }
}

impl LockTable {
    pub fn new(n: usize) -> Self {
        LockTable {
            locks: (0..n).map(|_| AtomicBool::new(false)).collect(),
        }
    }

    pub fn lock(&self, v: VertexId) -> LockGuard<'_> {
        let lock = &self.locks[v as usize];
        let mut spins = 0u32;
        loop {
            if !lock.load(Ordering::Relaxed)
                && lock
                    .compare_exchange_weak(false, true, Ordering::Acquire, Ordering::Relaxed)
                    .is_ok()
            {
                return LockGuard { lock };
            }
            spins += 1;
            if spins < 64 {
                std::hint::spin_loop();
            } else {
                // the holder may be descheduled
                std::thread::yield_now();
            }
        }
    }
}

/// A configured union-find: the union rule plus whatever auxiliary state it
/// needs (hooks, locks or ranks). The parent array itself is passed to each
/// call so one instance can serve several phases over the same labels.
pub struct UnionFind {
    cfg: UnionConfig,
    hooks: Option<Hooks>,
    locks: Option<LockTable>,
    ranks: Option<JtbRanks>,
}

impl UnionFind {
    pub fn new(cfg: UnionConfig, n: usize, seed: u64) -> Result<Self> {
        cfg.validate()?;
        Ok(UnionFind {
            cfg,
            hooks: (cfg.union == UnionRule::Hooks).then(|| Hooks::new(n)),
            locks: (cfg.union == UnionRule::RemLock).then(|| LockTable::new(n)),
            ranks: (cfg.union == UnionRule::Jtb).then(|| JtbRanks::new(n, seed)),
        })
    }

    pub fn config(&self) -> UnionConfig {
        self.cfg
    }

    pub fn hooks(&self) -> Option<&Hooks> {
        self.hooks.as_ref()
    }

    #[inline]
    pub fn union(&self, p: &Labels, u: VertexId, v: VertexId) -> bool {
        self.union_recording(p, u, v, None)
    }

    #[inline]
    pub fn union_recording(
        &self,
        p: &Labels,
        u: VertexId,
        v: VertexId,
        forest: Option<&ForestSlots>,
    ) -> bool {
        let UnionConfig { union, find, splice } = self.cfg;
        match union {
            UnionRule::Async => union_async(p, u, v, find, forest),
            UnionRule::Hooks => union_hooks(p, self.hooks.as_ref().unwrap(), u, v, find, forest),
            UnionRule::Early => union_early(p, u, v, find, forest),
            UnionRule::RemLock => {
                union_rem_lock(p, self.locks.as_ref().unwrap(), u, v, find, splice, forest)
            }
            UnionRule::RemCas => union_rem_cas(p, u, v, find, splice, forest),
            UnionRule::Jtb => union_jtb(p, self.ranks.as_ref().unwrap(), u, v, find, forest),
        }
    }

    /// Root of `u` using the configured find rule. For Rem unions this must
    /// not run concurrently with unions.
    #[inline]
    pub fn find(&self, p: &Labels, u: VertexId) -> VertexId {
        match self.cfg.find {
            // Rem's splice rules already compress; a naive walk suffices
            FindRule::Naive => find_naive(p, u),
            f => f.find(p, u),
        }
    }
}
