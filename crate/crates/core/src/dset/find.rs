use serde::{Deserialize, Serialize};

use super::Labels;
use crate::VertexId;

/// Path-compression rule applied during finds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FindRule {
    /// No compression.
    Naive,
    /// Point each visited node at its grandparent, advance one step.
    AtomicSplit,
    /// Same swap as splitting, but advance two steps.
    AtomicHalve,
    /// Two-pass full compression of the find path.
    Compress,
    /// Two split attempts per step; rank-ordered unions only.
    TwoTrySplit,
}

impl FindRule {
    pub const ALL: [FindRule; 5] = [
        FindRule::Naive,
        FindRule::AtomicSplit,
        FindRule::AtomicHalve,
        FindRule::Compress,
        FindRule::TwoTrySplit,
    ];

    #[inline]
    pub fn find(self, p: &Labels, u: VertexId) -> VertexId {
        match self {
            FindRule::Naive => find_naive(p, u),
            FindRule::AtomicSplit => find_atomic_split(p, u),
            FindRule::AtomicHalve => find_atomic_halve(p, u),
            FindRule::Compress => find_compress(p, u),
            FindRule::TwoTrySplit => find_two_try_split(p, u),
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            FindRule::Naive => "naive",
            FindRule::AtomicSplit => "split",
            FindRule::AtomicHalve => "halve",
            FindRule::Compress => "compress",
            FindRule::TwoTrySplit => "twotry",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        FindRule::ALL.into_iter().find(|f| f.token() == s)
    }
}

#[inline]
pub fn find_naive(p: &Labels, u: VertexId) -> VertexId {
    let mut v = u;
    loop {
        let parent = p.get(v);
        if parent == v {
            return v;
        }
        v = parent;
    }
}

/// Locates the root, then repoints every vertex on the path at it. Only
/// valid for id-ordered unions: an entry is rewritten only while it is
/// still above the root, so a concurrent link below the root is never undone.
pub fn find_compress(p: &Labels, u: VertexId) -> VertexId {
    let root = find_naive(p, u);
    let mut cur = u;
    loop {
        let parent = p.get(cur);
        if parent <= root {
            return root;
        }
        if p.cas(cur, parent, root) {
            cur = parent;
        }
    }
}

pub fn find_atomic_split(p: &Labels, mut u: VertexId) -> VertexId {
    loop {
        let v = p.get(u);
        let w = p.get(v);
        if v == w {
            return v;
        }
        p.cas(u, v, w);
        u = v;
    }
}

pub fn find_atomic_halve(p: &Labels, mut u: VertexId) -> VertexId {
    loop {
        let v = p.get(u);
        let w = p.get(v);
        if v == w {
            return v;
        }
        p.cas(u, v, w);
        u = p.get(u);
    }
}

/// Splitting with a second attempt at each node before advancing.
pub fn find_two_try_split(p: &Labels, mut u: VertexId) -> VertexId {
    loop {
        let v = p.get(u);
        let w = p.get(v);
        if v == w {
            return v;
        }
        p.cas(u, v, w);
        let v = p.get(u);
        let w = p.get(v);
        if v == w {
            return v;
        }
        p.cas(u, v, w);
        u = v;
    }
}
