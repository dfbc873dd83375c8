use serde::{Deserialize, Serialize};

use super::Labels;
use crate::VertexId;

/// Step taken by Rem's unions when the current position is not a root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpliceRule {
    None,
    /// One splitting step; continue from the old parent.
    SplitOne,
    /// One halving step; continue from the grandparent.
    HalveOne,
    /// Swing `P[u]` over to `P[v]`; continue from u's old parent.
    SpliceAtomic,
}

impl SpliceRule {
    pub const ALL: [SpliceRule; 4] = [
        SpliceRule::None,
        SpliceRule::SplitOne,
        SpliceRule::HalveOne,
        SpliceRule::SpliceAtomic,
    ];

    pub fn token(self) -> &'static str {
        match self {
            SpliceRule::None => "none",
            SpliceRule::SplitOne => "split_one",
            SpliceRule::HalveOne => "halve_one",
            SpliceRule::SpliceAtomic => "splice",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        SpliceRule::ALL.into_iter().find(|r| r.token() == s)
    }
}

/// Applies one splice step at `u` (with `v` the other operand of the
/// union) and returns the position the union loop continues from.
#[inline]
pub fn splice(kind: SpliceRule, p: &Labels, u: VertexId, v: VertexId) -> VertexId {
    match kind {
        SpliceRule::None => p.get(u),
        SpliceRule::SplitOne => {
            let pu = p.get(u);
            let gp = p.get(pu);
            if pu != gp {
                p.cas(u, pu, gp);
            }
            pu
        }
        SpliceRule::HalveOne => {
            let pu = p.get(u);
            let gp = p.get(pu);
            if pu != gp {
                p.cas(u, pu, gp);
            }
            gp
        }
        SpliceRule::SpliceAtomic => {
            let pu = p.get(u);
            let target = p.get(v);
            // only ever lower an entry
            if target < pu {
                p.cas(u, pu, target);
            }
            pu
        }
    }
}
