use serde::Serialize;

use super::oracle::{component_count, oracle_from_edges};
use crate::graph::Graph;
use crate::VertexId;

/// One failed clause of the spanning-forest contract, with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum Violation {
    /// A recorded edge is not an edge of the graph.
    NotInGraph { slot: VertexId, u: VertexId, v: VertexId },
    /// A recorded edge closes a cycle with earlier ones.
    Cycle { slot: VertexId, u: VertexId, v: VertexId },
    /// Populated slot count differs from `n - components`.
    Count { populated: usize, expected: usize },
    /// The forest disagrees with the oracle about this pair.
    Components { u: VertexId, v: VertexId, in_forest: bool },
}

#[derive(Clone, Debug, Serialize)]
pub struct ForestReport {
    pub n: usize,
    pub components: usize,
    pub populated: usize,
    pub violations: Vec<Violation>,
}

impl ForestReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Checks that `forest` (one optional edge per slot) is a spanning forest of
/// `g` whose trees are exactly the components in `oracle`.
pub fn check_forest(g: &Graph, forest: &[Option<(VertexId, VertexId)>], oracle: &[VertexId]) -> ForestReport {
    let n = g.num_vertices();
    let components = component_count(oracle);
    let mut violations = Vec::new();
    let mut parent: Vec<VertexId> = (0..n as VertexId).collect();
    let find = |parent: &mut Vec<VertexId>, mut x: VertexId| {
        while parent[x as usize] != x {
            let gp = parent[parent[x as usize] as usize];
            parent[x as usize] = gp;
            x = gp;
        }
        x
    };
    let mut kept = Vec::new();
    let mut populated = 0;
    for (slot, e) in forest.iter().enumerate() {
        let Some((u, v)) = *e else { continue };
        populated += 1;
        let slot = slot as VertexId;
        if (u as usize) >= n || (v as usize) >= n || !g.has_edge(u, v) {
            violations.push(Violation::NotInGraph { slot, u, v });
            continue;
        }
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            violations.push(Violation::Cycle { slot, u, v });
            continue;
        }
        parent[ru.max(rv) as usize] = ru.min(rv);
        kept.push((u, v));
    }
    let expected = n - components;
    if populated != expected {
        violations.push(Violation::Count { populated, expected });
    }
    let spanned = oracle_from_edges(n, &kept);
    // both labelings are component minima, so they must match exactly
    if let Some(v) = (0..n).find(|&v| spanned[v] != oracle[v]) {
        let v = v as VertexId;
        let witness = if spanned[v as usize] < v {
            (spanned[v as usize], v, true)
        } else {
            (oracle[v as usize], v, false)
        };
        violations.push(Violation::Components {
            u: witness.0,
            v: witness.1,
            in_forest: witness.2,
        });
    }
    ForestReport {
        n,
        components,
        populated,
        violations,
    }
}
