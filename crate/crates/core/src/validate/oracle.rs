use std::collections::{HashMap, VecDeque};

use crate::graph::Graph;
use crate::VertexId;

/// Component labels by repeated breadth-first flooding. Each vertex gets the
/// smallest id in its component.
pub fn oracle_components(g: &Graph) -> Vec<VertexId> {
    let n = g.num_vertices();
    let mut label = vec![VertexId::MAX; n];
    let mut queue = VecDeque::new();
    for s in 0..n as VertexId {
        if label[s as usize] != VertexId::MAX {
            continue;
        }
        // vertices are visited in increasing order, so s is the minimum
        label[s as usize] = s;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if label[w as usize] == VertexId::MAX {
                    label[w as usize] = s;
                    queue.push_back(w);
                }
            }
        }
    }
    label
}

fn dsu_find(parent: &mut [VertexId], mut u: VertexId) -> VertexId {
    let mut root = u;
    while parent[root as usize] != root {
        root = parent[root as usize];
    }
    while parent[u as usize] != root {
        let next = parent[u as usize];
        parent[u as usize] = root;
        u = next;
    }
    root
}

/// Sequential union-find over an edge sequence, minimum-id roots, full
/// compression. Labels are component minima.
pub fn oracle_from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Vec<VertexId> {
    let mut parent: Vec<VertexId> = (0..n as VertexId).collect();
    for &(u, v) in edges {
        let (ru, rv) = (dsu_find(&mut parent, u), dsu_find(&mut parent, v));
        if ru != rv {
            let (lo, hi) = if ru < rv { (ru, rv) } else { (rv, ru) };
            parent[hi as usize] = lo;
        }
    }
    (0..n as VertexId).map(|v| dsu_find(&mut parent, v)).collect()
}

/// Second oracle over a graph, independent of the BFS one.
pub fn oracle_union_find(g: &Graph) -> Vec<VertexId> {
    let n = g.num_vertices();
    let edges: Vec<_> = (0..n as VertexId)
        .flat_map(|u| g.neighbors(u).iter().map(move |&v| (u, v)))
        .filter(|&(u, v)| u < v)
        .collect();
    oracle_from_edges(n, &edges)
}

/// True iff both labelings induce the same partition.
pub fn partition_equal(a: &[VertexId], b: &[VertexId]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut ab = HashMap::new();
    let mut ba = HashMap::new();
    a.iter().zip(b).all(|(&x, &y)| {
        *ab.entry(x).or_insert(y) == y && *ba.entry(y).or_insert(x) == x
    })
}

/// Relabels every vertex with the smallest vertex id carrying its label.
pub fn canonicalize(labels: &[VertexId]) -> Vec<VertexId> {
    let mut first = HashMap::new();
    labels
        .iter()
        .enumerate()
        .map(|(v, &l)| *first.entry(l).or_insert(v as VertexId))
        .collect()
}

/// Number of distinct labels.
pub fn component_count(labels: &[VertexId]) -> usize {
    let mut seen: Vec<VertexId> = labels.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_csr, generators, EdgeList};

    #[test]
    fn path_and_empty() {
        let g = build_csr(&generators::path(3)).unwrap();
        assert_eq!(oracle_components(&g), vec![0, 0, 0]);
        let g = build_csr(&EdgeList::new(4, vec![]).unwrap()).unwrap();
        assert_eq!(oracle_components(&g), vec![0, 1, 2, 3]);
    }

    #[test]
    fn oracles_agree() {
        for seed in 0..5 {
            let g = build_csr(&generators::gnp(300, 0.006, seed)).unwrap();
            assert_eq!(oracle_components(&g), oracle_union_find(&g));
        }
    }

    #[test]
    fn partition_equality() {
        assert!(partition_equal(&[0, 0, 2, 2], &[5, 5, 7, 7]));
        assert_eq!(canonicalize(&[5, 5, 7, 7]), vec![0, 0, 2, 2]);
        assert!(!partition_equal(&[0, 0], &[0, 1]));
        assert!(!partition_equal(&[0, 1], &[0, 0]));
        assert!(partition_equal(&[3, 1, 3], &[3, 1, 3]));
        assert_eq!(component_count(&[4, 4, 1]), 2);
    }
}
