use std::sync::atomic::{AtomicU32, Ordering};

use rand::Rng;

use crate::dset::{ForestSlots, Labels};
use crate::exec::Executor;
use crate::graph::generators::rng;
use crate::graph::Graph;
use crate::VertexId;

pub const DEFAULT_PROBES: usize = 64;

const UNSEEN: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BfsOutcome {
    pub source: VertexId,
    /// Label given to every reached vertex: the smallest reached id.
    pub label: VertexId,
    pub reached: usize,
    pub inspections: u64,
}

/// Picks the highest-degree vertex among `probes` uniformly drawn ones
/// (ties to the smaller id), runs a level-synchronous BFS from it and labels
/// everything reached with the smallest reached id. Unreached vertices keep
/// their labels. With `forest`, the BFS tree, re-rooted at that smallest
/// vertex, is recorded.
pub fn bfs_sample(
    ex: &Executor,
    g: &Graph,
    labels: &Labels,
    probes: usize,
    seed: u64,
    forest: Option<&ForestSlots>,
) -> Option<BfsOutcome> {
    let n = g.num_vertices();
    if n == 0 {
        return None;
    }
    let mut rng = rng(seed);
    let source = (0..probes.max(1))
        .map(|_| rng.random_range(0..n as VertexId))
        .min_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v))
        .expect("at least one probe");

    let parent: Vec<AtomicU32> = (0..n).map(|_| AtomicU32::new(UNSEEN)).collect();
    parent[source as usize].store(source, Ordering::Relaxed);
    let mut frontier = vec![source];
    let mut reached = vec![source];
    let mut inspections = 0;
    while !frontier.is_empty() {
        inspections += ex.sum_slice(&frontier, |&u| g.degree(u) as u64);
        let claimed = ex.map_collect(frontier.len(), |i| {
            let u = frontier[i];
            g.neighbors(u)
                .iter()
                .copied()
                .filter(|&w| {
                    parent[w as usize].load(Ordering::Relaxed) == UNSEEN
                        && parent[w as usize]
                            .compare_exchange(UNSEEN, u, Ordering::AcqRel, Ordering::Relaxed)
                            .is_ok()
                })
                .collect::<Vec<_>>()
        });
        frontier = claimed.into_iter().flatten().collect();
        reached.extend_from_slice(&frontier);
    }

    let label = *reached.iter().min().expect("source is reached");
    ex.for_each(0..reached.len(), |i| labels.set(reached[i], label));

    if let Some(f) = forest {
        let parent_of = |v: VertexId| parent[v as usize].load(Ordering::Relaxed);
        // edges on the path from the new root up to the source shift one
        // slot towards the source
        let mut on_path = vec![label];
        while *on_path.last().unwrap() != source {
            let v = *on_path.last().unwrap();
            on_path.push(parent_of(v));
        }
        for pair in on_path.windows(2) {
            f.record(pair[1], pair[1], pair[0]);
        }
        let path_set: std::collections::HashSet<VertexId> = on_path.into_iter().collect();
        for &v in &reached {
            if !path_set.contains(&v) {
                f.record(v, v, parent_of(v));
            }
        }
    }

    Some(BfsOutcome {
        source,
        label,
        reached: reached.len(),
        inspections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_csr, generators, EdgeList};
    use crate::validate::{check_forest, oracle_components};

    #[test]
    fn connected_path_labels_zero() {
        let g = build_csr(&generators::path(10)).unwrap();
        let p = Labels::make_set(10);
        let out = bfs_sample(&Executor::sequential(), &g, &p, 4, 3, None).unwrap();
        assert_eq!(p.to_vec(), vec![0; 10]);
        assert_eq!((out.label, out.reached), (0, 10));
    }

    #[test]
    fn other_component_untouched() {
        let g = build_csr(&EdgeList::new(4, vec![(0, 1), (2, 3), (1, 0)]).unwrap()).unwrap();
        // every vertex has degree one, so the source is the smallest probe
        for seed in 0..20 {
            let p = Labels::make_set(4);
            let out = bfs_sample(&Executor::sequential(), &g, &p, 1, seed, None).unwrap();
            if out.source < 2 {
                assert_eq!(p.to_vec(), vec![0, 0, 2, 3]);
            } else {
                assert_eq!(p.to_vec(), vec![0, 1, 2, 2]);
            }
        }
    }

    #[test]
    fn reroot_forest_is_valid() {
        let g = build_csr(&generators::grid(12, 9)).unwrap();
        for seed in 0..5 {
            let p = Labels::make_set(g.num_vertices());
            let f = ForestSlots::new(g.num_vertices());
            bfs_sample(&Executor::new(2).unwrap(), &g, &p, 3, seed, Some(&f)).unwrap();
            let r = check_forest(&g, &f.to_edges(), &oracle_components(&g));
            assert!(r.passed(), "{}", r.to_json());
        }
    }
}
