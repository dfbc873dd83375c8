use super::{check_rounds, notify, shortcut_full, shortcut_scope, EdgeSource, FinishStats, Phase, RoundObserver};
use crate::dset::Labels;
use crate::error::Result;
use crate::exec::Executor;

/// Stergiou's two-array scheme: parents are read only from the previous
/// round's array, and each edge lowers the current array at both endpoints'
/// previous parents with atomic-min writes. The current array is then fully
/// shortcut. Stops when a round leaves the array unchanged.
pub fn stergiou(
    ex: &Executor,
    src: &EdgeSource<'_>,
    labels: &Labels,
    mut obs: Option<&mut dyn RoundObserver>,
) -> Result<FinishStats> {
    let n = labels.len();
    let (work, mut inspections) = src.working(ex);
    let prev = labels.clone();
    let mut stats = FinishStats::default();
    loop {
        stats.rounds += 1;
        check_rounds("stergiou", stats.rounds, n)?;
        prev.copy_from(labels);
        ex.for_each(0..work.edges.len(), |i| {
            let (u, v) = work.edges[i];
            let (pu, pv) = (prev.get(u), prev.get(v));
            if pu != pv {
                labels.write_min(pu, pv);
                labels.write_min(pv, pu);
            }
        });
        inspections += work.edges.len() as u64;
        shortcut_scope(ex, src, labels, shortcut_full);
        notify(&mut obs, stats.rounds, Phase::Round, labels);
        let differ = match src.scope() {
            None => ex.sum(0..n, |v| (labels.get(v as u32) != prev.get(v as u32)) as u64),
            Some(scope) => ex.sum_slice(scope, |&v| (labels.get(v) != prev.get(v)) as u64),
        };
        if differ == 0 {
            break;
        }
    }
    stats.inspections = inspections;
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dset::find_naive;
    use crate::graph::{build_csr, generators, EdgeList};
    use crate::validate::oracle_components;

    #[test]
    fn triangle_and_converged_input() {
        let g = build_csr(&EdgeList::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap()).unwrap();
        let ex = Executor::sequential();
        let p = Labels::make_set(3);
        stergiou(&ex, &EdgeSource::all(&g), &p, None).unwrap();
        assert_eq!(p.to_vec(), vec![0, 0, 0]);
        let stats = stergiou(&ex, &EdgeSource::all(&g), &p, None).unwrap();
        assert_eq!(stats.rounds, 1);
    }

    #[test]
    fn random_graphs_match_oracle() {
        for seed in 0..4 {
            let g = build_csr(&generators::gnp(400, 0.005, seed)).unwrap();
            for w in [1, 4] {
                let p = Labels::make_set(400);
                stergiou(&Executor::new(w).unwrap(), &EdgeSource::all(&g), &p, None).unwrap();
                let roots: Vec<u32> = (0..400).map(|v| find_naive(&p, v)).collect();
                assert_eq!(roots, oracle_components(&g));
            }
        }
    }
}
