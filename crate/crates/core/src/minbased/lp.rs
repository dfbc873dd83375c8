use std::sync::atomic::{AtomicBool, Ordering};

use super::{check_rounds, notify, EdgeSource, FinishStats, Phase, RoundObserver};
use crate::dset::Labels;
use crate::error::Result;
use crate::exec::Executor;

/// Label propagation: across every edge whose endpoints disagree, the
/// larger label is lowered to the smaller one. Stops after a round with no
/// update.
pub fn label_propagation(
    ex: &Executor,
    src: &EdgeSource<'_>,
    labels: &Labels,
    mut obs: Option<&mut dyn RoundObserver>,
) -> Result<FinishStats> {
    let n = labels.len();
    let (work, mut inspections) = src.working(ex);
    let mut stats = FinishStats::default();
    loop {
        stats.rounds += 1;
        check_rounds("label-propagation", stats.rounds, n)?;
        let changed = AtomicBool::new(false);
        ex.for_each(0..work.edges.len(), |i| {
            let (u, v) = work.edges[i];
            let (lu, lv) = (labels.get(u), labels.get(v));
            let lowered = if lu < lv {
                labels.write_min(v, lu)
            } else if lv < lu {
                labels.write_min(u, lv)
            } else {
                false
            };
            if lowered {
                changed.store(true, Ordering::Relaxed);
            }
        });
        inspections += work.edges.len() as u64;
        notify(&mut obs, stats.rounds, Phase::Round, labels);
        if !changed.into_inner() {
            break;
        }
    }
    stats.inspections = inspections;
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_csr, generators};
    use crate::minbased::Snapshots;
    use crate::validate::oracle_components;

    #[test]
    fn star_settles_in_first_round() {
        let g = build_csr(&generators::star(50)).unwrap();
        let p = Labels::make_set(50);
        let mut snaps = Snapshots::default();
        let stats = label_propagation(&Executor::sequential(), &EdgeSource::all(&g), &p, Some(&mut snaps)).unwrap();
        assert_eq!(snaps.taken[0].2, vec![0; 50]);
        assert_eq!(stats.rounds, 2);
    }

    #[test]
    fn path_within_length_bound() {
        let g = build_csr(&generators::path(64)).unwrap();
        for w in [1, 4] {
            let p = Labels::make_set(64);
            let stats = label_propagation(&Executor::new(w).unwrap(), &EdgeSource::all(&g), &p, None).unwrap();
            assert!(stats.rounds <= 64);
            assert_eq!(p.to_vec(), vec![0; 64]);
        }
    }

    #[test]
    fn random_graphs_match_oracle() {
        let g = build_csr(&generators::gnp(500, 0.004, 3)).unwrap();
        let p = Labels::make_set(500);
        label_propagation(&Executor::new(2).unwrap(), &EdgeSource::all(&g), &p, None).unwrap();
        assert_eq!(p.to_vec(), oracle_components(&g));
    }
}
