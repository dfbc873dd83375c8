//! Worker pools.
//!
//! Every kernel takes an [`Executor`]. With one worker the loops run inline
//! and in index order, which is what the golden-trace tests rely on; with
//! more workers they run on a dedicated rayon pool.

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Environment variable consulted for the default worker count.
pub const THREADS_ENV: &str = "CONN_LAB_THREADS";

// Below this many items a parallel loop is not worth splitting.
const MIN_CHUNK: usize = 256;

#[derive(Clone)]
pub struct Executor {
    workers: usize,
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl fmt::Debug for Executor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Executor").field("workers", &self.workers).finish()
    }
}

impl Default for Executor {
    fn default() -> Self {
        Self::sequential()
    }
}

impl Executor {
    pub fn new(workers: usize) -> Result<Self> {
        if workers == 0 {
            return Err(Error::config("worker count must be at least 1"));
        }
        if workers == 1 {
            return Ok(Self::sequential());
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .thread_name(|i| format!("connlab-worker-{i}"))
            .build()
            .map_err(|e| Error::config(format!("cannot start worker pool: {e}")))?;
        Ok(Executor {
            workers,
            pool: Some(Arc::new(pool)),
        })
    }

    /// Deterministic single-worker executor.
    pub fn sequential() -> Self {
        Executor {
            workers: 1,
            pool: None,
        }
    }

    /// Worker count from `CONN_LAB_THREADS`, falling back to the number of
    /// available cores.
    pub fn from_env() -> Result<Self> {
        let workers = match std::env::var(THREADS_ENV) {
            Ok(s) => s
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::config(format!("{THREADS_ENV}={s:?} is not a worker count")))?,
            Err(_) => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        Self::new(workers)
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub fn is_sequential(&self) -> bool {
        self.pool.is_none()
    }

    pub fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(pool) => pool.install(op),
            None => op(),
        }
    }

    pub fn for_each(&self, range: Range<usize>, f: impl Fn(usize) + Sync + Send) {
        match &self.pool {
            None => range.for_each(f),
            Some(pool) => pool.install(|| {
                range.into_par_iter().with_min_len(MIN_CHUNK).for_each(f)
            }),
        }
    }

    /// Runs `f` over the range and sums the returned counts.
    pub fn sum(&self, range: Range<usize>, f: impl Fn(usize) -> u64 + Sync + Send) -> u64 {
        match &self.pool {
            None => range.map(f).sum(),
            Some(pool) => pool.install(|| {
                range.into_par_iter().with_min_len(MIN_CHUNK).map(f).sum()
            }),
        }
    }

    /// Like [`Executor::sum`] but over the elements of a slice.
    pub fn sum_slice<T: Sync>(&self, items: &[T], f: impl Fn(&T) -> u64 + Sync + Send) -> u64 {
        match &self.pool {
            None => items.iter().map(f).sum(),
            Some(pool) => pool.install(|| {
                items.par_iter().with_min_len(MIN_CHUNK).map(f).sum()
            }),
        }
    }

    /// Order-preserving filter of `0..n`.
    pub fn filter_indices(&self, n: usize, keep: impl Fn(usize) -> bool + Sync + Send) -> Vec<u32> {
        match &self.pool {
            None => (0..n).filter(|&i| keep(i)).map(|i| i as u32).collect(),
            Some(pool) => pool.install(|| {
                (0..n)
                    .into_par_iter()
                    .with_min_len(MIN_CHUNK)
                    .filter(|&i| keep(i))
                    .map(|i| i as u32)
                    .collect()
            }),
        }
    }

    /// Order-preserving parallel map into a new vector.
    pub fn map_collect<T: Send>(&self, n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
        match &self.pool {
            None => (0..n).map(f).collect(),
            Some(pool) => pool.install(|| {
                (0..n).into_par_iter().with_min_len(MIN_CHUNK).map(f).collect()
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_workers_rejected() {
        assert!(matches!(Executor::new(0), Err(Error::Config(_))));
    }

    #[test]
    fn sum_matches_across_worker_counts() {
        let expect: u64 = (0..10_000u64).map(|i| i % 7).sum();
        for w in [1, 2, 8] {
            let ex = Executor::new(w).unwrap();
            assert_eq!(ex.sum(0..10_000, |i| (i % 7) as u64), expect);
            let kept = ex.filter_indices(1000, |i| i % 3 == 0);
            assert_eq!(kept.len(), 334);
            assert!(kept.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
