//! Thread-pool executor for sharded counting jobs.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use qforest_core::count::{ShardedCount, Tally};
use qforest_core::Executor;
use rayon::prelude::*;

/// Environment variable consulted when `--threads` is not given.
pub const THREADS_ENV: &str = "QFOREST_THREADS";

/// Shards per worker thread; enough to smooth out uneven shard costs.
const SHARDS_PER_THREAD: u128 = 16;

/// Resolves the worker count: explicit flag, then [`THREADS_ENV`], then the
/// number of available cores.
pub fn resolve_threads(flag: Option<usize>) -> Result<usize, String> {
    if let Some(t) = flag {
        return if t == 0 { Err("--threads must be at least 1".into()) } else { Ok(t) };
    }
    if let Ok(v) = std::env::var(THREADS_ENV) {
        return match v.trim().parse::<usize>() {
            Ok(t) if t > 0 => Ok(t),
            _ => Err(format!("{THREADS_ENV}={v:?} is not a positive integer")),
        };
    }
    Ok(std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Splits a job into prefix shards and counts them on a rayon pool.
///
/// Tallies are integer sums, so the total does not depend on the thread
/// count or on the order in which shards finish.
pub struct Parallel {
    pool: Arc<rayon::ThreadPool>,
    threads: usize,
    shards: AtomicUsize,
}

impl Parallel {
    pub fn new(threads: usize) -> Result<Self, rayon::ThreadPoolBuildError> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
        Ok(Parallel {
            pool: Arc::new(pool),
            threads,
            shards: AtomicUsize::new(0),
        })
    }

    pub fn threads(&self) -> usize {
        self.threads
    }

    /// Total shards dispatched since construction.
    pub fn shards(&self) -> usize {
        self.shards.load(Ordering::Relaxed)
    }

    fn prefix_len<J: ShardedCount>(&self, job: &J) -> usize {
        if self.threads == 1 {
            return 0;
        }
        let space = job.space();
        let target = self.threads as u128 * SHARDS_PER_THREAD;
        let mut shards = 1u128;
        let mut len = 0;
        for &v in space.active().iter().take(job.max_prefix()) {
            if shards >= target {
                break;
            }
            shards = shards.saturating_mul(space.domains()[v].size(space.q()) as u128);
            len += 1;
        }
        len
    }
}

impl Executor for Parallel {
    fn run<J: ShardedCount>(&self, job: &J) -> J::Tally {
        let prefixes = job.space().prefixes(self.prefix_len(job));
        self.shards.fetch_add(prefixes.len(), Ordering::Relaxed);
        self.pool.install(|| {
            prefixes
                .par_iter()
                .map(|p| job.count_prefix(p))
                .reduce(J::Tally::default, |mut a, b| {
                    a.merge(b);
                    a
                })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_thread_count_wins() {
        assert_eq!(resolve_threads(Some(3)), Ok(3));
        assert!(resolve_threads(Some(0)).is_err());
        assert!(resolve_threads(None).unwrap() >= 1);
    }
}
