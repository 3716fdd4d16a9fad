use rayon::prelude::*;

use crate::error::{HarnessError, HarnessResult};

pub const THREADS_ENV: &str = "TRENDLAB_THREADS";

/// Worker count: available cores, capped by `TRENDLAB_THREADS` when set.
pub fn thread_count() -> usize {
    let cores = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    match std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        Some(cap) if cap > 0 => cap.min(cores),
        _ => cores,
    }
}

/// Runs `job` for every replication index and returns results in index
/// order, whatever order the workers finish in.
pub fn map_replications<T, F>(replications: u64, job: F) -> HarnessResult<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> HarnessResult<T> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count())
        .build()
        .map_err(|e| HarnessError::Usage(format!("cannot start worker pool: {e}")))?;
    pool.install(|| (0..replications).into_par_iter().map(&job).collect())
}
