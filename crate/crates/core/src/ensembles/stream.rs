//! Deterministic per-worker random streams.
//!
//! Worker `w` of a run seeded with `seed` draws from `ChaCha8Rng` seeded with
//! `seed` and switched to stream `w`. A run of `total` draws gives worker `w`
//! `total / workers` draws, plus one when `w < total % workers`. Results are
//! returned in worker order, so output depends only on `(seed, workers)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::EigenSample;
use crate::error::{Error, Result};

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "RMT_SOURCE_WORKERS";

/// Worker count used when neither a flag nor the environment sets one.
pub const FALLBACK_WORKERS: usize = 4;

/// Worker count from [`WORKERS_ENV`], else [`FALLBACK_WORKERS`].
pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&w| w > 0)
        .unwrap_or(FALLBACK_WORKERS)
}

/// RNG for worker `w`.
pub fn worker_rng(seed: u64, worker: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker as u64);
    rng
}

/// Draws assigned to each worker.
pub fn split_counts(total: usize, workers: usize) -> Vec<usize> {
    (0..workers)
        .map(|w| total / workers + usize::from(w < total % workers))
        .collect()
}

/// Runs `job(worker, rng, count)` on every worker in parallel and returns
/// the results in worker order.
pub fn run_workers<A, F>(seed: u64, workers: usize, total: usize, job: F) -> Result<Vec<A>>
where
    A: Send,
    F: Fn(usize, &mut ChaCha8Rng, usize) -> Result<A> + Sync,
{
    if workers == 0 {
        return Err(Error::InvalidArgument("workers must be >= 1".into()));
    }
    let counts = split_counts(total, workers);
    counts
        .into_par_iter()
        .enumerate()
        .map(|(w, count)| {
            let mut rng = worker_rng(seed, w);
            job(w, &mut rng, count)
        })
        .collect()
}

/// Collects `total` samples from `sampler`, tagging each with `seed`.
pub fn collect_samples<F>(
    seed: u64,
    workers: usize,
    total: usize,
    sampler: F,
) -> Result<Vec<EigenSample>>
where
    F: Fn(&mut ChaCha8Rng) -> Result<EigenSample> + Sync,
{
    let parts = run_workers(seed, workers, total, |_, rng, count| {
        (0..count)
            .map(|_| {
                sampler(rng).map(|mut s| {
                    s.seed = seed;
                    s
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(parts.into_iter().flatten().collect())
}
