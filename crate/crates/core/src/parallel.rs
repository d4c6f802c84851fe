//! Worker pool sizing.

use rayon::ThreadPoolBuilder;

/// Environment variable holding the worker count.
pub const WORKERS_ENV: &str = "INTERTWINE_WORKERS";

/// Worker count from [`WORKERS_ENV`], or rayon's default.
pub fn worker_count() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(rayon::current_num_threads)
}

/// Runs `f` on a pool with [`worker_count`] threads.
pub fn install<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    match ThreadPoolBuilder::new().num_threads(worker_count()).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}
