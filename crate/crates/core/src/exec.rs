//! Sequential / data-parallel execution switch.
//!
//! With the `parallel` feature (on by default) `Strategy::Parallel` runs on
//! the rayon pool; without it every strategy runs sequentially. Results are
//! always returned in input order, so output never depends on scheduling.

use std::sync::atomic::{AtomicUsize, Ordering};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    Sequential,
    #[default]
    Parallel,
}

static JOBS: AtomicUsize = AtomicUsize::new(0);

/// Cap the number of worker threads used by `Strategy::Parallel`.
/// Zero means "rayon's default". Only the first call that reaches the pool
/// takes effect.
pub fn set_jobs(n: usize) {
    JOBS.store(n, Ordering::SeqCst);
    #[cfg(feature = "parallel")]
    if n > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

pub fn parallel_available() -> bool {
    cfg!(feature = "parallel") && JOBS.load(Ordering::SeqCst) != 1
}

/// Map `f` over `0..n`, collecting results in index order.
pub fn map_range<R, F>(strategy: Strategy, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel if parallel_available() => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

/// Map `f` over a slice, collecting results in slice order.
pub fn map_slice<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel if parallel_available() => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// First `Some` in index order. The parallel path may evaluate later
/// indices speculatively but always returns the same value as the
/// sequential scan.
pub fn find_first<R, F>(strategy: Strategy, n: usize, f: F) -> Option<R>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel if parallel_available() => {
            use rayon::prelude::*;
            (0..n).into_par_iter().find_map_first(f)
        }
        _ => (0..n).find_map(f),
    }
}
