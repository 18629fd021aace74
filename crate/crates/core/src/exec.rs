//! Replication fan-out: rayon when the `parallel` feature is on, a plain
//! loop otherwise.
//!
//! Results are collected in replication order and reduced sequentially,
//! so every aggregate is bit-identical for any worker count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Applies `f` to `0..count`, returning results in index order.
pub(crate) fn map_indexed<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..count).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(f).collect()
    }
}

/// Runs `f` inside a worker pool of the given size.
///
/// `None` uses all available parallelism. Without the `parallel` feature
/// the closure simply runs on the calling thread.
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        match threads {
            None => f(),
            Some(t) => rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .expect("thread pool construction")
                .install(f),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        f()
    }
}
