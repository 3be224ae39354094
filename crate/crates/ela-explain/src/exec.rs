//! Execution helpers for the data-parallel loops (instances, folds,
//! trees, explained rows). With the `parallel` feature the indexed maps
//! run on rayon; without it they fall back to the sequential versions.
//! Output order is index order either way, so results are identical.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Sequential reference implementation. Always available; the benches
/// use it as the baseline against the rayon path.
pub fn map_indexed_seq<T, R>(items: &[T], f: impl Fn(usize, &T) -> R) -> Vec<R> {
    items.iter().enumerate().map(|(i, t)| f(i, t)).collect()
}

/// Sequential map over `0..n`.
pub fn map_range_seq<R>(n: usize, f: impl Fn(usize) -> R) -> Vec<R> {
    (0..n).map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_indexed<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(usize, &T) -> R + Sync + Send,
{
    items.par_iter().enumerate().map(|(i, t)| f(i, t)).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(usize, &T) -> R,
{
    map_indexed_seq(items, f)
}

#[cfg(feature = "parallel")]
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    F: Fn(usize) -> R,
{
    map_range_seq(n, f)
}

/// Bound the worker count for subsequent parallel sections. A no-op
/// without the `parallel` feature and once a pool already exists (tests
/// may install one first; the first caller wins).
pub fn configure_jobs(jobs: usize) {
    #[cfg(feature = "parallel")]
    if jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
}
