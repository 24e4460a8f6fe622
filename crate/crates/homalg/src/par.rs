//! Data-parallel fan-out for independent homology jobs.
//!
//! With the default `parallel` feature, jobs run on the rayon pool; without
//! it everything is sequential. Results come back in input order either way,
//! so output is deterministic regardless of scheduling.

/// Map `f` over `items`, in parallel when the `parallel` feature is enabled.
#[cfg(feature = "parallel")]
pub fn run_jobs<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send + Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(&f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn run_jobs<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(&f).collect()
}

/// Always-sequential variant, kept unconditionally for benchmarks and for the
/// `*_seq` entry points.
pub fn run_jobs_seq<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(&f).collect()
}
