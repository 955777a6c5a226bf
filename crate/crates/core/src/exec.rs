//! Data-parallel loops with a sequential fallback.
//!
//! With the `parallel` feature (on by default) [`Execution::Parallel`] runs
//! on the rayon pool; without it every request runs sequentially. Work is
//! always cut into the same chunks, so results are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Calls `f(chunk_index, chunk)` for consecutive chunks of `out`.
pub fn for_each_chunk<T, F>(out: &mut [T], chunk: usize, exec: Execution, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Send + Sync,
{
    assert!(chunk > 0, "chunk size must be positive");
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => out
            .par_chunks_mut(chunk)
            .enumerate()
            .for_each(|(i, c)| f(i, c)),
        _ => out.chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c)),
    }
}

/// `xs.iter().map(f).collect()`, in parallel when requested.
pub fn map<T, U, F>(xs: &[T], exec: Execution, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Send + Sync,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => xs.par_iter().map(f).collect(),
        _ => xs.iter().map(f).collect(),
    }
}

/// Sorts finite floats ascending.
pub fn sort_floats(xs: &mut [f64], exec: Execution) {
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => xs.par_sort_unstable_by(f64::total_cmp),
        _ => xs.sort_unstable_by(f64::total_cmp),
    }
}

/// Maximum of `f(i, x_i)` over the slice; `0.0` when empty.
pub fn max_by_index<F>(xs: &[f64], exec: Execution, f: F) -> f64
where
    F: Fn(usize, f64) -> f64 + Send + Sync,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => xs
            .par_iter()
            .enumerate()
            .map(|(i, &x)| f(i, x))
            .reduce(|| 0.0, f64::max),
        _ => xs
            .iter()
            .enumerate()
            .map(|(i, &x)| f(i, x))
            .fold(0.0, f64::max),
    }
}
