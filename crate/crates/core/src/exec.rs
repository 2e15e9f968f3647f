//! Execution policy for the data-parallel loops (mesh points, curvature
//! samples, group verification).

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How an index-parallel map is evaluated. Results are always returned in
/// index order, so the choice never changes output bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    /// Rayon work-stealing when the `parallel` feature is enabled; falls back
    /// to [`Exec::Sequential`] otherwise.
    #[default]
    Parallel,
}

/// Below this many items the parallel path is not worth the scheduling cost.
#[cfg(feature = "parallel")]
const MIN_PARALLEL_LEN: usize = 256;
/// Smallest batch handed to one rayon task.
#[cfg(feature = "parallel")]
const MIN_BATCH: usize = 32;

impl Exec {
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel if n >= MIN_PARALLEL_LEN => (0..n).into_par_iter().with_min_len(MIN_BATCH).map(f).collect(),
            _ => (0..n).map(f).collect(),
        }
    }

    /// Fills `out` in chunks of `stride`, one chunk per index.
    pub fn fill_chunks<F>(self, out: &mut [f64], stride: usize, f: F)
    where
        F: Fn(usize, &mut [f64]) + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel if out.len() / stride.max(1) >= MIN_PARALLEL_LEN => out
                .par_chunks_mut(stride)
                .with_min_len(MIN_BATCH)
                .enumerate()
                .for_each(|(i, c)| f(i, c)),
            _ => out
                .chunks_mut(stride)
                .enumerate()
                .for_each(|(i, c)| f(i, c)),
        }
    }

    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}
