//! Data-parallel map with a sequential fallback.
//!
//! Everything parallel in this crate is an independent-by-index sweep whose
//! results are collected back in index order, so the `parallel` feature only
//! changes wall-clock time, never results: per-item arithmetic is identical
//! and no floating-point reduction crosses items.

#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}
