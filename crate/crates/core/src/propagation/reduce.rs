//! Order-fixed parallel reductions.
//!
//! Inputs are split into chunks of [`CHUNK`] items. Each chunk is folded
//! sequentially, and the per-chunk partials are combined in index order. The
//! grouping never depends on the rayon thread count, so results are bitwise
//! identical for any degree of parallelism.

use num_complex::Complex64;
use rayon::prelude::*;

pub(crate) const CHUNK: usize = 4096;

/// Sum of `f(item)` over `items`.
pub(crate) fn sum_by<T, F>(items: &[T], f: F) -> f64
where
    T: Sync,
    F: Fn(&T) -> f64 + Sync,
{
    items.par_chunks(CHUNK).map(|chunk| chunk.iter().map(&f).sum::<f64>()).collect::<Vec<_>>().into_iter().sum()
}

/// Complex sum of `f(item, index)` over `items`.
pub(crate) fn complex_sum_by<T, F>(items: &[T], f: F) -> Complex64
where
    T: Sync,
    F: Fn(&T, usize) -> Complex64 + Sync,
{
    items
        .par_chunks(CHUNK)
        .enumerate()
        .map(|(c, chunk)| {
            chunk
                .iter()
                .enumerate()
                .map(|(i, item)| f(item, c * CHUNK + i))
                .fold(Complex64::new(0.0, 0.0), |acc, z| acc + z)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Complex64::new(0.0, 0.0), |acc, z| acc + z)
}

/// `(min, max)` of `f(item, index)`; `None` for empty input.
pub(crate) fn min_max_by<T, F>(items: &[T], f: F) -> Option<(f64, f64)>
where
    T: Sync,
    F: Fn(&T, usize) -> f64 + Sync,
{
    items
        .par_iter()
        .enumerate()
        .map(|(i, item)| {
            let v = f(item, i);
            (v, v)
        })
        .reduce_with(|a, b| (a.0.min(b.0), a.1.max(b.1)))
}
