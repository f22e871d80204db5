//! Index-range executor for exhaustive scans.
//!
//! Every census in this crate enumerates a candidate space addressed by a
//! rank in `0..total`. The helpers here split that range into fixed chunks,
//! evaluate each chunk independently and merge the partial results by
//! addition (or concatenation in rank order), so the outcome never depends
//! on scheduling.

use crate::config::Exec;
use std::ops::Range;

/// Chunk length used when splitting a rank range across workers.
const CHUNK: u64 = 1 << 10;

fn chunks(total: u64) -> impl Iterator<Item = Range<u64>> + Clone {
    let n = total.div_ceil(CHUNK);
    (0..n).map(move |i| i * CHUNK..((i + 1) * CHUNK).min(total))
}

/// Sums `f(chunk)` over a partition of `0..total`.
pub fn sum_chunks<F>(exec: Exec, total: u64, f: F) -> u64
where
    F: Fn(Range<u64>) -> u64 + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            let ranges: Vec<_> = chunks(total).collect();
            ranges.into_par_iter().map(f).sum()
        }
        _ => chunks(total).map(f).sum(),
    }
}

/// Counts ranks in `0..total` satisfying `pred`.
pub fn count<F>(exec: Exec, total: u64, pred: F) -> u64
where
    F: Fn(u64) -> bool + Sync + Send,
{
    sum_chunks(exec, total, |r| r.filter(|&i| pred(i)).count() as u64)
}

/// Maps every chunk to a vector and concatenates the results in rank order.
pub fn collect_chunks<T, F>(exec: Exec, total: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<u64>) -> Vec<T> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            let ranges: Vec<_> = chunks(total).collect();
            let parts: Vec<Vec<T>> = ranges.into_par_iter().map(f).collect();
            parts.into_iter().flatten().collect()
        }
        _ => chunks(total).flat_map(f).collect(),
    }
}

/// Maps every chunk to a partial result and folds them with `merge` in rank
/// order. `merge` must be associative.
pub fn reduce_chunks<T, F, M>(exec: Exec, total: u64, f: F, merge: M) -> Option<T>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            // reduce_with keeps operands in range order, so an associative
            // merge gives the sequential result
            let ranges: Vec<_> = chunks(total).collect();
            ranges.into_par_iter().map(f).reduce_with(merge)
        }
        _ => chunks(total).map(f).reduce(merge),
    }
}

/// Applies `f` to every item of `items`, preserving order.
pub fn map<T, U, F>(exec: Exec, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunking_covers_range_exactly() {
        for total in [0u64, 1, 1023, 1024, 1025, 5000] {
            let covered: u64 = chunks(total).map(|r| r.end - r.start).sum();
            assert_eq!(covered, total);
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let pred = |i: u64| i % 7 == 3 || i.count_ones() == 5;
        let a = count(Exec::Sequential, 100_000, pred);
        let b = count(Exec::Parallel, 100_000, pred);
        assert_eq!(a, b);
        let xs = collect_chunks(Exec::Parallel, 3000, |r| r.filter(|i| i % 11 == 0).collect());
        let ys = collect_chunks(Exec::Sequential, 3000, |r| r.filter(|i| i % 11 == 0).collect());
        assert_eq!(xs, ys);
    }
}
