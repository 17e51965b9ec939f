//! Data-parallel map helpers.
//!
//! With the `parallel` feature (default) [`indexed_map`] fans out over the
//! rayon thread pool; without it, it delegates to the sequential variant.
//! Output order equals index order in both modes, so callers are
//! deterministic regardless of the feature set.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `0..n`, in parallel when the `parallel` feature is enabled.
#[cfg(feature = "parallel")]
pub fn indexed_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

/// Maps `f` over `0..n` sequentially (the `parallel` feature is disabled).
#[cfg(not(feature = "parallel"))]
pub fn indexed_map<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    indexed_map_seq(n, f)
}

/// Always-sequential variant; the fallback path and the benchmark baseline.
pub fn indexed_map_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree_in_order() {
        let a = indexed_map(100, |i| i * i);
        let b = indexed_map_seq(100, |i| i * i);
        assert_eq!(a, b);
    }
}
