//! Execution backends for the scan-heavy inner loops (filling enumeration,
//! variation sweeps, verification sweeps).
//!
//! Every primitive has a sequential implementation; with the `parallel`
//! feature (on by default) a rayon implementation is compiled as well and
//! used by the rest of the crate. Results are independent of the backend:
//! collected output preserves index order and reductions are order-insensitive
//! maxima, never floating-point sums.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Threshold below which the dispatchers stay sequential; tiny candidate
/// spaces are not worth a fork-join.
const PAR_THRESHOLD: u64 = 1 << 10;

pub fn filter_map_indices_seq<T, F>(n: u64, f: F) -> Vec<T>
where
    F: Fn(u64) -> Option<T> + Sync + Send,
    T: Send,
{
    (0..n).filter_map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn filter_map_indices_par<T, F>(n: u64, f: F) -> Vec<T>
where
    F: Fn(u64) -> Option<T> + Sync + Send,
    T: Send,
{
    (0..n).into_par_iter().filter_map(f).collect()
}

/// Applies `f` to `0..n` and collects the `Some` results in index order.
pub(crate) fn filter_map_indices<T, F>(n: u64, f: F) -> Vec<T>
where
    F: Fn(u64) -> Option<T> + Sync + Send,
    T: Send,
{
    #[cfg(feature = "parallel")]
    if n >= PAR_THRESHOLD {
        return filter_map_indices_par(n, f);
    }
    filter_map_indices_seq(n, f)
}

pub fn fold_max_seq<F>(n: u64, f: F) -> Option<f64>
where
    F: Fn(u64) -> f64 + Sync,
{
    (0..n).map(f).fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v))))
}

#[cfg(feature = "parallel")]
pub fn fold_max_par<F>(n: u64, f: F) -> Option<f64>
where
    F: Fn(u64) -> f64 + Sync + Send,
{
    if n == 0 {
        return None;
    }
    Some((0..n).into_par_iter().map(f).reduce(|| f64::NEG_INFINITY, f64::max))
}

/// Maximum of `f` over `0..n`; `None` when `n == 0`.
pub(crate) fn fold_max(n: u64, f: impl Fn(u64) -> f64 + Sync + Send) -> Option<f64> {
    #[cfg(feature = "parallel")]
    if n >= PAR_THRESHOLD {
        return fold_max_par(n, f);
    }
    fold_max_seq(n, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_map_preserves_order() {
        let f = |i: u64| if i % 3 == 0 { Some(i) } else { None };
        let seq = filter_map_indices_seq(5000, f);
        assert_eq!(seq, (0..5000).filter(|i| i % 3 == 0).collect::<Vec<_>>());
        #[cfg(feature = "parallel")]
        assert_eq!(filter_map_indices_par(5000, f), seq);
    }

    #[test]
    fn fold_max_agrees_across_backends() {
        let f = |i: u64| ((i as f64) * 0.37).sin();
        let seq = fold_max_seq(10_000, f);
        assert!(seq.is_some());
        #[cfg(feature = "parallel")]
        assert_eq!(fold_max_par(10_000, f), seq);
        assert_eq!(fold_max_seq(0, f), None);
    }
}
