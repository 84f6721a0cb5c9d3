//! Data-parallel helpers. With the `parallel` feature these run on the rayon
//! global pool; without it they fall back to plain iterators. Results are
//! identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `items.iter().map(f).collect()`, parallel when enabled.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// `(0..n).map(f).collect()`, parallel when enabled.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Folds every item into a `len`-sized count vector and sums the partials.
/// `f` adds item contributions into the accumulator it is given.
pub fn count_into<T, F>(items: &[T], len: usize, f: F) -> Vec<u64>
where
    T: Sync,
    F: Fn(&T, &mut [u64]) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items
            .par_iter()
            .fold(
                || vec![0u64; len],
                |mut acc, item| {
                    f(item, &mut acc);
                    acc
                },
            )
            .reduce(
                || vec![0u64; len],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            )
    }
    #[cfg(not(feature = "parallel"))]
    {
        count_into_seq(items, len, f)
    }
}

/// Sequential reference for [`count_into`]; always compiled so the two can
/// be compared.
pub fn count_into_seq<T, F>(items: &[T], len: usize, f: F) -> Vec<u64>
where
    F: Fn(&T, &mut [u64]),
{
    let mut acc = vec![0u64; len];
    for item in items {
        f(item, &mut acc);
    }
    acc
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
