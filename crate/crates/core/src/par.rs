//! Data-parallel helpers. With the `parallel` feature these run on rayon;
//! without it they fall back to plain sequential iterators with the same
//! results and ordering.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Whether the parallel backend is compiled in.
pub const PARALLEL: bool = cfg!(feature = "parallel");

/// Maps `f` over `items`, preserving input order in the output.
#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Maps and folds with an associative `combine`; `identity` must be neutral.
#[cfg(feature = "parallel")]
pub fn map_reduce<T, R, F, C, I>(items: &[T], identity: I, f: F, combine: C) -> R
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
    C: Fn(R, R) -> R + Sync + Send,
    I: Fn() -> R + Sync + Send,
{
    items.par_iter().map(f).reduce(identity, combine)
}

#[cfg(not(feature = "parallel"))]
pub fn map_reduce<T, R, F, C, I>(items: &[T], identity: I, f: F, combine: C) -> R
where
    F: Fn(&T) -> R,
    C: Fn(R, R) -> R,
    I: Fn() -> R,
{
    items.iter().map(f).fold(identity(), combine)
}

/// Below this many items the overhead of splitting outweighs the work.
pub const MIN_PARALLEL_LEN: usize = 64;
