//! Batch evaluation over independent queries.
//!
//! Every decision procedure in this crate is pure over immutable inputs, so
//! batches fan out trivially. With the `parallel` feature (default) the work
//! is dispatched through rayon; without it the same entry point degrades to
//! sequential iteration. Output order always follows input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map a pure function over a batch, in input order.
#[cfg(feature = "parallel")]
pub fn map<T: Sync, U: Send, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

/// Map a pure function over a batch, in input order.
#[cfg(not(feature = "parallel"))]
pub fn map<T: Sync, U: Send, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Sequential reference path, available regardless of the feature flag; the
/// bench suite compares it against [`map`].
pub fn map_serial<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}
