//! Order-preserving map over independent tasks.
//!
//! With the `parallel` feature the work is spread over the current rayon
//! pool; without it everything runs on the calling thread. Results come back
//! in input order either way, so callers stay deterministic as long as each
//! task owns its random stream.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..count).map(f).collect()
}

/// Like [`map_indexed`], but forced onto the calling thread when `serial`.
pub fn map_indexed_if<T, F>(serial: bool, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if serial {
        (0..count).map(f).collect()
    } else {
        map_indexed(count, f)
    }
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
