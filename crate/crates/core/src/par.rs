//! Deterministic sweeps over index ranges.
//!
//! Results never depend on the worker count: searches report the hit with
//! the lowest index and collections keep index order. The worker count
//! itself is whatever the ambient rayon pool provides.

use rayon::prelude::*;

/// Ranges shorter than this are swept on the calling thread.
pub const PAR_THRESHOLD: usize = 4096;

/// The hit with the lowest index, if any.
pub fn find_first<T, F>(len: usize, probe: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    if len < PAR_THRESHOLD {
        (0..len).find_map(probe)
    } else {
        (0..len).into_par_iter().find_map_first(probe)
    }
}

/// Every hit, in index order.
pub fn collect_hits<T, F>(len: usize, probe: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    if len < PAR_THRESHOLD {
        (0..len).filter_map(probe).collect()
    } else {
        (0..len).into_par_iter().filter_map(probe).collect()
    }
}

/// Applies `probe` to each index and concatenates the outputs in index order.
pub fn flat_collect<T, F>(len: usize, probe: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> Vec<T> + Sync + Send,
{
    if len < PAR_THRESHOLD {
        (0..len).flat_map(probe).collect()
    } else {
        (0..len).into_par_iter().flat_map_iter(probe).collect()
    }
}

/// Like [`flat_collect`] but always fans out, for few expensive items.
pub fn flat_collect_coarse<T, F>(len: usize, probe: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> Vec<T> + Sync + Send,
{
    (0..len).into_par_iter().flat_map_iter(probe).collect()
}
