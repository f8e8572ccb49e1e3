//! Data-parallel map with a sequential fallback.
//!
//! Everything parallel in this crate is a pure map over an indexed slice
//! followed by an ordered reduction, so results never depend on scheduling.
//! With the `parallel` feature disabled (or `ExecMode::Sequential`) the same
//! code runs single-threaded.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Parallel,
    Sequential,
}

impl Default for ExecMode {
    fn default() -> Self {
        ExecMode::Parallel
    }
}

#[cfg(feature = "parallel")]
pub fn par_map<T, R, F>(mode: ExecMode, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    use rayon::prelude::*;
    match mode {
        ExecMode::Parallel => items.par_iter().map(f).collect(),
        ExecMode::Sequential => items.iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, R, F>(_mode: ExecMode, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    items.iter().map(f).collect()
}

/// Maps `f` over `0..n` split into ranges of `chunk` and returns the per-range
/// results in range order.
pub fn par_map_ranges<R, F>(mode: ExecMode, n: u64, chunk: u64, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(std::ops::Range<u64>) -> R + Sync,
{
    let chunk = chunk.max(1);
    let ranges: Vec<std::ops::Range<u64>> =
        (0..n).step_by(chunk as usize).map(|lo| lo..(lo + chunk).min(n)).collect();
    par_map(mode, &ranges, |r| f(r.clone()))
}
