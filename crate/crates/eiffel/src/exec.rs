//! Execution-mode facade for data-parallel inner loops.
//!
//! Dimension-wise sharing, share verification and reconstruction are
//! embarrassingly parallel. With the `parallel` feature (default) they run on
//! rayon; without it everything is sequential. [`ExecMode`] lets callers (and
//! the benchmark suite) force either path explicitly; [`map`] and friends pick
//! the default for the build.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    /// Rayon-backed. Falls back to sequential when the `parallel` feature is
    /// compiled out.
    Parallel,
}

impl ExecMode {
    pub fn default_mode() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

/// Map over an index range, collecting results in order.
pub fn map_range<U, F>(mode: ExecMode, n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    match mode {
        ExecMode::Sequential => (0..n).map(f).collect(),
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                (0..n).into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                (0..n).map(f).collect()
            }
        }
    }
}

/// Map over a slice, collecting results in order.
pub fn map_slice<T, U, F>(mode: ExecMode, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.iter().map(f).collect(),
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                items.par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                items.iter().map(f).collect()
            }
        }
    }
}

/// Shorthand for [`map_range`] in the build's default mode.
pub fn map<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    map_range(ExecMode::default_mode(), n, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let sq = |i: usize| i * i + 1;
        let a = map_range(ExecMode::Sequential, 100, sq);
        let b = map_range(ExecMode::Parallel, 100, sq);
        assert_eq!(a, b);
    }
}
