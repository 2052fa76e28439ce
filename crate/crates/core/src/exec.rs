//! Serial/parallel execution switch for the data-parallel loops.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] runs on the
//! rayon global pool, or on whatever pool the caller installs. Without the
//! feature it degrades to the serial path. Both paths produce identical results.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Serial,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Serial
        }
    }
}

impl Exec {
    /// Whether this build can actually run in parallel.
    pub const fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }

    /// Applies `f` to every item, keeping input order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// Maps every index of `range` and folds the results with `combine`.
    ///
    /// `combine` must be associative with `identity` as its unit; the parallel
    /// path may group applications differently from the serial one.
    pub fn map_reduce<R, F, I, C>(self, range: Range<usize>, f: F, identity: I, combine: C) -> R
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
        I: Fn() -> R + Sync + Send,
        C: Fn(R, R) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => range.into_par_iter().map(f).reduce(identity, combine),
            _ => range.map(f).fold(identity(), combine),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_agree() {
        let items: Vec<u64> = (0..1000).collect();
        let a = Exec::Serial.map(&items, |x| x * x);
        let b = Exec::Parallel.map(&items, |x| x * x);
        assert_eq!(a, b);
        let s = Exec::Serial.map_reduce(0..1000, |i| i as u64, || 0, |a, b| a + b);
        let p = Exec::Parallel.map_reduce(0..1000, |i| i as u64, || 0, |a, b| a + b);
        assert_eq!(s, p);
        assert_eq!(s, 499_500);
    }
}
