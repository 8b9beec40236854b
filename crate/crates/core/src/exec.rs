//! Execution policy for the data-parallel loops (quadrature tensor sums,
//! random-state sweeps, parameter sweeps).
//!
//! Results are always collected in index order and reduced sequentially, so
//! `Sequential` and `Parallel` produce bit-identical output. Without the
//! `parallel` feature both policies run on the calling thread.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// Whether this policy actually fans out across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Evaluate `f(i)` for `i in 0..n`, returning results in index order.
    pub fn map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Evaluate `f` on every item, returning results in input order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Deterministic sum of `f(i)` over `0..n` (fixed left-to-right order).
    pub fn sum_range<F>(self, n: usize, f: F) -> f64
    where
        F: Fn(usize) -> f64 + Sync + Send,
    {
        self.map_range(n, f).into_iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policies_agree_bitwise() {
        let f = |i: usize| ((i as f64) * 0.37).sin() / (1.0 + i as f64);
        let a = Exec::Sequential.sum_range(10_000, f);
        let b = Exec::Parallel.sum_range(10_000, f);
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
