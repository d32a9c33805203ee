//! Data-parallel helpers.
//!
//! With the `parallel` feature the maps below run on rayon; without it, or
//! inside [`with_execution`]`(Execution::Sequential, ..)`, they run on the
//! calling thread. Results are always collected in input order and reduced
//! left to right, so a computation gives bit-identical output in both modes.

use std::cell::Cell;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

thread_local! {
    static OVERRIDE: Cell<Option<Execution>> = const { Cell::new(None) };
}

pub fn default_execution() -> Execution {
    if cfg!(feature = "parallel") {
        Execution::Parallel
    } else {
        Execution::Sequential
    }
}

pub fn current() -> Execution {
    OVERRIDE.with(|o| o.get()).unwrap_or_else(default_execution)
}

/// Run `f` with the given execution mode on this thread.
///
/// Nested maps spawned on rayon workers inherit nothing, but they only ever
/// start from a parallel outer map, so the override is only relevant for
/// forcing sequential runs (benches, determinism tests).
pub fn with_execution<R>(mode: Execution, f: impl FnOnce() -> R) -> R {
    let prev = OVERRIDE.with(|o| o.replace(Some(mode)));
    let out = f();
    OVERRIDE.with(|o| o.set(prev));
    out
}

pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if current() == Execution::Parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if current() == Execution::Parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// Ordered sum; the parallel part is only the evaluation.
pub fn sum_range<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    map_range(n, f).into_iter().fold(0.0, |a, b| a + b)
}

/// Fallible map that stops at the first error in input order.
pub fn try_map<T, R, E, F>(items: &[T], f: F) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    F: Fn(&T) -> Result<R, E> + Sync + Send,
{
    map(items, f).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_bitwise() {
        let f = |i: usize| ((i as f64) * 0.37).sin() / (1.0 + i as f64);
        let a = with_execution(Execution::Sequential, || sum_range(10_000, f));
        let b = with_execution(Execution::Parallel, || sum_range(10_000, f));
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn override_restores() {
        let before = current();
        with_execution(Execution::Sequential, || {
            assert_eq!(current(), Execution::Sequential)
        });
        assert_eq!(current(), before);
    }
}
