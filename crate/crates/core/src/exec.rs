//! Sequential / data-parallel execution switch.
//!
//! Every parallel loop in the crate goes through here. Without the `parallel`
//! feature, [`ExecMode::Parallel`] silently runs sequentially. Results never
//! depend on the mode: reductions are done on index-ordered output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExecMode {
    Sequential,
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

impl ExecMode {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            ExecMode::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }

    /// Like [`ExecMode::map`] with a per-worker scratch value built by `init`.
    pub fn map_with<T, S, R, I, F>(self, items: &[T], init: I, f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        I: Fn() -> S + Sync + Send,
        F: Fn(&mut S, &T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            ExecMode::Parallel => items.par_iter().map_init(&init, |s, t| f(s, t)).collect(),
            _ => {
                let mut s = init();
                items.iter().map(|t| f(&mut s, t)).collect()
            }
        }
    }

    /// Maps over `0..len` with scratch, preserving order.
    pub fn map_range_with<S, R, I, F>(self, len: usize, init: I, f: F) -> Vec<R>
    where
        R: Send,
        I: Fn() -> S + Sync + Send,
        F: Fn(&mut S, usize) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            ExecMode::Parallel => (0..len).into_par_iter().map_init(&init, |s, i| f(s, i)).collect(),
            _ => {
                let mut s = init();
                (0..len).map(|i| f(&mut s, i)).collect()
            }
        }
    }
}

/// Runs `f` inside a pool of `threads` workers (0 = rayon default).
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    if threads > 0 {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            return pool.install(f);
        }
    }
    let _ = threads;
    f()
}
