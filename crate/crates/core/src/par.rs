//! Cell-level data parallelism.
//!
//! Verification grids and per-cell counts are independent, so they are mapped
//! over either sequentially or on a rayon pool. Without the `parallel`
//! feature every mode runs sequentially. Results always come back in input
//! order.

/// How to evaluate a batch of independent cells.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    /// Rayon's global pool.
    #[default]
    Auto,
    /// A dedicated pool with this many threads (1 means sequential).
    Threads(usize),
}

impl Parallelism {
    pub fn from_jobs(jobs: Option<usize>) -> Self {
        match jobs {
            None => Parallelism::Auto,
            Some(0) => Parallelism::Auto,
            Some(1) => Parallelism::Sequential,
            Some(n) => Parallelism::Threads(n),
        }
    }

    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            match self {
                Parallelism::Sequential => items.into_iter().map(f).collect(),
                Parallelism::Auto => items.into_par_iter().map(f).collect(),
                Parallelism::Threads(n) => {
                    match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                        Ok(pool) => pool.install(|| items.into_par_iter().map(&f).collect()),
                        Err(_) => items.into_iter().map(f).collect(),
                    }
                }
            }
        }
        #[cfg(not(feature = "parallel"))]
        {
            let _ = self;
            items.into_iter().map(f).collect()
        }
    }
}
