//! Sequential or thread-pool execution of independent work items.
//!
//! Without the `parallel` feature every mode runs on the calling thread.
//! Results always come back in input order, so callers see identical
//! output regardless of the mode.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Execution {
    Sequential,
    /// Global rayon pool.
    #[default]
    Parallel,
    /// Dedicated pool with this many threads.
    Jobs(usize),
}

impl Execution {
    /// `jobs == Some(1)` selects sequential execution.
    pub fn from_jobs(jobs: Option<usize>) -> Self {
        match jobs {
            Some(0) | None => Execution::Parallel,
            Some(1) => Execution::Sequential,
            Some(j) => Execution::Jobs(j),
        }
    }

    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Send + Sync,
    {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            let run = |items: Vec<T>| items.into_par_iter().map(&f).collect::<Vec<R>>();
            match self {
                Execution::Sequential => {}
                Execution::Parallel => return run(items),
                Execution::Jobs(j) => {
                    if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(j).build() {
                        return pool.install(|| run(items));
                    }
                    return run(items);
                }
            }
        }
        items.into_iter().map(f).collect()
    }
}
