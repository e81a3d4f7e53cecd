//! Running many independent solver jobs. With the `parallel` feature the
//! jobs fan out over a rayon pool; without it [`Execution::Parallel`] runs
//! them in order on the calling thread.

use crate::queue::Backend;
use crate::sssp::{solve, Graph, QueueParams, SsspError, SsspResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Sequential,
    Parallel,
}

/// Whether [`Execution::Parallel`] actually uses more than one thread.
pub fn parallel_available() -> bool {
    cfg!(feature = "parallel")
}

/// Applies `f` to every item, keeping input order in the output.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Runs `f` on a dedicated pool of `threads` workers, or on the global
/// pool when `threads` is `None`.
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    if let Some(t) = threads {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
        {
            return pool.install(f);
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    f()
}

/// One solver run: a graph, a source and a queue choice.
#[derive(Debug, Clone, Copy)]
pub struct Job<'g> {
    pub graph: &'g Graph,
    pub source: usize,
    pub backend: Backend,
    pub params: QueueParams,
}

pub fn solve_all(exec: Execution, jobs: &[Job<'_>]) -> Vec<Result<SsspResult, SsspError>> {
    map(exec, jobs, |j| {
        solve(j.graph, j.source, j.backend, &j.params)
    })
}
