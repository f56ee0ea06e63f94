//! Trial execution. With the `parallel` feature (on by default) trials fan
//! out over rayon's work-stealing pool; without it, or with one job, they
//! run in order on the calling thread. Results come back in trial order
//! in every case, so outputs do not depend on the execution strategy.

/// Whether the crate was built with the rayon executor.
pub const PARALLEL: bool = cfg!(feature = "parallel");

/// How trials are scheduled.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Executor {
    /// Worker bound; `None` uses every available core.
    jobs: Option<usize>,
}

impl Executor {
    pub fn new(jobs: Option<usize>) -> Self {
        Executor {
            jobs: jobs.map(|j| j.max(1)),
        }
    }

    pub fn sequential() -> Self {
        Executor { jobs: Some(1) }
    }

    pub fn jobs(&self) -> Option<usize> {
        self.jobs
    }

    /// `[f(0), f(1), …, f(trials − 1)]`.
    pub fn map<T, F>(&self, trials: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        {
            match self.jobs {
                Some(1) => map_sequential(trials, f),
                None => map_parallel(trials, f),
                Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
                    Ok(pool) => pool.install(|| map_parallel(trials, f)),
                    Err(_) => map_sequential(trials, f),
                },
            }
        }
        #[cfg(not(feature = "parallel"))]
        {
            map_sequential(trials, f)
        }
    }
}

pub fn map_sequential<T, F: Fn(u64) -> T>(trials: u64, f: F) -> Vec<T> {
    (0..trials).map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_parallel<T, F>(trials: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..trials).into_par_iter().map(f).collect()
}
