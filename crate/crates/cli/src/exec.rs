use std::num::NonZeroUsize;
use std::thread;

use replen_core::oracle::CandidateExecutor;

/// Runs candidate evaluations on scoped worker threads, keeping input order.
#[derive(Debug, Clone, Copy)]
pub struct Threaded {
    pub workers: usize,
}

impl Threaded {
    pub fn new(workers: usize) -> Self {
        Self { workers: workers.max(1) }
    }

    pub fn available() -> Self {
        Self::new(thread::available_parallelism().map_or(1, NonZeroUsize::get))
    }
}

impl CandidateExecutor for Threaded {
    fn map<T, R, F>(&self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync,
    {
        if self.workers <= 1 || items.len() <= 1 {
            return items.into_iter().map(f).collect();
        }
        let chunk = items.len().div_ceil(self.workers);
        let mut chunks: Vec<Vec<T>> = Vec::new();
        let mut iter = items.into_iter().peekable();
        while iter.peek().is_some() {
            chunks.push(iter.by_ref().take(chunk).collect());
        }
        let f = &f;
        thread::scope(|s| {
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|c| s.spawn(move || c.into_iter().map(f).collect::<Vec<R>>()))
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().unwrap_or_else(|e| std::panic::resume_unwind(e)))
                .collect()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order() {
        let out = Threaded::new(3).map((0..10).collect(), |v: i32| v * v);
        assert_eq!(out, (0..10).map(|v| v * v).collect::<Vec<_>>());
    }

    #[test]
    fn matches_sequential_planner() {
        use replen_core::gen::{corpus, preset};
        use replen_core::greedy::{full_solve, full_solve_with, PlannerConfig};
        for inst in corpus(&preset("small-corpus").unwrap(), 7, 10).unwrap() {
            let cfg = PlannerConfig::default();
            let a = full_solve(&inst, &cfg).unwrap();
            let b = full_solve_with(&inst, &cfg, &Threaded::new(4)).unwrap();
            assert_eq!(a.x, b.x);
            assert_eq!(a.objective, b.objective);
        }
    }
}
