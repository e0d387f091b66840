//! Conditional data-parallel execution.
//!
//! Ensemble members and grid points are independent, so the hot loops are
//! plain maps. With the `parallel` feature they can fan out over rayon;
//! the sequential path is kept for benchmarking and for builds without the
//! feature.

/// Execution policy for data-parallel loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecPolicy {
    /// Use rayon when compiled in and the workload is large enough.
    #[default]
    Parallel,
    /// Force the sequential path.
    Sequential,
}

impl ExecPolicy {
    fn parallelize(self, n: usize) -> bool {
        let _ = n;
        #[cfg(feature = "parallel")]
        {
            self == ExecPolicy::Parallel && n > 1
        }
        #[cfg(not(feature = "parallel"))]
        {
            false
        }
    }
}

/// Maps `f` over `0..n`, conditionally in parallel. Output order is by index.
#[allow(unused_variables)]
pub fn indexed_map<U, F>(policy: ExecPolicy, n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if policy.parallelize(n) {
            return (0..n).into_par_iter().map(f).collect();
        }
    }
    (0..n).map(f).collect()
}

/// Splits `0..n` into contiguous chunks, folds each chunk sequentially in
/// index order, then merges the chunk results in index order.
///
/// The chunk boundaries depend only on `n`, never on scheduling, so
/// floating-point accumulation is bitwise reproducible under any thread
/// count.
pub fn chunked_fold<A, F, M>(policy: ExecPolicy, n: usize, init: impl Fn() -> A + Sync, fold: F, merge: M) -> A
where
    A: Send,
    F: Fn(&mut A, usize) + Sync + Send,
    M: Fn(A, A) -> A,
{
    let chunks = chunk_ranges(n);
    let partials = indexed_map(policy, chunks.len(), |c| {
        let mut acc = init();
        for i in chunks[c].clone() {
            fold(&mut acc, i);
        }
        acc
    });
    partials
        .into_iter()
        .reduce(&merge)
        .unwrap_or_else(init)
}

fn chunk_ranges(n: usize) -> Vec<std::ops::Range<usize>> {
    if n == 0 {
        return vec![];
    }
    let chunk = (n / 64).max(1);
    let mut out = Vec::new();
    let mut start = 0;
    while start < n {
        let end = (start + chunk).min(n);
        out.push(start..end);
        start = end;
    }
    out
}
