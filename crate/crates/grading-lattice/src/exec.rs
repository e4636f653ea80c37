//! Sequential or data-parallel evaluation with order-preserving results.

/// Evaluation strategy for the data-parallel kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether the parallel path is compiled in and selected.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Map `f` over `items`, keeping input order in the output.
pub fn map_ordered<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = map_ordered(Execution::Sequential, &xs, |x| x * x);
        let b = map_ordered(Execution::Parallel, &xs, |x| x * x);
        assert_eq!(a, b);
    }
}
