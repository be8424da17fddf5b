//! Data-parallel map over independent work items.
//!
//! With the `parallel` feature (on by default) [`ExecMode::Parallel`] runs
//! on the rayon global pool; without it every mode runs sequentially.
//! Results always come back in input order.

/// How a batch of independent evaluations is scheduled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    #[default]
    Parallel,
}

impl ExecMode {
    /// `true` when this build can honour [`ExecMode::Parallel`].
    pub const fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

pub(crate) fn map_indexed<T, U, F>(items: &[T], mode: ExecMode, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(usize, &T) -> U + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            items.par_iter().enumerate().map(|(i, x)| f(i, x)).collect()
        }
        _ => items.iter().enumerate().map(|(i, x)| f(i, x)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_and_keep_order() {
        let xs: Vec<u64> = (0..1000).collect();
        let seq = map_indexed(&xs, ExecMode::Sequential, |i, x| i as u64 * x);
        let par = map_indexed(&xs, ExecMode::Parallel, |i, x| i as u64 * x);
        assert_eq!(seq, par);
        assert_eq!(seq[10], 100);
    }
}
