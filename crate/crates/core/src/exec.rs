//! Execution strategy for the data-parallel kernels (box scans, corpus
//! verification, S-unit enumeration).
//!
//! With the `parallel` feature the work items are spread over the rayon
//! pool; without it, [`Strategy::Parallel`] silently runs sequentially.
//! Both paths return results in input order.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    /// Maps every item and concatenates the outputs, preserving order.
    pub fn flat_map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Vec<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Strategy::Parallel => {
                use rayon::prelude::*;
                items.par_iter().flat_map_iter(f).collect()
            }
            _ => items.iter().flat_map(f).collect(),
        }
    }

    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Strategy::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree_and_keep_order() {
        let items: Vec<u32> = (0..1000).collect();
        let f = |x: &u32| vec![*x, x * 2];
        let seq = Strategy::Sequential.flat_map(&items, f);
        let par = Strategy::Parallel.flat_map(&items, f);
        assert_eq!(seq, par);
        assert_eq!(&seq[..4], &[0, 0, 1, 2]);
        assert_eq!(Strategy::Sequential.map(&items, |x| x + 1), Strategy::Parallel.map(&items, |x| x + 1));
    }
}
