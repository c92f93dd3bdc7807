//! Data-parallel execution with a sequential fallback.
//!
//! With the `parallel` feature (on by default) [`Execution::Parallel`] fans
//! work out over the rayon pool. Without it, both variants run sequentially,
//! so callers never need their own `cfg` switches.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// `(start..end).map(f).collect()`, in parallel when enabled. Output order
    /// always follows the range.
    pub fn map_range<R, F>(self, start: usize, end: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            return (start..end).into_par_iter().map(f).collect();
        }
        (start..end).map(f).collect()
    }

    /// `items.iter().map(f).collect()`, in parallel when enabled.
    pub fn map_slice<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Runs `f` on each `chunk`-sized mutable slice of `data` with its chunk
    /// index.
    pub fn for_each_chunk_mut<T, F>(self, data: &mut [T], chunk: usize, f: F)
    where
        T: Send,
        F: Fn(usize, &mut [T]) + Sync + Send,
    {
        if chunk == 0 {
            return;
        }
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            data.par_chunks_mut(chunk)
                .enumerate()
                .for_each(|(i, c)| f(i, c));
            return;
        }
        data.chunks_mut(chunk)
            .enumerate()
            .for_each(|(i, c)| f(i, c));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        let seq = Execution::Sequential.map_range(0, 1000, |i| i * i);
        let par = Execution::Parallel.map_range(0, 1000, |i| i * i);
        assert_eq!(seq, par);

        let mut a = vec![0usize; 100];
        let mut b = vec![0usize; 100];
        Execution::Sequential
            .for_each_chunk_mut(&mut a, 7, |k, c| c.iter_mut().for_each(|x| *x = k));
        Execution::Parallel.for_each_chunk_mut(&mut b, 7, |k, c| c.iter_mut().for_each(|x| *x = k));
        assert_eq!(a, b);
        assert_eq!(a[99], 14);
    }
}
