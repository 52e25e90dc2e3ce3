//! Execution policy for the data-parallel loops.
//!
//! Every hot loop in the crate is written once as a serial body over a
//! contiguous block of rows or entries; [`Exec`] decides whether those
//! blocks are handed to rayon or walked in order. Block boundaries do not
//! depend on the policy or the thread count, so results are bitwise
//! identical between the two modes.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Serial or parallel execution of block loops.
///
/// `Parallel` silently degrades to `Serial` when the crate is built without
/// the `parallel` feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Serial,
    Parallel,
}

impl Exec {
    /// `Parallel` when the `parallel` feature is enabled, `Serial` otherwise.
    pub const fn auto() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Serial
        }
    }

    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

impl Default for Exec {
    fn default() -> Self {
        Exec::auto()
    }
}

/// Configure the global worker pool. A no-op without the `parallel` feature.
pub fn init_threads(threads: usize) -> Result<(), String> {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| e.to_string())
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        Ok(())
    }
}

/// Number of worker threads the parallel mode will use.
pub fn current_threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

/// Run `f(start, block)` over consecutive blocks of `data` of length `block`.
pub(crate) fn for_each_block_mut<T, F>(exec: Exec, data: &mut [T], block: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    let block = block.max(1);
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        data.par_chunks_mut(block)
            .enumerate()
            .for_each(|(b, chunk)| f(b * block, chunk));
        return;
    }
    let _ = exec;
    for (b, chunk) in data.chunks_mut(block).enumerate() {
        f(b * block, chunk);
    }
}

/// Map `f` over the block ranges of `0..len`, collecting results in order.
pub(crate) fn map_blocks<R, F>(exec: Exec, len: usize, block: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(std::ops::Range<usize>) -> R + Sync + Send,
{
    let block = block.max(1);
    let nblocks = len.div_ceil(block);
    let range = |b: usize| b * block..((b + 1) * block).min(len);
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..nblocks).into_par_iter().map(|b| f(range(b))).collect();
    }
    let _ = exec;
    (0..nblocks).map(|b| f(range(b))).collect()
}

/// Run `f` on each item of `items` (used for pre-split disjoint outputs).
pub(crate) fn for_each_item<T, F>(exec: Exec, items: Vec<T>, f: F)
where
    T: Send,
    F: Fn(T) + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        items.into_par_iter().for_each(f);
        return;
    }
    let _ = exec;
    items.into_iter().for_each(f);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_cover_range_in_order() {
        for exec in [Exec::Serial, Exec::Parallel] {
            let parts = map_blocks(exec, 10, 3, |r| (r.start, r.end));
            assert_eq!(parts, vec![(0, 3), (3, 6), (6, 9), (9, 10)]);
            assert!(map_blocks(exec, 0, 3, |r| r.len()).is_empty());
        }
    }

    #[test]
    fn block_mut_sees_offsets() {
        for exec in [Exec::Serial, Exec::Parallel] {
            let mut v = vec![0usize; 11];
            for_each_block_mut(exec, &mut v, 4, |start, chunk| {
                for (k, x) in chunk.iter_mut().enumerate() {
                    *x = start + k;
                }
            });
            assert_eq!(v, (0..11).collect::<Vec<_>>());
        }
    }
}
