//! Data-parallel helpers with a sequential fallback (`parallel` feature).
//!
//! Both paths produce bit-identical floating-point results: work is split
//! into fixed blocks, each block is reduced sequentially, and per-block
//! results are combined in index order. Thread scheduling therefore never
//! changes an answer, which the deterministic verification output relies on.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `0..n`, collecting results in index order.
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Sums `f(i)` over `0..n` using fixed blocks of `block` terms. The block
/// structure (not the thread count) fixes the rounding, so the sequential
/// build gives exactly the same bits.
pub fn block_sum<F>(n: usize, block: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    assert!(block > 0);
    let nblocks = (n + block - 1) / block;
    let partials = map_indexed(nblocks, |b| {
        let start = b * block;
        let end = n.min(start + block);
        let mut acc = 0.0;
        for i in start..end {
            acc += f(i);
        }
        acc
    });
    partials.into_iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_sum_handles_ragged_final_block() {
        let s = block_sum(10, 3, |i| i as f64);
        assert_eq!(s, 45.0);
    }

    #[test]
    fn block_sum_is_invariant_under_repeated_evaluation() {
        // Same block size must give the same bits every time, threads or not.
        let f = |i: usize| ((i as f64) * 0.1).sin() / ((i + 1) as f64);
        let a = block_sum(100_000, 1024, f);
        let b = block_sum(100_000, 1024, f);
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn map_indexed_preserves_order() {
        let v = map_indexed(5, |i| i * i);
        assert_eq!(v, vec![0, 1, 4, 9, 16]);
    }
}
