//! Data-parallel helpers.
//!
//! Every parallel loop in the crate goes through [`map_indexed`], which
//! returns results in index order regardless of scheduling. Callers derive
//! any per-item randomness from the item index, so parallel and sequential
//! execution produce identical output.

/// How data-parallel loops are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses the rayon pool when the `parallel` feature is enabled and falls
    /// back to sequential execution otherwise.
    #[default]
    Parallel,
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Maps `f` over `0..len`, collecting results in index order.
pub fn map_indexed<T, F>(exec: Execution, len: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..len).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..len).map(f).collect()
}

/// Deterministic sub-seed for work item `index` of a run seeded with `seed`
/// (splitmix64 finalizer over the pair).
pub fn sub_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(index.wrapping_mul(0xbf58_476d_1ce4_e5b9));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
