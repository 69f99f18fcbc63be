//! Size limits guarding the combinatorial constructions.

/// Limits applied by constructions whose output grows combinatorially.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest arity accepted for truncated powers and layers.
    pub max_arity: usize,
    /// Largest `q` accepted for computations in `Q[Σ_q]`.
    pub max_symmetric_degree: usize,
    /// Largest number of basis elements in one degree of a generated complex.
    pub max_block_rank: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_arity: 4, max_symmetric_degree: 7, max_block_rank: 200_000 }
    }
}

impl Budget {
    /// A budget whose block-rank cap is derived from a memory allowance in MiB.
    ///
    /// One basis element of a generated complex costs on the order of a few
    /// hundred bytes once labels and sparse differentials are counted.
    pub fn with_memory_mb(mb: usize) -> Self {
        let max_block_rank = (mb.saturating_mul(1024 * 1024) / 512).max(1);
        Budget { max_block_rank, ..Budget::default() }
    }
}
