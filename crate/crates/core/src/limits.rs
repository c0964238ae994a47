/// Budgets for the exhaustive and memory-hungry operations.
///
/// Every field is a knob with a conservative desk-scale default; raise them
/// explicitly when more compute or memory is available. Operations that can
/// exceed a budget return [`crate::Error::ResourceLimit`] instead of running
/// away.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Largest `n` for exhaustive sweeps over all `n!` permutations.
    pub sweep_n: usize,
    /// Largest `n` for the Hamiltonian-path subset DP over `2^n` masks.
    pub subset_dp_n: usize,
    /// Largest element count for linear-extension counting by downset DP.
    pub linear_ext_n: usize,
    /// Largest node count for pattern-overlap graphs (`m!` must stay below).
    pub graph_nodes: u64,
    /// Largest `k` for prohibition-set generation (enumerates S_{2k-1}).
    pub prohibition_k: usize,
    /// Largest `n` at which [`crate::counting::series`] cross-validates its
    /// transfer engines against the Hamiltonian-path engine.
    pub crosscheck_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            sweep_n: 10,
            subset_dp_n: 24,
            linear_ext_n: 20,
            graph_nodes: 400_000,
            prohibition_k: 5,
            crosscheck_n: 14,
        }
    }
}
