//! Exact counts of uniquely k-determined n-permutations by independent
//! engines: Hamiltonian-path DP on band schemes, transfer counting on the
//! node-based pruned overlap graph, and transfer counting on the smaller
//! arc-labeled variant. Disagreement between engines is a hard failure; the
//! whole artifact's trust model is cross-method agreement.

use num::{BigUint, One};

use crate::determinacy::is_uniquely_determined;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::overlap::{build_overlap_graph_filtered, OverlapGraph};
use crate::path_scheme::{count_hamiltonian_paths, PathScheme};
use crate::perm::all_permutations;

/// Counts of uniquely k-determined n-permutations indexed by n from 0.
/// The empty permutation is uniquely k-determined, so `counts[0] = 1`, and
/// `counts[n] = n!` for all `n <= k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    k: usize,
    counts: Vec<BigUint>,
}

impl CountTable {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn get(&self, n: usize) -> Option<&BigUint> {
        self.counts.get(n)
    }
}

pub fn factorial(n: usize) -> BigUint {
    let mut out = BigUint::one();
    for i in 1..=n as u64 {
        out *= i;
    }
    out
}

/// The number of uniquely k-determined n-permutations via the
/// Hamiltonian-path bijection: directed Hamiltonian paths of the band scheme
/// G_{k,n}. For `n <= k` this is `n!` directly.
pub fn count_bruteforce(k: usize, n: usize, limits: &Limits) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be >= 1".into()));
    }
    if n <= k {
        return Ok(factorial(n));
    }
    count_hamiltonian_paths(&PathScheme::band(k, n)?, limits)
}

/// Literal sweep: filter all of S_n through the distance criterion. Slowest
/// engine, used as an extra cross-check at small n.
pub fn count_by_filter(k: usize, n: usize, limits: &Limits) -> Result<BigUint> {
    if n > limits.sweep_n {
        return Err(Error::ResourceLimit(format!(
            "filter count needs an S_{n} sweep; budget allows n <= {}",
            limits.sweep_n
        )));
    }
    let count = all_permutations(n)
        .filter(|p| is_uniquely_determined(p, k))
        .count();
    Ok(BigUint::from(count))
}

/// Which pruned overlap graph drives the transfer count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransferVariant {
    /// Nodes are the uniquely k-determined (2k-1)-permutations; an
    /// n-permutation corresponds to a walk with `n - 2k + 1` arcs.
    NodeBased,
    /// Nodes are the uniquely k-determined (2k-2)-permutations and arcs carry
    /// the uniquely k-determined (2k-1)-permutations realizing them as
    /// multiplicities; an n-permutation corresponds to a walk with
    /// `n - 2k + 2` arcs.
    ArcLabeled,
}

impl TransferVariant {
    /// Smallest n the variant answers directly (a walk with zero arcs).
    pub fn min_n(&self, k: usize) -> usize {
        match self {
            TransferVariant::NodeBased => 2 * k - 1,
            TransferVariant::ArcLabeled => 2 * k - 2,
        }
    }
}

/// Builds the pruned overlap graph used by the transfer-matrix engine.
pub fn build_transfer_graph(
    k: usize,
    variant: TransferVariant,
    limits: &Limits,
) -> Result<OverlapGraph> {
    if k < 2 {
        return Err(Error::InvalidInput(
            "transfer graphs are defined for k >= 2".into(),
        ));
    }
    match variant {
        TransferVariant::NodeBased => {
            build_overlap_graph_filtered(2 * k - 1, |p| is_uniquely_determined(p, k), limits)
        }
        TransferVariant::ArcLabeled => {
            let graph = build_overlap_graph_filtered(
                2 * k - 2,
                |p| is_uniquely_determined(p, k),
                limits,
            )?;
            graph.attach_arc_labels(|w| is_uniquely_determined(w, k), true, limits)
        }
    }
}

/// The number of uniquely k-determined n-permutations as a weighted walk
/// total in the pruned overlap graph; delegates the small n below the
/// graph's base length to [`count_bruteforce`].
pub fn count_via_transfer(
    k: usize,
    n: usize,
    variant: TransferVariant,
    limits: &Limits,
) -> Result<BigUint> {
    if k < 2 {
        return Err(Error::InvalidInput(
            "transfer counting is defined for k >= 2".into(),
        ));
    }
    let min_n = variant.min_n(k);
    if n < min_n {
        return count_bruteforce(k, n, limits);
    }
    let graph = build_transfer_graph(k, variant, limits)?;
    Ok(graph.count_walks(n - min_n))
}

/// The table `counts[0..=n_max]`, produced by the Hamiltonian engine below
/// the transfer base length and by node-based transfer counting beyond it.
///
/// Every index both engines can reach within the cross-check budget is
/// computed by all three engines (Hamiltonian, node-based, arc-labeled) and
/// any mismatch aborts with [`Error::Inconsistency`].
pub fn series(k: usize, n_max: usize, limits: &Limits) -> Result<CountTable> {
    if k < 2 {
        return Err(Error::InvalidInput("series is defined for k >= 2".into()));
    }
    let node_base = TransferVariant::NodeBased.min_n(k);
    let arc_base = TransferVariant::ArcLabeled.min_n(k);

    let mut counts: Vec<BigUint> = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max.min(node_base - 1) {
        counts.push(count_bruteforce(k, n, limits)?);
    }
    if n_max >= node_base {
        let node_graph = build_transfer_graph(k, TransferVariant::NodeBased, limits)?;
        for n in node_base..=n_max {
            counts.push(node_graph.count_walks(n - node_base));
        }
    }
    let arc_graph = if n_max >= arc_base {
        Some(build_transfer_graph(k, TransferVariant::ArcLabeled, limits)?)
    } else {
        None
    };

    // Cross-validate every overlapping index within budget.
    for n in arc_base..=n_max {
        if let Some(graph) = &arc_graph {
            let via_arcs = graph.count_walks(n - arc_base);
            if via_arcs != counts[n] {
                return Err(Error::Inconsistency(format!(
                    "arc-labeled transfer gives {via_arcs} for k={k}, n={n}, expected {}",
                    counts[n]
                )));
            }
        }
        if n <= limits.crosscheck_n && n <= limits.subset_dp_n {
            let via_paths = count_bruteforce(k, n, limits)?;
            if via_paths != counts[n] {
                return Err(Error::Inconsistency(format!(
                    "Hamiltonian count gives {via_paths} for k={k}, n={n}, expected {}",
                    counts[n]
                )));
            }
        }
    }

    Ok(CountTable { k, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn limits() -> Limits {
        Limits::default()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(count_bruteforce(3, 5, &limits()).unwrap(), big(20));
        assert_eq!(count_bruteforce(6, 8, &limits()).unwrap(), big(15600));
        assert_eq!(count_bruteforce(6, 9, &limits()).unwrap(), big(61872));
        for k in 2..=6 {
            assert_eq!(count_bruteforce(k, k, &limits()).unwrap(), factorial(k));
        }
        assert_eq!(count_bruteforce(3, 0, &limits()).unwrap(), big(1));
        assert_eq!(count_bruteforce(1, 2, &limits()).unwrap(), big(0));
    }

    #[test]
    fn filter_engine_agrees_with_hamiltonian() {
        for k in 2..=4 {
            for n in 0..=7 {
                assert_eq!(
                    count_by_filter(k, n, &limits()).unwrap(),
                    count_bruteforce(k, n, &limits()).unwrap(),
                    "k={k} n={n}"
                );
            }
        }
    }

    #[test]
    fn transfer_graph_shapes() {
        let arc3 = build_transfer_graph(3, TransferVariant::ArcLabeled, &limits()).unwrap();
        assert_eq!(arc3.node_count(), 12);
        assert_eq!(arc3.arc_count(), 20);
        assert!(arc3.has_labels());

        let node3 = build_transfer_graph(3, TransferVariant::NodeBased, &limits()).unwrap();
        assert_eq!(node3.node_count(), 20);
        // One-arc walks realize the uniquely 3-determined 6-permutations.
        assert_eq!(node3.arc_count(), 34);

        let node2 = build_transfer_graph(2, TransferVariant::NodeBased, &limits()).unwrap();
        assert_eq!(node2.node_count(), 2);
        assert_eq!(node2.arc_count(), 2);
        let monotone: Vec<String> = node2.nodes().iter().map(|p| p.to_string()).collect();
        assert_eq!(monotone, ["123", "321"]);
        for (u, v) in node2.arcs() {
            assert_eq!(u, v, "only self-loops survive for k = 2");
        }
    }

    #[test]
    fn transfer_examples() {
        assert_eq!(
            count_via_transfer(3, 9, TransferVariant::NodeBased, &limits()).unwrap(),
            big(136)
        );
        assert_eq!(
            count_via_transfer(3, 5, TransferVariant::NodeBased, &limits()).unwrap(),
            big(20)
        );
        assert_eq!(
            count_via_transfer(4, 9, TransferVariant::NodeBased, &limits()).unwrap(),
            big(2512)
        );
        assert_eq!(
            count_via_transfer(3, 9, TransferVariant::ArcLabeled, &limits()).unwrap(),
            big(136)
        );
    }

    #[test]
    fn series_golden_k3() {
        let table = series(3, 9, &limits()).unwrap();
        let expected: Vec<BigUint> = [1u64, 1, 2, 6, 12, 20, 34, 56, 88, 136]
            .iter()
            .map(|&v| big(v))
            .collect();
        assert_eq!(table.counts(), expected.as_slice());
    }

    #[test]
    fn series_golden_k7_tail() {
        let table = series(7, 9, &limits()).unwrap();
        assert_eq!(table.get(7), Some(&big(5040)));
        assert_eq!(table.get(8), Some(&big(30240)));
        assert_eq!(table.get(9), Some(&big(159840)));
    }

    #[test]
    fn series_counts_start_factorial() {
        for k in 2..=5 {
            let table = series(k, k + 2, &limits()).unwrap();
            for n in 0..=k {
                assert_eq!(table.get(n), Some(&factorial(n)), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn length_k_plus_one_counts_match_prohibitions() {
        for k in 2..=4 {
            let table = series(k, k + 1, &limits()).unwrap();
            let prohibited = crate::prohibitions::generate_prohibitions(k, &limits())
                .unwrap()
                .by_length()
                .get(&(k + 1))
                .copied()
                .unwrap_or(0);
            assert_eq!(
                table.get(k + 1).unwrap() + BigUint::from(prohibited),
                factorial(k + 1)
            );
        }
    }

    #[test]
    fn predetermined_pair_identity() {
        // Uniquely n-determined (n+1)-permutations are counted by n!(n-1).
        for n in 1..=7usize {
            let expected = factorial(n) * BigUint::from(n as u64 - 1);
            assert_eq!(
                count_bruteforce(n, n + 1, &limits()).unwrap(),
                expected,
                "n={n}"
            );
        }
    }

    #[test]
    fn monotone_in_k() {
        for n in 1..=9 {
            for k in 2..=8usize {
                let smaller = count_bruteforce(k, n, &limits()).unwrap();
                let larger = count_bruteforce(k + 1, n, &limits()).unwrap();
                assert!(smaller <= larger, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn arc_labels_realize_each_arc_exactly_once_for_k3() {
        let graph = build_transfer_graph(3, TransferVariant::ArcLabeled, &limits()).unwrap();
        let mut total = 0;
        for arc in 0..graph.arc_count() {
            let labels = graph.arc_labels(arc).unwrap();
            assert!(!labels.is_empty());
            total += labels.len();
        }
        assert_eq!(total, 20);
        for arc in 0..graph.arc_count() {
            for label in graph.arc_labels(arc).unwrap() {
                assert!(is_uniquely_determined(label, 3));
            }
        }
    }

    #[test]
    fn listed_nodes_of_the_pruned_k3_graph() {
        let graph = build_transfer_graph(3, TransferVariant::ArcLabeled, &limits()).unwrap();
        let expected = [
            "1234", "1243", "1324", "1423", "2134", "2314", "3241", "3421", "4132", "4231",
            "4312", "4321",
        ];
        let nodes: Vec<String> = graph.nodes().iter().map(|p| p.to_string()).collect();
        assert_eq!(nodes, expected);
        let c: Permutation = "1243".parse().unwrap();
        let f: Permutation = "3241".parse().unwrap();
        assert!(!graph.reachable(&c, &f).unwrap());
        assert!(graph.scc_count() > 1);
    }

    #[test]
    fn series_respects_budgets() {
        let tight = Limits {
            graph_nodes: 10,
            ..Limits::default()
        };
        assert!(series(3, 9, &tight).is_err());
    }
}
