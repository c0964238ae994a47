//! Partial orders induced by window paths, linear-extension counting by
//! downset DP, and the m-k classification of permutations.

use std::collections::{BTreeMap, HashMap};

use num::BigUint;
use serde::Serialize;

use crate::determinacy::window_path;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::perm::{all_permutations, Permutation, MAX_LEN};

/// A partial order on the values `1..=n` of a permutation. `u` below `v`
/// means `u < v` as integers and the order of the pair is forced by window
/// co-occurrence; the stored relation is transitively closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    /// above[u] = bitmask of elements strictly above u (0-based).
    above: Vec<u64>,
}

/// The poset of a permutation for window length `k`: values `u < v` are
/// comparable exactly when forced by the transitive closure of "u and v share
/// a length-k window", i.e. `d_p(u, v) <= k - 1`.
pub fn poset_from_permutation(p: &Permutation, k: usize) -> Result<Poset> {
    let n = p.len();
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!(
            "window length {k} must lie in 1..={n}"
        )));
    }
    let mut pos = vec![0usize; n + 1];
    for (i, &v) in p.values().iter().enumerate() {
        pos[v as usize] = i;
    }
    let mut above = vec![0u64; n];
    for u in 1..=n {
        for v in u + 1..=n {
            if pos[u].abs_diff(pos[v]) < k {
                above[u - 1] |= 1 << (v - 1);
            }
        }
    }
    let acyclic = close_relation(&mut above);
    debug_assert!(acyclic, "value order admits no cycles");
    Ok(Poset { n, above })
}

impl Poset {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Strict comparability `u` below `v` (1-based values).
    pub fn less(&self, u: u32, v: u32) -> bool {
        self.above[u as usize - 1] & (1 << (v as usize - 1)) != 0
    }

    pub fn comparable(&self, u: u32, v: u32) -> bool {
        u == v || self.less(u, v) || self.less(v, u)
    }

    /// All unordered incomparable pairs `(u, v)` with `u < v`, sorted.
    pub fn incomparable_pairs(&self) -> Vec<(u32, u32)> {
        let mut pairs = Vec::new();
        for u in 1..=self.n as u32 {
            for v in u + 1..=self.n as u32 {
                if !self.comparable(u, v) {
                    pairs.push((u, v));
                }
            }
        }
        pairs
    }

    /// A chain has every pair comparable; equivalently the underlying
    /// permutation is uniquely k-determined.
    pub fn is_chain(&self) -> bool {
        self.incomparable_pairs().is_empty()
    }

    /// Cover relations `(u, v)`: `u` below `v` with nothing in between.
    pub fn cover_relations(&self) -> Vec<(u32, u32)> {
        let mut below = vec![0u64; self.n];
        for u in 0..self.n {
            let mut ups = self.above[u];
            while ups != 0 {
                let v = ups.trailing_zeros() as usize;
                ups &= ups - 1;
                below[v] |= 1 << u;
            }
        }
        let mut covers = Vec::new();
        for u in 0..self.n {
            let mut ups = self.above[u];
            while ups != 0 {
                let v = ups.trailing_zeros() as usize;
                ups &= ups - 1;
                if self.above[u] & below[v] == 0 {
                    covers.push((u as u32 + 1, v as u32 + 1));
                }
            }
        }
        covers
    }

    /// Exact number of linear extensions.
    pub fn count_linear_extensions(&self, limits: &Limits) -> Result<BigUint> {
        if self.n > limits.linear_ext_n {
            return Err(Error::ResourceLimit(format!(
                "linear extension counting on {} elements; budget allows n <= {}",
                self.n, limits.linear_ext_n
            )));
        }
        Ok(count_extensions(&self.above))
    }

    /// Hasse diagram in DOT format, deterministic node and edge order.
    pub fn export_dot(&self) -> String {
        let mut out = String::from("digraph hasse {\n");
        for v in 1..=self.n {
            out.push_str(&format!("  \"{v}\";\n"));
        }
        for (u, v) in self.cover_relations() {
            out.push_str(&format!("  \"{u}\" -> \"{v}\";\n"));
        }
        out.push_str("}\n");
        out
    }

    /// Serializable summary used by the command-line surface.
    pub fn summary(&self) -> PosetSummary {
        PosetSummary {
            n: self.n,
            cover_relations: self.cover_relations(),
            incomparable_pairs: self.incomparable_pairs(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PosetSummary {
    pub n: usize,
    pub cover_relations: Vec<(u32, u32)>,
    pub incomparable_pairs: Vec<(u32, u32)>,
}

/// The `m` such that exactly `m` permutations share the window path of `p`
/// in the order-k overlap graph: the linear extension count of the induced
/// poset.
pub fn m_index(p: &Permutation, k: usize, limits: &Limits) -> Result<BigUint> {
    poset_from_permutation(p, k)?.count_linear_extensions(limits)
}

/// For each occurring `m`, the number of n-permutations that are
/// m-k-determined. Computed by grouping S_n by window path, so the count at
/// `m` is always a multiple of `m`.
pub fn m_distribution(n: usize, k: usize, limits: &Limits) -> Result<BTreeMap<u64, u64>> {
    if n > limits.sweep_n {
        return Err(Error::ResourceLimit(format!(
            "m_distribution needs an S_{n} sweep; budget allows n <= {}",
            limits.sweep_n
        )));
    }
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!(
            "window length {k} must lie in 1..={n}"
        )));
    }
    let window_count = n - k + 1;
    let k_factorial: u128 = (1..=k as u128).product();
    // Bail out if the path key cannot be packed into 128 bits.
    let bits = (k_factorial as f64).log2() * window_count as f64;
    if bits >= 127.0 {
        return Err(Error::ResourceLimit(
            "window path keys would overflow the 128-bit packing".into(),
        ));
    }

    let factorial: usize = (1..=n).product();
    let mut keys: Vec<u128> = Vec::with_capacity(factorial);
    for p in all_permutations(n) {
        let path = window_path(&p, k).expect("k <= n holds");
        let mut key = 0u128;
        for node in path.nodes() {
            key = key * k_factorial + node.lex_rank() as u128;
        }
        keys.push(key);
    }
    keys.sort_unstable();

    let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
    let mut run_start = 0;
    for idx in 1..=keys.len() {
        if idx == keys.len() || keys[idx] != keys[run_start] {
            let class_size = (idx - run_start) as u64;
            *histogram.entry(class_size).or_insert(0) += class_size;
            run_start = idx;
        }
    }
    Ok(histogram)
}

/// Transitive closure of a strict relation given as successor bitmasks.
/// Returns false when the relation contains a cycle.
pub(crate) fn close_relation(above: &mut [u64]) -> bool {
    let n = above.len();
    debug_assert!(n <= MAX_LEN);
    for via in 0..n {
        let reach = above[via];
        for u in 0..n {
            if above[u] & (1 << via) != 0 {
                above[u] |= reach;
            }
        }
    }
    (0..n).all(|u| above[u] & (1 << u) == 0)
}

/// Downset DP: the number of linear extensions of the closed relation.
pub(crate) fn count_extensions(above: &[u64]) -> BigUint {
    let n = above.len();
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut memo: HashMap<u64, BigUint> = HashMap::new();
    memo.insert(0, BigUint::from(1u32));
    count_extensions_rec(above, full, &mut memo)
}

fn count_extensions_rec(above: &[u64], set: u64, memo: &mut HashMap<u64, BigUint>) -> BigUint {
    if let Some(hit) = memo.get(&set) {
        return hit.clone();
    }
    let mut total = BigUint::default();
    let mut rest = set;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        // v is maximal within `set` when nothing above it remains in the set.
        if above[v] & set == 0 {
            total += count_extensions_rec(above, set & !(1 << v), memo);
        }
    }
    memo.insert(set, total.clone());
    total
}

/// All linear extensions of the closed relation, as sequences listing the
/// elements in increasing assigned order; lexicographically sorted.
pub(crate) fn enumerate_extensions(above: &[u64]) -> Vec<Vec<usize>> {
    let n = above.len();
    let mut below = vec![0u64; n];
    for u in 0..n {
        let mut ups = above[u];
        while ups != 0 {
            let v = ups.trailing_zeros() as usize;
            ups &= ups - 1;
            below[v] |= 1 << u;
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    extend_rec(&below, n, 0, &mut current, &mut out);
    out
}

fn extend_rec(
    below: &[u64],
    n: usize,
    placed: u64,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == n {
        out.push(current.clone());
        return;
    }
    for v in 0..n {
        let bit = 1u64 << v;
        if placed & bit == 0 && below[v] & !placed == 0 {
            current.push(v);
            extend_rec(below, n, placed | bit, current, out);
            current.pop();
        }
    }
}
