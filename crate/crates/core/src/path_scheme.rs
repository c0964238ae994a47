//! Path-scheme graphs P(n, M) on `{1..n}` with edges between nodes whose
//! difference lies in M, directed Hamiltonian path counting and enumeration,
//! and the bijection between those paths and uniquely k-determined
//! permutations.

use std::collections::{BTreeSet, HashMap};

use num::{BigUint, One};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::perm::{Permutation, MAX_LEN};

/// Undirected graph on `1..=n` with an edge `(x, y)` iff `|x - y| ∈ M`.
/// The band scheme with `M = {1, .., k-1}` hosts the Hamiltonian-path
/// criterion: its directed Hamiltonian paths are exactly the inverses of the
/// uniquely k-determined n-permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathScheme {
    n: usize,
    diffs: BTreeSet<usize>,
}

/// Builds P(n, M), validating `M ⊆ {1, .., n-1}`.
pub fn build_path_scheme(
    n: usize,
    diffs: impl IntoIterator<Item = usize>,
) -> Result<PathScheme> {
    if n == 0 {
        return Err(Error::InvalidInput("a path-scheme needs n >= 1".into()));
    }
    if n > MAX_LEN {
        return Err(Error::InvalidInput(format!(
            "path-scheme order {n} exceeds the supported maximum {MAX_LEN}"
        )));
    }
    let diffs: BTreeSet<usize> = diffs.into_iter().collect();
    if let Some(&d) = diffs.iter().find(|&&d| d == 0 || d >= n) {
        return Err(Error::InvalidInput(format!(
            "difference {d} is outside 1..={}",
            n.saturating_sub(1)
        )));
    }
    Ok(PathScheme { n, diffs })
}

impl PathScheme {
    /// The band scheme G_{k,n} = P(n, {1, .., k-1}), with the difference set
    /// clamped to the valid range so that `k >= n` yields the complete graph.
    pub fn band(k: usize, n: usize) -> Result<PathScheme> {
        if k == 0 {
            return Err(Error::InvalidInput("band parameter k must be >= 1".into()));
        }
        build_path_scheme(n, 1..k.min(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn differences(&self) -> &BTreeSet<usize> {
        &self.diffs
    }

    pub fn adjacent(&self, x: usize, y: usize) -> bool {
        x != y && self.diffs.contains(&x.abs_diff(y))
    }

    /// Sorted edge list as 1-based pairs `(x, y)` with `x < y`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 1..=self.n {
            for y in x + 1..=self.n {
                if self.diffs.contains(&(y - x)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// 0-based neighbor masks.
    fn adjacency_masks(&self) -> Vec<u64> {
        let mut masks = vec![0u64; self.n];
        for x in 0..self.n {
            for &d in &self.diffs {
                if x >= d {
                    masks[x] |= 1 << (x - d);
                }
                if x + d < self.n {
                    masks[x] |= 1 << (x + d);
                }
            }
        }
        masks
    }
}

/// Number of directed Hamiltonian paths, by DP over (visited subset, last
/// node). Every undirected path is counted once per orientation.
pub fn count_hamiltonian_paths(g: &PathScheme, limits: &Limits) -> Result<BigUint> {
    let n = g.n();
    if n > limits.subset_dp_n {
        return Err(Error::ResourceLimit(format!(
            "Hamiltonian DP over 2^{n} subsets; budget allows n <= {}",
            limits.subset_dp_n
        )));
    }
    let masks = g.adjacency_masks();
    if n <= 20 {
        // Counts are below n! <= 20!, which fits u64; a flat table is fastest.
        Ok(BigUint::from(count_flat_u64(&masks, n)))
    } else {
        Ok(count_layered_u128(&masks, n))
    }
}

fn count_flat_u64(masks: &[u64], n: usize) -> u64 {
    let full: usize = (1 << n) - 1;
    let mut dp = vec![0u64; (full + 1) * n];
    for v in 0..n {
        dp[(1 << v) * n + v] = 1;
    }
    for mask in 1..=full {
        for last in 0..n {
            let count = dp[mask * n + last];
            if count == 0 || mask & (1 << last) == 0 {
                continue;
            }
            let mut next = masks[last] & !(mask as u64);
            while next != 0 {
                let v = next.trailing_zeros() as usize;
                next &= next - 1;
                dp[(mask | (1 << v)) * n + v] += count;
            }
        }
    }
    (0..n).map(|last| dp[full * n + last]).sum()
}

/// Layered map-based DP for n > 20: masks are grouped by popcount so memory
/// follows the number of reachable states instead of the full 2^n table, and
/// partial counts use 128-bit integers (24! still fits).
fn count_layered_u128(masks: &[u64], n: usize) -> BigUint {
    let mut layer: HashMap<u64, Vec<u128>> = HashMap::new();
    for v in 0..n {
        layer.entry(1 << v).or_insert_with(|| vec![0; n])[v] = 1;
    }
    for _ in 1..n {
        let mut next: HashMap<u64, Vec<u128>> = HashMap::new();
        for (mask, row) in &layer {
            for (last, &count) in row.iter().enumerate() {
                if count == 0 {
                    continue;
                }
                let mut free = masks[last] & !mask;
                while free != 0 {
                    let v = free.trailing_zeros() as usize;
                    free &= free - 1;
                    next.entry(mask | (1 << v)).or_insert_with(|| vec![0; n])[v] += count;
                }
            }
        }
        layer = next;
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let total: u128 = layer
        .get(&full)
        .map(|row| row.iter().sum())
        .unwrap_or(0);
    BigUint::from(total)
}

/// Lazily yields every directed Hamiltonian path exactly once, as 1-based
/// node sequences in lexicographic order.
pub fn enumerate_hamiltonian_paths(g: &PathScheme) -> HamiltonianPaths<'_> {
    HamiltonianPaths {
        graph: g,
        masks: g.adjacency_masks(),
        next_start: 0,
        path: Vec::new(),
        cursors: Vec::new(),
        visited: 0,
    }
}

pub struct HamiltonianPaths<'g> {
    graph: &'g PathScheme,
    masks: Vec<u64>,
    next_start: usize,
    /// 0-based nodes of the partial path.
    path: Vec<usize>,
    /// cursors[d] = next 0-based candidate to try after path[d].
    cursors: Vec<usize>,
    visited: u64,
}

impl Iterator for HamiltonianPaths<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let n = self.graph.n();
        loop {
            if self.path.len() == n {
                let out = self.path.iter().map(|&v| v as u32 + 1).collect();
                let last = self.path.pop().unwrap();
                self.visited &= !(1 << last);
                self.cursors.pop();
                return Some(out);
            }
            if self.path.is_empty() {
                if self.next_start >= n {
                    return None;
                }
                self.path.push(self.next_start);
                self.visited = 1 << self.next_start;
                self.cursors.push(0);
                self.next_start += 1;
            } else {
                let depth = self.path.len() - 1;
                let last = self.path[depth];
                let from = self.cursors[depth];
                let next = if from >= 64 {
                    0
                } else {
                    self.masks[last] & !self.visited & (u64::MAX << from)
                };
                if next != 0 {
                    let v = next.trailing_zeros() as usize;
                    self.cursors[depth] = v + 1;
                    self.path.push(v);
                    self.visited |= 1 << v;
                    self.cursors.push(0);
                } else {
                    let popped = self.path.pop().unwrap();
                    self.visited &= !(1 << popped);
                    self.cursors.pop();
                }
            }
        }
    }
}

/// Reads a directed Hamiltonian path of the band scheme G_{k,n} as the
/// inverse of a uniquely k-determined permutation. The node sequence must be
/// a permutation of `1..=n` whose consecutive steps stay within `k - 1`.
pub fn phi_inverse(path: &[u32], k: usize) -> Result<Permutation> {
    if k == 0 {
        return Err(Error::InvalidInput("band parameter k must be >= 1".into()));
    }
    let as_perm = Permutation::new(path.to_vec()).map_err(|_| {
        Error::InvalidInput("the node sequence is not a permutation of 1..=n".into())
    })?;
    if path.len() >= 2 && k == 1 {
        return Err(Error::InvalidInput(
            "the band scheme with k = 1 has no edges".into(),
        ));
    }
    for pair in path.windows(2) {
        let step = pair[0].abs_diff(pair[1]) as usize;
        if step == 0 || step > k - 1 {
            return Err(Error::InvalidInput(format!(
                "step {} -> {} is not an edge of the band scheme",
                pair[0], pair[1]
            )));
        }
    }
    Ok(as_perm.inverse())
}

/// The forward map: a uniquely k-determined permutation spells the directed
/// Hamiltonian path of G_{k,n} given by its inverse, read as a node sequence.
pub fn phi(p: &Permutation, k: usize) -> Result<Vec<u32>> {
    if !crate::determinacy::is_uniquely_determined(p, k) {
        return Err(Error::InvalidInput(format!(
            "{p} is not uniquely {k}-determined"
        )));
    }
    Ok(p.inverse().values().to_vec())
}

/// Explicit lower and upper bounds for the number of uniquely k-determined
/// n-permutations: `2((k-1)!)^{⌊n/k⌋}` and `2(2(k-1))^n`. Valid for `k >= 2`
/// and `n >= 2k - 1`; for `k = 2` the lower bound is attained, not exceeded.
pub fn bounds(k: usize, n: usize) -> Result<(BigUint, BigUint)> {
    if k < 2 || n < 2 * k - 1 {
        return Err(Error::InvalidInput(format!(
            "bounds need k >= 2 and n >= 2k-1, got k={k}, n={n}"
        )));
    }
    let mut fact = BigUint::one();
    for i in 1..k as u64 {
        fact *= i;
    }
    let lower = BigUint::from(2u32) * fact.pow((n / k) as u32);
    let upper = BigUint::from(2u32) * BigUint::from(2 * (k as u64 - 1)).pow(n as u32);
    Ok((lower, upper))
}
