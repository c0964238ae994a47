//! Window-path extraction, the two criteria for unique k-determinability,
//! the index of reconstructibility, and the key bijection onto permutations
//! with two predetermined non-adjacent elements.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::perm::{all_permutations, reduce_slice, Permutation};

/// The sequence of reduced length-k windows of a permutation, read left to
/// right. Consecutive nodes satisfy the overlap rule: the length-(k-1)
/// suffix pattern of one window equals the prefix pattern of the next.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WindowPath {
    k: usize,
    nodes: Vec<Permutation>,
}

impl WindowPath {
    /// Validates window lengths and the overlap invariant.
    pub fn new(k: usize, nodes: Vec<Permutation>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("window length k must be >= 1".into()));
        }
        if nodes.is_empty() {
            return Err(Error::InvalidInput(
                "a window path needs at least one window".into(),
            ));
        }
        for node in &nodes {
            if node.len() != k {
                return Err(Error::InvalidInput(format!(
                    "window {node} does not have length {k}"
                )));
            }
        }
        for pair in nodes.windows(2) {
            if !overlap_compatible(&pair[0], &pair[1]) {
                return Err(Error::InvalidInput(format!(
                    "windows {} and {} violate the overlap rule",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(WindowPath { k, nodes })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn nodes(&self) -> &[Permutation] {
        &self.nodes
    }

    /// Length of any permutation realizing this path.
    pub fn permutation_length(&self) -> usize {
        self.k + self.nodes.len() - 1
    }
}

/// Suffix pattern of `a` equals prefix pattern of `b` (both of length k-1).
pub(crate) fn overlap_compatible(a: &Permutation, b: &Permutation) -> bool {
    let k = a.len();
    reduce_slice(&a.values()[1..]) == reduce_slice(&b.values()[..k - 1])
}

/// Scans `p` with a window of length `k` and returns the `n - k + 1`
/// reduced windows in order. Requires `1 <= k <= n`.
pub fn window_path(p: &Permutation, k: usize) -> Result<WindowPath> {
    let n = p.len();
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!(
            "window length {k} must lie in 1..={n}"
        )));
    }
    let nodes = p
        .values()
        .windows(k)
        .map(reduce_slice)
        .collect::<Vec<_>>();
    Ok(WindowPath { k, nodes })
}

/// Distance criterion: `p` is uniquely k-determined iff every pair of
/// consecutive values `x, x+1` sits within distance `k - 1`. Vacuously true
/// for `n <= 1`; well-defined (and true) for `n < k`.
pub fn is_uniquely_determined(p: &Permutation, k: usize) -> bool {
    let n = p.len();
    if n <= 1 {
        return true;
    }
    let mut pos = vec![0usize; n + 1];
    for (i, &v) in p.values().iter().enumerate() {
        pos[v as usize] = i;
    }
    (1..n).all(|x| pos[x].abs_diff(pos[x + 1]) < k)
}

/// Inverse criterion: `p` is uniquely k-determined iff every pair of adjacent
/// entries of `p^{-1}` differs by at most `k - 1`. Agrees with
/// [`is_uniquely_determined`] on all inputs.
pub fn is_uniquely_determined_via_inverse(p: &Permutation, k: usize) -> bool {
    let inv = p.inverse();
    inv.values()
        .windows(2)
        .all(|w| w[0].abs_diff(w[1]) < k as u32)
}

/// Index of reconstructibility: the minimal `k` such that `p` is uniquely
/// k-determined. Equals `1 + max_x d(x, x+1)`, and 1 for `n <= 1`.
pub fn ir_index(p: &Permutation) -> usize {
    let n = p.len();
    if n <= 1 {
        return 1;
    }
    let mut pos = vec![0usize; n + 1];
    for (i, &v) in p.values().iter().enumerate() {
        pos[v as usize] = i;
    }
    1 + (1..n).map(|x| pos[x].abs_diff(pos[x + 1])).max().unwrap()
}

/// Histogram of [`ir_index`] over all n-permutations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrHistogram {
    pub n: usize,
    /// Number of n-permutations attaining each index value.
    pub counts: BTreeMap<usize, u64>,
}

/// Exhaustive distribution of the index of reconstructibility over S_n.
pub fn ir_distribution(n: usize, limits: &Limits) -> Result<IrHistogram> {
    if n > limits.sweep_n {
        return Err(Error::ResourceLimit(format!(
            "ir_distribution needs an S_{n} sweep; budget allows n <= {}",
            limits.sweep_n
        )));
    }
    let mut counts = BTreeMap::new();
    for p in all_permutations(n) {
        *counts.entry(ir_index(&p)).or_insert(0u64) += 1;
    }
    Ok(IrHistogram { n, counts })
}

/// Maps a permutation with two chosen values `a`, `b` at non-adjacent
/// positions to a uniquely (n-1)-determined n-permutation: the output starts
/// with the position of `a`, ends with the position of `b`, and the middle is
/// the input with `a`, `b` removed and the spent position values relabelled.
///
/// The relabelling pairs the surviving members of `(pos(a), pos(b))` with the
/// needed members of `(a, b)` in order, which reduces to the plain
/// "replace pos(a) by a, pos(b) by b" rule whenever positions and values do
/// not collide. [`key_bijection_inverse`] restores the input exactly.
pub fn key_bijection(p: &Permutation, a: u32, b: u32) -> Result<Permutation> {
    let n = p.len();
    if n < 2 {
        return Err(Error::InvalidInput(
            "key bijection needs a permutation of length >= 2".into(),
        ));
    }
    if a == b {
        return Err(Error::InvalidInput("the two marked values must differ".into()));
    }
    let i = p.position_of(a)? as u32;
    let j = p.position_of(b)? as u32;
    if i.abs_diff(j) < 2 {
        return Err(Error::InvalidInput(format!(
            "values {a} and {b} occupy adjacent positions {i} and {j}"
        )));
    }

    // Middle word: remove a and b, then relabel the position values that the
    // removal freed up.
    let mut middle: Vec<u32> = p
        .values()
        .iter()
        .copied()
        .filter(|&v| v != a && v != b)
        .collect();
    let sources: Vec<u32> = [i, j].into_iter().filter(|&v| v != a && v != b).collect();
    let targets: Vec<u32> = [a, b].into_iter().filter(|&v| v != i && v != j).collect();
    debug_assert_eq!(sources.len(), targets.len());
    for v in &mut middle {
        if let Some(t) = sources.iter().position(|&s| s == *v) {
            *v = targets[t];
        }
    }

    let mut values = Vec::with_capacity(n);
    values.push(i);
    values.extend(middle);
    values.push(j);
    Permutation::new(values)
}

/// Inverse of [`key_bijection`] for the same marked values `a`, `b`.
pub fn key_bijection_inverse(q: &Permutation, a: u32, b: u32) -> Result<Permutation> {
    let n = q.len();
    if n < 2 {
        return Err(Error::InvalidInput(
            "key bijection needs a permutation of length >= 2".into(),
        ));
    }
    if a == b || a == 0 || b == 0 || a as usize > n || b as usize > n {
        return Err(Error::InvalidInput(
            "the two marked values must be distinct members of 1..=n".into(),
        ));
    }
    let i = q.values()[0];
    let j = q.values()[n - 1];
    if i.abs_diff(j) < 2 {
        return Err(Error::InvalidInput(format!(
            "{q} is not uniquely (n-1)-determined: its endpoints {i} and {j} are adjacent values"
        )));
    }

    let mut middle: Vec<u32> = q.values()[1..n - 1].to_vec();
    // Undo the forward relabelling: targets go back to sources.
    let sources: Vec<u32> = [i, j].into_iter().filter(|&v| v != a && v != b).collect();
    let targets: Vec<u32> = [a, b].into_iter().filter(|&v| v != i && v != j).collect();
    for v in &mut middle {
        if let Some(t) = targets.iter().position(|&s| s == *v) {
            *v = sources[t];
        }
    }

    let mut values = vec![0u32; n];
    values[i as usize - 1] = a;
    values[j as usize - 1] = b;
    let mut middle_iter = middle.into_iter();
    for slot in values.iter_mut() {
        if *slot == 0 {
            *slot = middle_iter.next().ok_or_else(|| {
                Error::InvalidInput("middle word too short".into())
            })?;
        }
    }
    Permutation::new(values)
}
