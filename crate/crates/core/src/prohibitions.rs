//! The finite language of irreducible prohibited patterns whose avoidance
//! characterizes unique k-determinability, violation witnesses, the
//! constructive right-extension argument, and crucial-permutation search.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::determinacy::is_uniquely_determined;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::path_scheme::{enumerate_hamiltonian_paths, phi_inverse, PathScheme};
use crate::perm::{all_permutations, Permutation};

/// The irreducible prohibited patterns for a fixed `k`, sorted by length and
/// then lexicographically. Every member has length between `k + 1` and
/// `2k - 1`, carries a pair of consecutive values at its extreme positions,
/// and has uniquely k-determined longest proper prefix and suffix patterns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProhibitionSet {
    k: usize,
    patterns: Vec<Permutation>,
}

/// Serializable view: `{"k": .., "patterns": [..], "by_length": {len: count}}`.
#[derive(Clone, Debug, Serialize)]
pub struct ProhibitionSetSummary {
    pub k: usize,
    pub patterns: Vec<String>,
    pub by_length: BTreeMap<usize, usize>,
}

impl ProhibitionSet {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.patterns
            .binary_search_by(|member| {
                member
                    .len()
                    .cmp(&p.len())
                    .then_with(|| member.cmp(p))
            })
            .is_ok()
    }

    pub fn by_length(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for p in &self.patterns {
            *counts.entry(p.len()).or_insert(0) += 1;
        }
        counts
    }

    pub fn max_length(&self) -> usize {
        self.patterns.iter().map(|p| p.len()).max().unwrap_or(0)
    }

    /// Whether the theoretical maximum length `2k - 1` is attained.
    pub fn attains_length_bound(&self) -> bool {
        self.max_length() == 2 * self.k - 1
    }

    pub fn summary(&self) -> ProhibitionSetSummary {
        ProhibitionSetSummary {
            k: self.k,
            patterns: self.patterns.iter().map(|p| p.to_string()).collect(),
            by_length: self.by_length(),
        }
    }
}

/// Generates the irreducible prohibitions for `k` by filtration: enumerate
/// the permutations of each length `k+1 ..= 2k-1` and keep those that are
/// not uniquely k-determined while both longest proper factor patterns are.
/// Filtration is exhaustive and makes no structural assumption on the set.
pub fn generate_prohibitions(k: usize, limits: &Limits) -> Result<ProhibitionSet> {
    if k < 2 {
        return Err(Error::InvalidInput(
            "prohibition sets are defined for k >= 2".into(),
        ));
    }
    if k > limits.prohibition_k {
        return Err(Error::ResourceLimit(format!(
            "generating prohibitions for k={k} enumerates S_{}; budget allows k <= {}",
            2 * k - 1,
            limits.prohibition_k
        )));
    }
    let mut patterns = Vec::new();
    for len in k + 1..=2 * k - 1 {
        for p in all_permutations(len) {
            if is_uniquely_determined(&p, k) {
                continue;
            }
            if is_irreducible(&p, k)? {
                patterns.push(p);
            }
        }
    }
    // Lengths ascend by construction; all_permutations is lexicographic.
    Ok(ProhibitionSet { k, patterns })
}

/// A prohibited pattern is irreducible when the patterns of its longest
/// proper prefix and suffix are both uniquely k-determined. Errors when `p`
/// is not prohibited at all.
pub fn is_irreducible(p: &Permutation, k: usize) -> Result<bool> {
    if is_uniquely_determined(p, k) {
        return Err(Error::InvalidInput(format!(
            "{p} is uniquely {k}-determined, not a prohibited pattern"
        )));
    }
    let n = p.len();
    let prefix = p.factor_pattern(1, n - 1)?;
    let suffix = p.factor_pattern(2, n)?;
    Ok(is_uniquely_determined(&prefix, k) && is_uniquely_determined(&suffix, k))
}

/// A witness that a permutation is not uniquely k-determined: the smallest
/// value `x` whose successor `x + 1` sits at distance `>= k`, with the
/// (1-based) positions of `x` and `x + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ViolationWitness {
    pub x: u32,
    pub positions: (usize, usize),
}

/// `None` exactly when `p` is uniquely k-determined; otherwise the witness
/// for the smallest violating value.
pub fn contains_prohibition(p: &Permutation, k: usize) -> Option<ViolationWitness> {
    let n = p.len();
    if n <= 1 {
        return None;
    }
    let mut pos = vec![0usize; n + 1];
    for (i, &v) in p.values().iter().enumerate() {
        pos[v as usize] = i + 1;
    }
    for x in 1..n {
        if pos[x].abs_diff(pos[x + 1]) >= k {
            return Some(ViolationWitness {
                x: x as u32,
                positions: (pos[x], pos[x + 1]),
            });
        }
    }
    None
}

/// The constructive right extension: a value `v` such that appending `v`
/// (with the usual shift of existing values `>= v`) to a uniquely
/// k-determined permutation yields a uniquely k-determined permutation one
/// longer.
///
/// Selection follows the case analysis of the non-existence argument for
/// crucial permutations: a last element that is the minimum extends by the
/// new minimum, a maximum by the new maximum; otherwise one of the values
/// adjacent to the last element must sit within the `k - 1` rightmost
/// positions, and we extend next to it, preferring the smaller one when both
/// qualify.
pub fn extension_witness(p: &Permutation, k: usize) -> Result<u32> {
    if k < 2 {
        return Err(Error::InvalidInput("extension requires k >= 2".into()));
    }
    if !is_uniquely_determined(p, k) {
        return Err(Error::InvalidInput(format!(
            "{p} is not uniquely {k}-determined"
        )));
    }
    let n = p.len();
    if n == 0 {
        return Ok(1);
    }
    let x = p.values()[n - 1];
    if x == 1 {
        return Ok(1);
    }
    if x as usize == n {
        return Ok(n as u32 + 1);
    }
    // Positions must satisfy pos(y) >= n - k + 2 so that the appended element
    // stays within distance k - 1 of y.
    let cutoff = (n + 2).saturating_sub(k);
    let qualifies = |value: u32| {
        p.position_of(value)
            .map(|pos| pos >= cutoff)
            .unwrap_or(false)
    };
    if qualifies(x - 1) {
        Ok(x)
    } else if qualifies(x + 1) {
        Ok(x + 1)
    } else {
        // Unreachable for uniquely k-determined input: both neighbors sit in
        // the k rightmost positions and cannot share the one slot at the
        // cutoff boundary.
        Err(Error::Inconsistency(format!(
            "no qualifying neighbor while extending {p} for k={k}"
        )))
    }
}

/// Searches the uniquely k-determined n-permutations for one that no right
/// extension keeps uniquely k-determined. No such permutation exists — see
/// [`extension_witness`] — so `None` is the expected result; the search
/// iterates the Hamiltonian paths of the band scheme instead of filtering
/// S_n, so it reaches the budget ceiling comfortably.
pub fn find_crucial(k: usize, n: usize, limits: &Limits) -> Result<Option<Permutation>> {
    if k < 2 {
        return Err(Error::InvalidInput("crucial search requires k >= 2".into()));
    }
    if n > limits.sweep_n {
        return Err(Error::ResourceLimit(format!(
            "crucial search at n={n}; budget allows n <= {}",
            limits.sweep_n
        )));
    }
    if n == 0 {
        return Ok(None);
    }
    let band = PathScheme::band(k, n)?;
    for path in enumerate_hamiltonian_paths(&band) {
        let p = phi_inverse(&path, k)?;
        let extendable = (1..=n as u32 + 1).any(|v| {
            let extended = p.extend_right(v).expect("v is within range");
            is_uniquely_determined(&extended, k)
        });
        if !extendable {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn prohibitions_for_k2() {
        let set = generate_prohibitions(2, &limits()).unwrap();
        let expected: Vec<Permutation> =
            ["132", "213", "231", "312"].iter().map(|s| p(s)).collect();
        assert_eq!(set.patterns(), expected.as_slice());
        assert_eq!(set.max_length(), 3);
        assert!(set.attains_length_bound());
    }

    #[test]
    fn prohibitions_for_k3() {
        let set = generate_prohibitions(3, &limits()).unwrap();
        let by_length = set.by_length();
        assert_eq!(by_length.get(&4).copied(), Some(12));
        assert!(set.contains(&p("1342")));
        assert!(set.max_length() <= 5);
        // An irreducible pattern of the maximum length exists.
        assert!(set.contains(&p("14352")));
        assert!(set.attains_length_bound());
        // Complement closure.
        for member in set.patterns() {
            assert!(set.contains(&member.complement()));
        }
    }

    #[test]
    fn extreme_entries_are_consecutive_values() {
        for k in 2..=4 {
            let set = generate_prohibitions(k, &limits()).unwrap();
            for member in set.patterns() {
                let first = member.values()[0];
                let last = member.values()[member.len() - 1];
                assert_eq!(
                    first.abs_diff(last),
                    1,
                    "{member} should start and end with consecutive values"
                );
            }
        }
    }

    #[test]
    fn generation_budget_and_low_k_rejected() {
        assert!(generate_prohibitions(1, &limits()).is_err());
        let tight = Limits {
            prohibition_k: 3,
            ..Limits::default()
        };
        assert!(generate_prohibitions(4, &tight).is_err());
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&p("1342"), 3).unwrap());
        assert!(!is_irreducible(&p("13542"), 3).unwrap());
        assert!(is_irreducible(&p("14352"), 3).unwrap());
        assert!(is_irreducible(&p("123"), 3).is_err());
    }

    #[test]
    fn every_short_prohibition_is_irreducible() {
        for k in 2..=4usize {
            for q in all_permutations(k + 1) {
                if !is_uniquely_determined(&q, k) {
                    assert!(is_irreducible(&q, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn witness_reports_smallest_violation() {
        // 13542 violates the distance bound for both x = 1 (positions 1 and
        // 5) and x = 2; the smallest violating value wins.
        let witness = contains_prohibition(&p("13542"), 3).unwrap();
        assert_eq!(witness.x, 1);
        assert_eq!(witness.positions, (1, 5));
        assert!(contains_prohibition(&p("123456"), 2).is_none());
    }

    #[test]
    fn witness_agrees_with_the_criterion() {
        for n in 0..=7 {
            for q in all_permutations(n) {
                for k in 2..=4 {
                    assert_eq!(
                        contains_prohibition(&q, k).is_none(),
                        is_uniquely_determined(&q, k)
                    );
                }
            }
        }
    }

    #[test]
    fn extension_examples() {
        assert_eq!(extension_witness(&p("321"), 3).unwrap(), 1);
        assert_eq!(extension_witness(&p("123"), 3).unwrap(), 4);
        assert_eq!(extension_witness(&Permutation::identity(0), 3).unwrap(), 1);
        assert!(extension_witness(&p("13542"), 3).is_err());
        assert!(extension_witness(&p("12"), 1).is_err());
    }

    #[test]
    fn extension_validates_exhaustively_small() {
        for k in 2..=4usize {
            for n in 0..=6 {
                for q in all_permutations(n) {
                    if !is_uniquely_determined(&q, k) {
                        continue;
                    }
                    let v = extension_witness(&q, k).unwrap();
                    let extended = q.extend_right(v).unwrap();
                    assert!(
                        is_uniquely_determined(&extended, k),
                        "extending {q} by {v} broke determinability for k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn no_crucial_permutations_small() {
        for k in 2..=4 {
            for n in 1..=7 {
                assert_eq!(find_crucial(k, n, &limits()).unwrap(), None, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn crucial_budget_enforced() {
        let tight = Limits {
            sweep_n: 4,
            ..Limits::default()
        };
        assert!(find_crucial(3, 6, &tight).is_err());
    }
}
