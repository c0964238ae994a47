//! One-line permutations of `{1, .., n}` and the elementary pattern
//! operations every other module consumes.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Hard cap on permutation length. Subset dynamic programs and poset
/// relations index positions and values with 64-bit masks.
pub const MAX_LEN: usize = 64;

/// A permutation of `{1, .., n}` in one-line notation: the entry at
/// (1-based) position `i` is the value `π_i`.
///
/// The empty permutation (`n = 0`) is valid and is uniquely k-determined for
/// every `k`, which fixes the constant term of every counting series at 1.
///
/// ```
/// use ukd_core::Permutation;
/// let p: Permutation = "13542".parse().unwrap();
/// assert_eq!(p.inverse().to_string(), "15243");
/// ```
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    /// Builds a permutation, validating that `values` is a bijection on
    /// `{1, .., n}`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        if n > MAX_LEN {
            return Err(Error::InvalidInput(format!(
                "permutation length {n} exceeds the supported maximum {MAX_LEN}"
            )));
        }
        let mut seen = vec![false; n];
        for &v in &values {
            if v == 0 || v as usize > n {
                return Err(Error::InvalidInput(format!(
                    "value {v} is outside 1..={n}"
                )));
            }
            if seen[v as usize - 1] {
                return Err(Error::InvalidInput(format!("value {v} occurs twice")));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { values })
    }

    /// The identity permutation `12…n`.
    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n as u32).collect(),
        }
    }

    pub(crate) fn from_values_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// 1-based position of `value`.
    pub fn position_of(&self, value: u32) -> Result<usize> {
        self.values
            .iter()
            .position(|&v| v == value)
            .map(|i| i + 1)
            .ok_or_else(|| {
                Error::InvalidInput(format!("value {value} is not present"))
            })
    }

    /// The inverse permutation `q` with `q[π_i] = i`.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.values.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation { values: inv }
    }

    /// The complement, sending each entry `v` to `n - v + 1`.
    pub fn complement(&self) -> Self {
        let n = self.values.len() as u32;
        Permutation {
            values: self.values.iter().map(|&v| n - v + 1).collect(),
        }
    }

    /// Distance between the values `x` and `y`: the absolute difference of
    /// their positions. Symmetric in its arguments.
    pub fn distance(&self, x: u32, y: u32) -> Result<usize> {
        let px = self.position_of(x)?;
        let py = self.position_of(y)?;
        Ok(px.abs_diff(py))
    }

    /// The pattern of the contiguous factor `π_i … π_j` (1-based, inclusive).
    pub fn factor_pattern(&self, i: usize, j: usize) -> Result<Self> {
        if i < 1 || i > j || j > self.values.len() {
            return Err(Error::InvalidInput(format!(
                "factor range {i}..={j} is invalid for length {}",
                self.values.len()
            )));
        }
        Ok(reduce_slice(&self.values[i - 1..j]))
    }

    /// Appends a new rightmost element with value `v`, shifting every
    /// existing value `>= v` up by one. `v` must lie in `1..=n+1`.
    pub fn extend_right(&self, v: u32) -> Result<Self> {
        let n = self.values.len() as u32;
        if v == 0 || v > n + 1 {
            return Err(Error::InvalidInput(format!(
                "extension value {v} is outside 1..={}",
                n + 1
            )));
        }
        let mut values: Vec<u32> = self
            .values
            .iter()
            .map(|&u| if u >= v { u + 1 } else { u })
            .collect();
        values.push(v);
        Ok(Permutation { values })
    }

    /// True when the permutation is increasing or decreasing (or `n <= 1`).
    pub fn is_monotone(&self) -> bool {
        let v = &self.values;
        v.windows(2).all(|w| w[1] == w[0] + 1) || v.windows(2).all(|w| w[0] == w[1] + 1)
    }

    /// Lexicographic rank within S_n, in `0..n!`. Only supported for the
    /// lengths the walk-grouping machinery needs.
    pub(crate) fn lex_rank(&self) -> u64 {
        let n = self.values.len();
        debug_assert!(n <= 20);
        let mut rank = 0u64;
        let mut factorial = 1u64;
        for i in (0..n).rev() {
            let smaller_right = self.values[i + 1..]
                .iter()
                .filter(|&&v| v < self.values[i])
                .count() as u64;
            rank += smaller_right * factorial;
            factorial *= (n - i) as u64;
        }
        rank
    }
}

impl fmt::Display for Permutation {
    /// Compact digit string for `n <= 9`, comma-separated values otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.len() <= 9 {
            for v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts either a compact digit string (`"13542"`, only for `n <= 9`)
    /// or comma-separated values (`"1,3,5,4,2"`, any length).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Permutation::new(Vec::new());
        }
        let values: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|tok| {
                    tok.trim().parse::<u32>().map_err(|_| {
                        Error::InvalidInput(format!("cannot parse '{tok}' as a value"))
                    })
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10).filter(|&d| d >= 1).ok_or_else(|| {
                        Error::InvalidInput(format!(
                            "'{c}' is not a digit 1-9; use comma-separated form for n > 9"
                        ))
                    })
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }
}

/// A word with pairwise distinct positive entries, not necessarily `1..m`:
/// the raw content of a window before reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternWord {
    values: Vec<u32>,
}

impl PatternWord {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        if values.len() > MAX_LEN {
            return Err(Error::InvalidInput(format!(
                "word length {} exceeds the supported maximum {MAX_LEN}",
                values.len()
            )));
        }
        let mut sorted = values.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(
                "pattern word entries must be pairwise distinct".into(),
            ));
        }
        if values.contains(&0) {
            return Err(Error::InvalidInput(
                "pattern word entries must be positive".into(),
            ));
        }
        Ok(PatternWord { values })
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The unique permutation order-isomorphic to this word.
    pub fn reduce(&self) -> Permutation {
        reduce_slice(&self.values)
    }
}

/// Reduces a word with distinct entries to the permutation with the same
/// relative order: the entry at position `i` becomes the rank of the original
/// entry within the word.
pub fn reduce_pattern(word: &PatternWord) -> Permutation {
    word.reduce()
}

/// Rank-by-sorting reduction for internal slices; entries must be distinct.
pub(crate) fn reduce_slice(values: &[u32]) -> Permutation {
    let mut index: Vec<usize> = (0..values.len()).collect();
    index.sort_unstable_by_key(|&i| values[i]);
    let mut out = vec![0u32; values.len()];
    for (rank, &i) in index.iter().enumerate() {
        out[i] = rank as u32 + 1;
    }
    Permutation { values: out }
}

/// Iterator over all of S_n in lexicographic order.
pub fn all_permutations(n: usize) -> Permutations {
    Permutations {
        next: Some((1..=n as u32).collect()),
    }
}

pub struct Permutations {
    next: Option<Vec<u32>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        self.next = next_permutation(&mut succ).then_some(succ);
        Some(Permutation { values: current })
    }
}

/// In-place lexicographic successor; returns false at the final permutation.
fn next_permutation(values: &mut [u32]) -> bool {
    let n = values.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| values[i] < values[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| values[j] > values[i]).unwrap();
    values.swap(i, j);
    values[i + 1..].reverse();
    true
}
