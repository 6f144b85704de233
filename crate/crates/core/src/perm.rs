//! Permutations in one-line notation and the classical containment order.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported permutation size.
pub const MAX_SIZE: usize = 16;

/// A permutation of `1..=n`, stored inline.
///
/// Ordering is by size first, then lexicographically on the value sequence.
/// For sizes up to 9 this coincides with the ordering of the digit strings.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    len: u8,
    vals: [u8; MAX_SIZE],
}

impl Perm {
    /// Builds a permutation from its one-line values, checking that they are
    /// exactly `1..=n`.
    pub fn new(values: &[u8]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        if values.len() > MAX_SIZE {
            return Err(Error::Parse(format!(
                "permutation of size {} exceeds the supported maximum {MAX_SIZE}",
                values.len()
            )));
        }
        let n = values.len();
        let mut seen = [false; MAX_SIZE + 1];
        for &v in values {
            let v = v as usize;
            if v == 0 || v > n {
                return Err(Error::Parse(format!(
                    "value {v} out of range for a permutation of size {n}"
                )));
            }
            if seen[v] {
                return Err(Error::Parse(format!("repeated value {v}")));
            }
            seen[v] = true;
        }
        Ok(Self::from_values_unchecked(values))
    }

    pub(crate) fn from_values_unchecked(values: &[u8]) -> Self {
        let mut vals = [0u8; MAX_SIZE];
        vals[..values.len()].copy_from_slice(values);
        Perm {
            len: values.len() as u8,
            vals,
        }
    }

    pub fn identity(n: usize) -> Self {
        let vals: Vec<u8> = (1..=n as u8).collect();
        Self::from_values_unchecked(&vals)
    }

    /// The decreasing permutation `n (n-1) ... 1`.
    pub fn decreasing(n: usize) -> Self {
        let vals: Vec<u8> = (1..=n as u8).rev().collect();
        Self::from_values_unchecked(&vals)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn values(&self) -> &[u8] {
        &self.vals[..self.len()]
    }

    pub fn is_increasing(&self) -> bool {
        self.values().windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_decreasing(&self) -> bool {
        self.values().windows(2).all(|w| w[0] > w[1])
    }

    pub fn is_monotone(&self) -> bool {
        self.is_increasing() || self.is_decreasing()
    }

    /// Positions indexed by value: `inverse()[v-1]` is the 1-based position of `v`.
    pub fn inverse(&self) -> Self {
        let mut out = [0u8; MAX_SIZE];
        for (i, &v) in self.values().iter().enumerate() {
            out[v as usize - 1] = i as u8 + 1;
        }
        Self::from_values_unchecked(&out[..self.len()])
    }

    pub fn reverse(&self) -> Self {
        let mut vals = self.vals;
        vals[..self.len()].reverse();
        Perm { len: self.len, vals }
    }

    pub fn complement(&self) -> Self {
        let n = self.len + 1;
        let mut vals = self.vals;
        for v in &mut vals[..self.len()] {
            *v = n - *v;
        }
        Perm { len: self.len, vals }
    }

    /// Classical pattern containment: does `self` hold a subsequence
    /// order-isomorphic to `needle`?
    pub fn contains(&self, needle: &Perm) -> bool {
        let (n, m) = (self.len(), needle.len());
        if m > n {
            return false;
        }
        if m == 0 {
            return true;
        }
        // For each needle index j, the earlier needle indices holding the
        // nearest smaller and nearest larger values bound the value that the
        // j-th matched haystack entry may take.
        let pat = needle.values();
        let mut below = [usize::MAX; MAX_SIZE];
        let mut above = [usize::MAX; MAX_SIZE];
        for j in 0..m {
            for i in 0..j {
                if pat[i] < pat[j] && (below[j] == usize::MAX || pat[i] > pat[below[j]]) {
                    below[j] = i;
                }
                if pat[i] > pat[j] && (above[j] == usize::MAX || pat[i] < pat[above[j]]) {
                    above[j] = i;
                }
            }
        }
        let hay = self.values();
        let mut chosen = [0u8; MAX_SIZE];
        embed(hay, m, &below, &above, &mut chosen, 0, 0)
    }

    /// All permutations of size `n + 1` covering `self`, sorted.
    pub fn one_point_extensions(&self) -> BTreeSet<Perm> {
        let n = self.len();
        let mut out = BTreeSet::new();
        let mut buf = [0u8; MAX_SIZE];
        if n + 1 > MAX_SIZE {
            return out;
        }
        for new_val in 1..=(n as u8 + 1) {
            for pos in 0..=n {
                let mut k = 0;
                for (i, &v) in self.values().iter().enumerate() {
                    if i == pos {
                        buf[k] = new_val;
                        k += 1;
                    }
                    buf[k] = if v >= new_val { v + 1 } else { v };
                    k += 1;
                }
                if pos == n {
                    buf[k] = new_val;
                }
                out.insert(Perm::from_values_unchecked(&buf[..n + 1]));
            }
        }
        out
    }

    /// Distinct patterns of size `n - 1` obtained by deleting one point.
    pub fn one_point_deletions(&self) -> Result<BTreeSet<Perm>> {
        if self.len() < 2 {
            return Err(Error::Domain(format!(
                "cannot delete a point from {self}: size must be at least 2"
            )));
        }
        Ok(self.deletions_iter().collect())
    }

    /// Deletions with possible repeats; callers that need a set dedupe.
    pub(crate) fn deletions_iter(&self) -> impl Iterator<Item = Perm> + '_ {
        let n = self.len();
        (0..n).map(move |skip| {
            let removed = self.vals[skip];
            let mut buf = [0u8; MAX_SIZE];
            let mut k = 0;
            for (i, &v) in self.values().iter().enumerate() {
                if i != skip {
                    buf[k] = if v > removed { v - 1 } else { v };
                    k += 1;
                }
            }
            Perm::from_values_unchecked(&buf[..n - 1])
        })
    }

    /// Every pattern of `self` with size at least `min_size`, grouped by size.
    /// Entry `k` of the result holds the distinct size-`k` patterns.
    pub fn patterns_down_to(&self, min_size: usize) -> Vec<Vec<Perm>> {
        let n = self.len();
        let mut by_size = vec![Vec::new(); n + 1];
        by_size[n].push(*self);
        let mut seen: HashSet<Perm> = HashSet::new();
        for k in (min_size.max(1)..n).rev() {
            seen.clear();
            let mut next = Vec::new();
            for p in &by_size[k + 1] {
                for d in p.deletions_iter() {
                    if seen.insert(d) {
                        next.push(d);
                    }
                }
            }
            next.sort_unstable();
            by_size[k] = next;
        }
        by_size
    }

    /// Every permutation of size `n`, in increasing order.
    pub fn all_of_size(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut vals: Vec<u8> = (1..=n as u8).collect();
        loop {
            out.push(Perm::from_values_unchecked(&vals));
            if !next_permutation(&mut vals) {
                break;
            }
        }
        out
    }
}

fn embed(
    hay: &[u8],
    m: usize,
    below: &[usize; MAX_SIZE],
    above: &[usize; MAX_SIZE],
    chosen: &mut [u8; MAX_SIZE],
    j: usize,
    start: usize,
) -> bool {
    if j == m {
        return true;
    }
    let lo = if below[j] == usize::MAX { 0 } else { chosen[below[j]] };
    let hi = if above[j] == usize::MAX {
        u8::MAX
    } else {
        chosen[above[j]]
    };
    let last = hay.len() - (m - j);
    for p in start..=last {
        let v = hay[p];
        if v > lo && v < hi {
            chosen[j] = v;
            if embed(hay, m, below, above, chosen, j + 1, p + 1) {
                return true;
            }
        }
    }
    false
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in self.values() {
                write!(f, "{v}")?;
            }
        } else {
            for (i, v) in self.values().iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({self})")
    }
}

impl FromStr for Perm {
    type Err = Error;

    /// Accepts a digit string (`"2431"`) or a comma-separated list
    /// (`"2,4,3,1"`, required once the size exceeds 9).
    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        let values: Vec<u8> = if text.contains(',') {
            text.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u8>()
                        .map_err(|_| Error::Parse(format!("bad entry {t:?} in {text:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::Parse(format!("bad character {c:?} in {text:?}")))
                })
                .collect::<Result<_>>()?
        };
        Perm::new(&values)
    }
}

pub fn parse_permutation(text: &str) -> Result<Perm> {
    text.parse()
}

/// Parses a comma-separated list of digit-string permutations, e.g. `"213,312"`.
pub fn parse_perm_list(text: &str) -> Result<Vec<Perm>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
