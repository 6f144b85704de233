//! Finite permutation classes stored level by level.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Perm, MAX_SIZE};

/// A downward-closed set of permutations of size at most `max_size`.
///
/// `level(k)` is sorted. Levels above the horizon are never populated.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteClass {
    max_size: usize,
    // levels[k] holds the members of size k; levels[0] is always empty.
    levels: Vec<Vec<Perm>>,
}

impl FiniteClass {
    /// Builds a class from explicit levels, checking downward closure.
    pub fn from_levels(max_size: usize, levels: BTreeMap<usize, Vec<Perm>>) -> Result<Self> {
        let class = Self::from_levels_unchecked(max_size, levels)?;
        if !class.is_downward_closed() {
            return Err(Error::Structure(
                "the given levels are not downward closed".into(),
            ));
        }
        Ok(class)
    }

    /// Like [`FiniteClass::from_levels`] but only checks sizes and horizon.
    pub fn from_levels_unchecked(
        max_size: usize,
        levels: BTreeMap<usize, Vec<Perm>>,
    ) -> Result<Self> {
        if max_size > MAX_SIZE {
            return Err(Error::Domain(format!(
                "max_size {max_size} exceeds supported maximum {MAX_SIZE}"
            )));
        }
        let mut out = vec![Vec::new(); max_size + 1];
        for (k, mut perms) in levels {
            if k == 0 || k > max_size {
                if perms.is_empty() {
                    continue;
                }
                return Err(Error::Structure(format!(
                    "level {k} lies outside 1..={max_size}"
                )));
            }
            if let Some(bad) = perms.iter().find(|p| p.len() != k) {
                return Err(Error::Structure(format!("{bad} listed at level {k}")));
            }
            perms.sort_unstable();
            perms.dedup();
            out[k] = perms;
        }
        Ok(FiniteClass {
            max_size,
            levels: out,
        })
    }

    /// All permutations of size at most `n`.
    pub fn all_permutations(n: usize) -> Self {
        let mut levels = vec![Vec::new()];
        levels.extend((1..=n).map(Perm::all_of_size));
        FiniteClass {
            max_size: n,
            levels,
        }
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    /// Members of size `k`; empty beyond the horizon.
    pub fn level(&self, k: usize) -> &[Perm] {
        self.levels.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.level(p.len()).binary_search(p).is_ok()
    }

    pub fn level_counts(&self) -> Vec<usize> {
        (1..=self.max_size).map(|k| self.level(k).len()).collect()
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Perm> {
        self.levels.iter().flatten()
    }

    pub fn is_downward_closed(&self) -> bool {
        (2..=self.max_size).all(|k| {
            self.level(k).iter().all(|p| {
                p.deletions_iter()
                    .all(|d| self.level(k - 1).binary_search(&d).is_ok())
            })
        })
    }

    /// The same class truncated (or padded with empty levels) to `max_size`.
    pub fn with_max_size(&self, max_size: usize) -> Self {
        let mut levels = self.levels.clone();
        levels.resize(max_size + 1, Vec::new());
        FiniteClass { max_size, levels }
    }

    /// `self` with a new top level appended. The caller guarantees the
    /// result is downward closed.
    pub(crate) fn push_level_unchecked(&self, mut top: Vec<Perm>) -> Self {
        top.sort_unstable();
        let mut levels = self.levels.clone();
        levels.push(top);
        FiniteClass {
            max_size: self.max_size + 1,
            levels,
        }
    }

    /// Permutations of size `max_size + 1` all of whose one-point deletions
    /// are members: the next level of the upward closure.
    pub fn next_level_candidates(&self) -> Vec<Perm> {
        closure_candidates(self.level(self.max_size), &[])
    }

    pub fn to_file(&self) -> ClassFile {
        ClassFile {
            max_size: self.max_size,
            levels: (1..=self.max_size)
                .map(|k| (k, self.level(k).to_vec()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("class files always serialise")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ClassFile = serde_json::from_str(text)?;
        file.into_class()
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }
}

/// The class file interchange format:
/// `{"max_size": n, "levels": {"1": ["1"], "2": ["12", "21"], ...}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassFile {
    pub max_size: usize,
    pub levels: BTreeMap<usize, Vec<Perm>>,
}

impl ClassFile {
    pub fn into_class(self) -> Result<FiniteClass> {
        for (k, perms) in &self.levels {
            if let Some(w) = perms.windows(2).find(|w| w[0] >= w[1]) {
                return Err(Error::Format(format!(
                    "level {k} is not strictly sorted at {} then {}",
                    w[0], w[1]
                )));
            }
        }
        FiniteClass::from_levels(self.max_size, self.levels).map_err(|e| match e {
            Error::Structure(msg) => Error::Format(msg),
            other => other,
        })
    }
}

// Size-(m+1) one-point extensions of `level` (size m) whose deletions all lie
// in `level` and which are not listed in the sorted slice `forbidden`.
fn closure_candidates(level: &[Perm], forbidden: &[Perm]) -> Vec<Perm> {
    let mut cands: BTreeSet<Perm> = BTreeSet::new();
    for p in level {
        cands.extend(p.one_point_extensions());
    }
    cands
        .into_iter()
        .filter(|s| {
            forbidden.binary_search(s).is_err() && s.deletions_iter().all(|d| level.binary_search(&d).is_ok())
        })
        .collect()
}

/// Levels `1..=max_size` of `Av(basis)`.
///
/// Each level is grown from the previous one: a one-point extension is kept
/// when all of its deletions are members and it is not itself a basis
/// element. Any smaller basis element it contained would already sit inside
/// one of its deletions.
pub fn enumerate_av(basis: &[Perm], max_size: usize) -> Result<FiniteClass> {
    if max_size == 0 {
        return Err(Error::Domain("max_size must be at least 1".into()));
    }
    if max_size > MAX_SIZE {
        return Err(Error::Domain(format!(
            "max_size {max_size} exceeds supported maximum {MAX_SIZE}"
        )));
    }
    let mut basis = basis.to_vec();
    basis.sort_unstable();
    let one = Perm::identity(1);
    let mut levels = vec![Vec::new(), Vec::new()];
    if !basis.contains(&one) {
        levels[1].push(one);
    }
    for m in 1..max_size {
        let next = closure_candidates(&levels[m], &basis);
        levels.push(next);
    }
    Ok(FiniteClass { max_size, levels })
}

/// Minimal non-members of size at most `max_size`.
///
/// Satisfies `enumerate_av(basis_of(f), f.max_size()) == f`.
pub fn basis_of(class: &FiniteClass) -> Vec<Perm> {
    let mut basis = Vec::new();
    if class.max_size == 0 {
        return basis;
    }
    if class.level(1).is_empty() {
        basis.push(Perm::identity(1));
        return basis;
    }
    for k in 2..=class.max_size {
        let below = class.level(k - 1);
        let here = class.level(k);
        basis.extend(
            closure_candidates(below, &[])
                .into_iter()
                .filter(|s| here.binary_search(s).is_err()),
        );
    }
    basis
}

/// Truncation at size `max_size` of the largest class agreeing with `class`
/// up to its horizon, i.e. `Av(S_{<=n} \ class)`.
pub fn upward_closure(class: &FiniteClass, max_size: usize) -> Result<FiniteClass> {
    if !class.is_downward_closed() {
        return Err(Error::Structure("class is not downward closed".into()));
    }
    if max_size < class.max_size {
        return Err(Error::Domain(format!(
            "upward closure to {max_size} below the class horizon {}",
            class.max_size
        )));
    }
    enumerate_av(&basis_of(class), max_size)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FinitenessBound {
    /// No member of a class with these size-`k` levels is larger than this.
    Bounded(usize),
    /// A monotone permutation of size `k` is present.
    Unbounded,
}

/// If neither monotone of size `k` is a member, members have size at most
/// `(k-1)^2` (Erdős–Szekeres).
pub fn finiteness_bound(class: &FiniteClass, k: usize) -> Result<FinitenessBound> {
    if k < 2 {
        return Err(Error::Domain(format!("k must be at least 2, got {k}")));
    }
    if k > class.max_size {
        return Err(Error::Domain(format!(
            "k = {k} lies above the class horizon {}",
            class.max_size
        )));
    }
    if class.contains(&Perm::identity(k)) || class.contains(&Perm::decreasing(k)) {
        Ok(FinitenessBound::Unbounded)
    } else {
        Ok(FinitenessBound::Bounded((k - 1) * (k - 1)))
    }
}
