#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use permwilf::class::FiniteClass;
use permwilf::perm::parse_perm_list;
use permwilf::Perm;

pub fn perms(s: &str) -> Vec<Perm> {
    parse_perm_list(s).unwrap()
}

/// All of `S_{<=2}` plus the given size-3 level.
pub fn with_level3(level3: &[Perm]) -> FiniteClass {
    let mut levels: BTreeMap<usize, Vec<Perm>> = BTreeMap::new();
    levels.insert(1, perms("1"));
    levels.insert(2, perms("12,21"));
    levels.insert(3, level3.to_vec());
    FiniteClass::from_levels(3, levels).unwrap()
}

/// Writes straight to stderr so the line shows even under output capture.
pub fn report(criterion: u32, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "criterion {criterion}: {verdict} ({detail})");
}

/// Every subset `X` of the candidates containing `required` such that every
/// size-`k` member of `class` lies in equally many elements of `X`, for all
/// `k <= class.max_size()`. Walks the subsets in Gray-code order with running
/// involvement counts.
pub fn balanced_subsets(class: &FiniteClass, candidates: &[Perm], required: &[Perm]) -> BTreeSet<Vec<Perm>> {
    let free: Vec<Perm> = candidates.iter().filter(|c| !required.contains(c)).copied().collect();
    assert!(free.len() <= 26);
    let patterns: Vec<Perm> = class.iter().filter(|p| p.len() >= 2).copied().collect();
    let level_of: Vec<usize> = patterns.iter().map(Perm::len).collect();
    let hits = |c: &Perm| -> Vec<usize> { (0..patterns.len()).filter(|&i| c.contains(&patterns[i])).collect() };
    let free_hits: Vec<Vec<usize>> = free.iter().map(hits).collect();

    let mut counts = vec![0i64; patterns.len()];
    for r in required {
        for i in hits(r) {
            counts[i] += 1;
        }
    }
    let first: Vec<usize> = level_of
        .iter()
        .map(|&l| level_of.iter().position(|&m| m == l).unwrap())
        .collect();
    let balanced = |counts: &[i64]| (0..counts.len()).all(|i| counts[i] == counts[first[i]]);

    let mut out = BTreeSet::new();
    let mut inside = vec![false; free.len()];
    let emit = |inside: &[bool], out: &mut BTreeSet<Vec<Perm>>| {
        let mut x: Vec<Perm> = required.to_vec();
        x.extend((0..free.len()).filter(|&i| inside[i]).map(|i| free[i]));
        x.sort();
        out.insert(x);
    };
    if balanced(&counts) {
        emit(&inside, &mut out);
    }
    for step in 1u64..1 << free.len() {
        let bit = step.trailing_zeros() as usize;
        inside[bit] = !inside[bit];
        let delta = if inside[bit] { 1 } else { -1 };
        for &i in &free_hits[bit] {
            counts[i] += delta;
        }
        if balanced(&counts) {
            emit(&inside, &mut out);
        }
    }
    out
}

/// Downward closure of `tops` (of any sizes), restricted to sizes `<= limit`.
pub fn downward_closure(tops: &BTreeSet<Perm>, limit: usize) -> BTreeSet<Perm> {
    let max = tops.iter().map(Perm::len).max().unwrap_or(0);
    let mut out = BTreeSet::new();
    let mut level: BTreeSet<Perm> = BTreeSet::new();
    for m in (1..=max).rev() {
        level.extend(tops.iter().filter(|p| p.len() == m).copied());
        if m <= limit {
            out.extend(level.iter().copied());
        }
        level = if m > 1 {
            level.iter().flat_map(|p| p.one_point_deletions().unwrap()).collect()
        } else {
            BTreeSet::new()
        };
    }
    out
}

/// Subsequence test by trying every index subset.
pub fn is_subsequence_brute(w: &[u8], u: &[u8]) -> bool {
    let n = w.len();
    (0u32..1 << n).any(|mask| {
        mask.count_ones() as usize == u.len()
            && (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| w[i]).eq(u.iter().copied())
    })
}
