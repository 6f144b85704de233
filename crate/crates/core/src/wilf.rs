//! Involvement counts, balance, and horizon-bounded relative Wilf-equivalence.
//!
//! True relative Wilf-equivalence quantifies over every size. Everything here
//! is computed through a finite horizon `N` and reports that horizon.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use serde::Serialize;

use crate::class::FiniteClass;
use crate::error::{Error, Result};
use crate::perm::Perm;

/// `counts[pi]` is the number of size-`n` members involving `pi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    pub k: usize,
    pub n: usize,
    pub counts: BTreeMap<Perm, u64>,
    pub balanced: bool,
}

/// Blocks of size-`k` members sharing the same count vector over sizes
/// `k..=horizon`. Blocks can only split as the horizon grows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WilfPartition {
    pub k: usize,
    pub horizon: usize,
    pub blocks: Vec<Vec<Perm>>,
    /// Count vector shared by each block, indexed by `n - k`.
    pub count_vectors: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WilfSequence {
    pub horizon: usize,
    /// `terms[k - 1]` is the number of blocks among the size-`k` members.
    pub terms: Vec<usize>,
}

impl WilfSequence {
    pub fn all_ones(&self) -> bool {
        self.terms.iter().all(|&w| w == 1)
    }
}

/// Memoised involvement counts for one class.
///
/// The table for size `n` is filled once, on first use, by listing the
/// patterns of every size-`n` member; concurrent first uses are idempotent.
pub struct WilfMetrics<'a> {
    class: &'a FiniteClass,
    // tables[n][k][i] = |C_n ∩ Inv(C_k[i])|
    tables: Vec<OnceLock<Vec<Vec<u64>>>>,
}

impl<'a> WilfMetrics<'a> {
    pub fn new(class: &'a FiniteClass) -> Self {
        WilfMetrics {
            class,
            tables: (0..=class.max_size()).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn class(&self) -> &FiniteClass {
        self.class
    }

    fn table(&self, n: usize) -> &Vec<Vec<u64>> {
        self.tables[n].get_or_init(|| {
            let c = self.class;
            let mut counts: Vec<Vec<u64>> = (0..=n).map(|k| vec![0; c.level(k).len()]).collect();
            for sigma in c.level(n) {
                for (k, pats) in sigma.patterns_down_to(1).iter().enumerate().skip(1) {
                    for p in pats {
                        let idx = c
                            .level(k)
                            .binary_search(p)
                            .expect("classes are downward closed");
                        counts[k][idx] += 1;
                    }
                }
            }
            counts
        })
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.class.max_size() {
            return Err(Error::Domain(format!(
                "size {n} outside the class horizon 1..={}",
                self.class.max_size()
            )));
        }
        Ok(())
    }

    /// `|{sigma in C_n : pi <= sigma}|`.
    pub fn inv_count(&self, pi: &Perm, n: usize) -> Result<u64> {
        self.check_n(n)?;
        let k = pi.len();
        let idx = self
            .class
            .level(k)
            .binary_search(pi)
            .map_err(|_| Error::Domain(format!("{pi} is not a member of the class")))?;
        if k > n {
            return Ok(0);
        }
        Ok(self.table(n)[k][idx])
    }

    pub fn balance_report(&self, k: usize, n: usize) -> Result<BalanceReport> {
        if k == 0 || k > n {
            return Err(Error::Domain(format!("need 1 <= k <= n, got k={k}, n={n}")));
        }
        self.check_n(n)?;
        let row = &self.table(n)[k];
        let counts: BTreeMap<Perm, u64> = self
            .class
            .level(k)
            .iter()
            .copied()
            .zip(row.iter().copied())
            .collect();
        let balanced = row.windows(2).all(|w| w[0] == w[1]);
        Ok(BalanceReport {
            k,
            n,
            counts,
            balanced,
        })
    }

    pub fn wilf_partition(&self, k: usize, horizon: usize) -> Result<WilfPartition> {
        if k == 0 || k > horizon {
            return Err(Error::Domain(format!(
                "need 1 <= k <= horizon, got k={k}, horizon={horizon}"
            )));
        }
        self.check_n(horizon)?;
        let members = self.class.level(k);
        let mut groups: BTreeMap<Vec<u64>, Vec<Perm>> = BTreeMap::new();
        for (i, pi) in members.iter().enumerate() {
            let vector: Vec<u64> = (k..=horizon).map(|n| self.table(n)[k][i]).collect();
            groups.entry(vector).or_default().push(*pi);
        }
        // Blocks listed by their least member; members are already sorted.
        let mut blocks: Vec<(Vec<Perm>, Vec<u64>)> =
            groups.into_iter().map(|(v, b)| (b, v)).collect();
        blocks.sort();
        let (blocks, count_vectors) = blocks.into_iter().unzip();
        Ok(WilfPartition {
            k,
            horizon,
            blocks,
            count_vectors,
        })
    }

    pub fn wilf_sequence(&self, horizon: usize) -> Result<WilfSequence> {
        self.check_n(horizon)?;
        let terms = (1..=horizon)
            .map(|k| self.wilf_partition(k, horizon).map(|p| p.blocks.len()))
            .collect::<Result<_>>()?;
        Ok(WilfSequence { horizon, terms })
    }

    /// `(k, n)`-balanced for every `1 <= k < n <= horizon`.
    ///
    /// Cross-checked against the Wilf-sequence: every nonempty level must form
    /// a single block.
    pub fn is_uniquely_wilf(&self, horizon: usize) -> Result<bool> {
        self.check_n(horizon)?;
        let mut balanced = true;
        'outer: for n in 2..=horizon {
            for k in 1..n {
                if !self.balance_report(k, n)?.balanced {
                    balanced = false;
                    break 'outer;
                }
            }
        }
        let seq = self.wilf_sequence(horizon)?;
        let single_blocks = seq.terms.iter().all(|&w| w <= 1);
        assert_eq!(
            balanced, single_blocks,
            "balance and Wilf-sequence disagree at horizon {horizon}"
        );
        Ok(balanced)
    }
}

pub fn inv_count(class: &FiniteClass, pi: &Perm, n: usize) -> Result<u64> {
    WilfMetrics::new(class).inv_count(pi, n)
}

pub fn balance_report(class: &FiniteClass, k: usize, n: usize) -> Result<BalanceReport> {
    WilfMetrics::new(class).balance_report(k, n)
}

pub fn wilf_partition(class: &FiniteClass, k: usize, horizon: usize) -> Result<WilfPartition> {
    WilfMetrics::new(class).wilf_partition(k, horizon)
}

pub fn wilf_sequence(class: &FiniteClass, horizon: usize) -> Result<WilfSequence> {
    WilfMetrics::new(class).wilf_sequence(horizon)
}

pub fn is_uniquely_wilf(class: &FiniteClass, horizon: usize) -> Result<bool> {
    WilfMetrics::new(class).is_uniquely_wilf(horizon)
}

/// Involvement counts by direct containment scans, for cross-checking.
pub fn inv_counts_by_scan(class: &FiniteClass, k: usize, n: usize) -> HashMap<Perm, u64> {
    class
        .level(k)
        .iter()
        .map(|pi| {
            let c = class.level(n).iter().filter(|s| s.contains(pi)).count() as u64;
            (*pi, c)
        })
        .collect()
}
