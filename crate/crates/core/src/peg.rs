//! Peg permutations and their grid classes.
//!
//! A peg permutation decorates each point of a permutation `rho` with `+`,
//! `-` or `.`. Its grid class holds every inflation of `rho` in which `+`
//! points become increasing runs, `-` points decreasing runs and `.` points at
//! most one point, any of them possibly empty. The filled grid class asks for
//! runs of length at least two and exactly one point for `.`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Perm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Peg {
    Plus,
    Minus,
    Dot,
}

impl Peg {
    fn symbol(self) -> char {
        match self {
            Peg::Plus => '+',
            Peg::Minus => '-',
            Peg::Dot => '.',
        }
    }

    fn size_range(self, filled: bool, n: usize) -> (usize, usize) {
        match (self, filled) {
            (Peg::Dot, false) => (0, 1),
            (Peg::Dot, true) => (1, 1),
            (_, false) => (0, n),
            (_, true) => (2, n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PegPermutation {
    underlying: Perm,
    pegs: Vec<Peg>,
}

impl PegPermutation {
    pub fn new(underlying: Perm, pegs: Vec<Peg>) -> Result<Self> {
        if pegs.len() != underlying.len() {
            return Err(Error::Domain(format!(
                "{} decorations for a permutation of size {}",
                pegs.len(),
                underlying.len()
            )));
        }
        Ok(PegPermutation { underlying, pegs })
    }

    pub fn underlying(&self) -> &Perm {
        &self.underlying
    }

    pub fn pegs(&self) -> &[Peg] {
        &self.pegs
    }

    pub fn len(&self) -> usize {
        self.pegs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pegs.is_empty()
    }

    /// Every decoration of every permutation of size `k`.
    pub fn all_of_size(k: usize) -> Vec<PegPermutation> {
        let mut out = Vec::new();
        for rho in Perm::all_of_size(k) {
            for code in 0..3usize.pow(k as u32) {
                let pegs = (0..k)
                    .map(|i| [Peg::Plus, Peg::Minus, Peg::Dot][code / 3usize.pow(i as u32) % 3])
                    .collect();
                out.push(PegPermutation { underlying: rho, pegs });
            }
        }
        out
    }
}

impl fmt::Display for PegPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, p)) in self.underlying.values().iter().zip(&self.pegs).enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}{}", p.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PegPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_peg(s)
    }
}

impl Serialize for PegPermutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PegPermutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses whitespace-separated tokens such as `2- 3- 1.`; `•` is accepted
/// for `.`.
pub fn parse_peg(text: &str) -> Result<PegPermutation> {
    let mut values = Vec::new();
    let mut pegs = Vec::new();
    for token in text.split_whitespace() {
        let (digits, peg) = if let Some(d) = token.strip_suffix('+') {
            (d, Peg::Plus)
        } else if let Some(d) = token.strip_suffix('-') {
            (d, Peg::Minus)
        } else if let Some(d) = token.strip_suffix('.').or_else(|| token.strip_suffix('•')) {
            (d, Peg::Dot)
        } else {
            return Err(Error::Parse(format!("token {token:?} lacks a decoration")));
        };
        let v: u8 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad value in token {token:?}")))?;
        values.push(v);
        pegs.push(peg);
    }
    if values.is_empty() {
        return Err(Error::Parse("empty peg permutation".into()));
    }
    let underlying = Perm::new(&values).map_err(|e| Error::Parse(format!("{text:?}: {e}")))?;
    PegPermutation::new(underlying, pegs)
}

/// No adjacent pair at consecutive values decorated `1+ 2+`, `1. 2+`,
/// `1+ 2.`, `2- 1-`, `2. 1-` or `2- 1.`.
pub fn is_properly_pegged(peg: &PegPermutation) -> bool {
    let v = peg.underlying.values();
    (1..v.len()).all(|i| {
        let (a, b) = (v[i - 1], v[i]);
        let (p, q) = (peg.pegs[i - 1], peg.pegs[i]);
        if b == a + 1 {
            !matches!(
                (p, q),
                (Peg::Plus, Peg::Plus) | (Peg::Dot, Peg::Plus) | (Peg::Plus, Peg::Dot)
            )
        } else if a == b + 1 {
            !matches!(
                (p, q),
                (Peg::Minus, Peg::Minus) | (Peg::Dot, Peg::Minus) | (Peg::Minus, Peg::Dot)
            )
        } else {
            true
        }
    })
}

pub fn grid_contains(peg: &PegPermutation, sigma: &Perm) -> bool {
    member(peg, sigma, false)
}

pub fn grid_filled_contains(peg: &PegPermutation, sigma: &Perm) -> bool {
    member(peg, sigma, true)
}

// Cells take consecutive position segments of sigma, left to right. Each
// segment must be monotone in its cell's direction, and the segments' value
// ranges must tile 1..=n in the order given by rho.
fn member(peg: &PegPermutation, sigma: &Perm, filled: bool) -> bool {
    let mut sizes = vec![0; peg.len()];
    cut(peg, sigma, filled, 0, 0, &mut sizes)
}

fn cut(
    peg: &PegPermutation,
    sigma: &Perm,
    filled: bool,
    cell: usize,
    start: usize,
    sizes: &mut Vec<usize>,
) -> bool {
    let v = sigma.values();
    let n = v.len();
    if cell == peg.len() {
        return start == n && values_tile(peg, sigma, sizes);
    }
    let (lo, hi) = peg.pegs[cell].size_range(filled, n);
    for len in lo..=hi.min(n - start) {
        let seg = &v[start..start + len];
        let monotone = match peg.pegs[cell] {
            Peg::Plus => seg.windows(2).all(|w| w[0] < w[1]),
            Peg::Minus => seg.windows(2).all(|w| w[0] > w[1]),
            Peg::Dot => true,
        };
        if !monotone {
            // Longer segments stay non-monotone.
            break;
        }
        if !seg.is_empty() {
            let (min, max) = (seg.iter().min().unwrap(), seg.iter().max().unwrap());
            if (max - min) as usize + 1 != len {
                continue;
            }
        }
        sizes[cell] = len;
        if cut(peg, sigma, filled, cell + 1, start + len, sizes) {
            return true;
        }
    }
    sizes[cell] = 0;
    false
}

fn values_tile(peg: &PegPermutation, sigma: &Perm, sizes: &[usize]) -> bool {
    let v = sigma.values();
    let rho = peg.underlying.values();
    let mut starts = vec![0; sizes.len()];
    let mut acc = 0;
    for i in 0..sizes.len() {
        starts[i] = acc;
        acc += sizes[i];
    }
    // Cells in increasing rho value; their minima must climb in step.
    let mut by_value: Vec<usize> = (0..rho.len()).collect();
    by_value.sort_by_key(|&i| rho[i]);
    let mut next = 1;
    for i in by_value {
        if sizes[i] == 0 {
            continue;
        }
        let min = v[starts[i]..starts[i] + sizes[i]].iter().min().copied().unwrap();
        if min as usize != next {
            return false;
        }
        next += sizes[i];
    }
    true
}

/// All size-`n` members of the grid class, or of the filled grid class,
/// built directly by inflating `rho`.
pub fn grid_enumerate(peg: &PegPermutation, n: usize, filled: bool) -> Result<BTreeSet<Perm>> {
    if n == 0 || n > crate::perm::MAX_SIZE {
        return Err(Error::Domain(format!(
            "size {n} outside 1..={}",
            crate::perm::MAX_SIZE
        )));
    }
    let mut out = BTreeSet::new();
    let mut sizes = vec![0; peg.len()];
    compositions(peg, filled, 0, n, &mut sizes, &mut out);
    Ok(out)
}

fn compositions(
    peg: &PegPermutation,
    filled: bool,
    cell: usize,
    remaining: usize,
    sizes: &mut Vec<usize>,
    out: &mut BTreeSet<Perm>,
) {
    if cell == peg.len() {
        if remaining == 0 {
            out.insert(inflate(peg, sizes));
        }
        return;
    }
    let (lo, hi) = peg.pegs[cell].size_range(filled, remaining);
    for len in lo..=hi.min(remaining) {
        sizes[cell] = len;
        compositions(peg, filled, cell + 1, remaining - len, sizes, out);
    }
}

fn inflate(peg: &PegPermutation, sizes: &[usize]) -> Perm {
    let rho = peg.underlying.values();
    let mut base = vec![0u8; rho.len()];
    let mut by_value: Vec<usize> = (0..rho.len()).collect();
    by_value.sort_by_key(|&i| rho[i]);
    let mut acc = 0u8;
    for i in by_value {
        base[i] = acc;
        acc += sizes[i] as u8;
    }
    let mut vals = Vec::new();
    for (i, &s) in sizes.iter().enumerate() {
        let run = (1..=s as u8).map(|j| base[i] + j);
        match peg.pegs[i] {
            Peg::Minus => vals.extend(run.rev()),
            _ => vals.extend(run),
        }
    }
    Perm::new(&vals).expect("inflation yields a permutation")
}
