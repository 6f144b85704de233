//! The eight symmetries of the containment order generated by reverse,
//! complement and inverse.
//!
//! An element is named by the word of operations in the order they are
//! applied, always drawn from the normal form `i? r? c?`: inverse first, then
//! reverse, then complement. The identity is `e`. Under this convention
//! `i` followed by `r` equals `c` followed by `i`, which is what the
//! composition table below encodes.
//!
//! | then → | e   | r   | c   | rc  | i   | ir  | ic  | irc |
//! |--------|-----|-----|-----|-----|-----|-----|-----|-----|
//! | e      | e   | r   | c   | rc  | i   | ir  | ic  | irc |
//! | r      | r   | e   | rc  | c   | ic  | irc | i   | ir  |
//! | c      | c   | rc  | e   | r   | ir  | i   | irc | ic  |
//! | rc     | rc  | c   | r   | e   | irc | ic  | ir  | i   |
//! | i      | i   | ir  | ic  | irc | e   | r   | c   | rc  |
//! | ir     | ir  | i   | irc | ic  | c   | rc  | e   | r   |
//! | ic     | ic  | irc | i   | ir  | r   | e   | rc  | c   |
//! | irc    | irc | ic  | ir  | i   | rc  | c   | r   | e   |
//!
//! Row `g`, column `h` is "apply `g`, then `h`".

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Perm;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symmetry {
    inverse: bool,
    reverse: bool,
    complement: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry::new(false, false, false);
    pub const REVERSE: Symmetry = Symmetry::new(false, true, false);
    pub const COMPLEMENT: Symmetry = Symmetry::new(false, false, true);
    pub const INVERSE: Symmetry = Symmetry::new(true, false, false);

    /// All eight elements, in table order.
    pub const ALL: [Symmetry; 8] = [
        Symmetry::new(false, false, false),
        Symmetry::new(false, true, false),
        Symmetry::new(false, false, true),
        Symmetry::new(false, true, true),
        Symmetry::new(true, false, false),
        Symmetry::new(true, true, false),
        Symmetry::new(true, false, true),
        Symmetry::new(true, true, true),
    ];

    const fn new(inverse: bool, reverse: bool, complement: bool) -> Self {
        Symmetry {
            inverse,
            reverse,
            complement,
        }
    }

    pub fn label(self) -> &'static str {
        match (self.inverse, self.reverse, self.complement) {
            (false, false, false) => "e",
            (false, true, false) => "r",
            (false, false, true) => "c",
            (false, true, true) => "rc",
            (true, false, false) => "i",
            (true, true, false) => "ir",
            (true, false, true) => "ic",
            (true, true, true) => "irc",
        }
    }

    pub fn apply(self, p: &Perm) -> Perm {
        let mut out = *p;
        if self.inverse {
            out = out.inverse();
        }
        if self.reverse {
            out = out.reverse();
        }
        if self.complement {
            out = out.complement();
        }
        out
    }

    // Acts on a centred point (x, y) = (position, value).
    fn act(self, (mut x, mut y): (i32, i32)) -> (i32, i32) {
        if self.inverse {
            std::mem::swap(&mut x, &mut y);
        }
        if self.reverse {
            x = -x;
        }
        if self.complement {
            y = -y;
        }
        (x, y)
    }

    /// The element "apply `self`, then `next`".
    pub fn then(self, next: Symmetry) -> Symmetry {
        let (x, y) = next.act(self.act((1, 2)));
        Symmetry::new(x.abs() == 2, x < 0, y < 0)
    }

    pub fn group_inverse(self) -> Symmetry {
        Symmetry::ALL
            .into_iter()
            .find(|&h| self.then(h) == Symmetry::IDENTITY)
            .expect("every element of a finite group has an inverse")
    }

    pub fn apply_set<'a>(self, perms: impl IntoIterator<Item = &'a Perm>) -> Vec<Perm> {
        let mut out: Vec<Perm> = perms.into_iter().map(|p| self.apply(p)).collect();
        out.sort_unstable();
        out
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl fmt::Debug for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Symmetry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Symmetry::ALL
            .into_iter()
            .find(|g| g.label() == s)
            .ok_or_else(|| Error::Parse(format!("unknown symmetry label {s:?}")))
    }
}

impl Serialize for Symmetry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for Symmetry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Whether `group` is closed under composition and contains the identity.
pub fn is_subgroup(group: &BTreeSet<Symmetry>) -> bool {
    group.contains(&Symmetry::IDENTITY)
        && group
            .iter()
            .all(|&g| group.iter().all(|&h| group.contains(&g.then(h))))
}

/// Least image of `set` over `group`, comparing images as sorted lists.
///
/// Two sets have the same representative iff they lie in the same orbit.
pub fn canonical_orbit_representative(set: &[Perm], group: &[Symmetry]) -> Vec<Perm> {
    let mut best: Vec<Perm> = {
        let mut s = set.to_vec();
        s.sort_unstable();
        s
    };
    for g in group {
        let image = g.apply_set(set);
        if image < best {
            best = image;
        }
    }
    best
}

/// Number of distinct images of `set` under `group`.
pub fn orbit_size(set: &[Perm], group: &[Symmetry]) -> usize {
    group
        .iter()
        .map(|g| g.apply_set(set))
        .collect::<BTreeSet<_>>()
        .len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Perm {
        s.parse().unwrap()
    }

    #[test]
    fn labels_round_trip() {
        for g in Symmetry::ALL {
            assert_eq!(g.label().parse::<Symmetry>().unwrap(), g);
        }
        assert!("ri".parse::<Symmetry>().is_err());
    }

    #[test]
    fn composition_agrees_with_action() {
        let probes: Vec<Perm> = (1..=5).flat_map(Perm::all_of_size).collect();
        for g in Symmetry::ALL {
            for h in Symmetry::ALL {
                let gh = g.then(h);
                for q in &probes {
                    assert_eq!(gh.apply(q), h.apply(&g.apply(q)), "{g} then {h}");
                }
            }
        }
    }

    #[test]
    fn published_table_rows() {
        let label = |a: &str, b: &str| {
            a.parse::<Symmetry>()
                .unwrap()
                .then(b.parse().unwrap())
                .label()
        };
        assert_eq!(label("i", "r"), "ir");
        assert_eq!(label("r", "i"), "ic");
        assert_eq!(label("ir", "ir"), "rc");
        assert_eq!(label("irc", "i"), "rc");
        assert_eq!(label("ic", "ic"), "rc");
        assert_eq!(label("rc", "rc"), "e");
    }

    #[test]
    fn module_table_is_correct() {
        let rows: Vec<Vec<&str>> = include_str!("symmetry.rs")
            .lines()
            .take_while(|l| l.starts_with("//!"))
            .filter(|l| l.starts_with("//! | ") && !l.contains("then"))
            .map(|l| l[4..].split('|').map(str::trim).filter(|c| !c.is_empty()).collect())
            .collect();
        assert_eq!(rows.len(), 8);
        let header: Vec<Symmetry> = Symmetry::ALL.to_vec();
        for row in rows {
            let g: Symmetry = row[0].parse().unwrap();
            for (h, cell) in header.iter().zip(&row[1..]) {
                assert_eq!(g.then(*h).label(), *cell, "{} then {}", g.label(), h.label());
            }
        }
    }

    #[test]
    fn whole_group_is_a_group() {
        let all: BTreeSet<_> = Symmetry::ALL.into_iter().collect();
        assert!(is_subgroup(&all));
        for g in Symmetry::ALL {
            assert_eq!(g.then(g.group_inverse()), Symmetry::IDENTITY);
        }
    }

    #[test]
    fn orbit_representatives() {
        let all = Symmetry::ALL;
        let s = [p("12"), p("21")];
        assert_eq!(canonical_orbit_representative(&s, &all), s.to_vec());
        assert_eq!(
            canonical_orbit_representative(&[p("132")], &all),
            canonical_orbit_representative(&[p("213")], &all)
        );
        let t = [p("231"), p("12")];
        assert_eq!(
            canonical_orbit_representative(&t, &[Symmetry::IDENTITY]),
            vec![p("12"), p("231")]
        );
        assert_eq!(orbit_size(&[p("132")], &all), 4);
        assert_eq!(orbit_size(&[p("123"), p("321")], &all), 1);
    }
}
