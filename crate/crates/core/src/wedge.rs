//! Words over `{L, R}` for the wedge class `Av(213, 312)`.
//!
//! A wedge permutation rises to its maximum and then falls. Reading values
//! from the bottom up, each value below the maximum is either left (`L`) or
//! right (`R`) of it; the maximum itself emits nothing. This is a bijection
//! between the size-`n` members and the words of length `n - 1`, under which
//! containment becomes the subsequence order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Perm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    L,
    R,
}

impl Letter {
    pub fn other(self) -> Letter {
        match self {
            Letter::L => Letter::R,
            Letter::R => Letter::L,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LRWord(pub Vec<Letter>);

impl LRWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// All words of length `m`, in lexicographic order with `L < R`.
    pub fn all_of_length(m: usize) -> impl Iterator<Item = LRWord> {
        (0u64..1 << m).map(move |mask| {
            LRWord(
                (0..m)
                    .map(|i| if mask >> (m - 1 - i) & 1 == 1 { Letter::R } else { Letter::L })
                    .collect(),
            )
        })
    }
}

impl fmt::Display for LRWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::L => "L",
                Letter::R => "R",
            })?;
        }
        Ok(())
    }
}

impl FromStr for LRWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                'L' => Ok(Letter::L),
                'R' => Ok(Letter::R),
                _ => Err(Error::Parse(format!("bad letter {c:?} in word {s:?}"))),
            })
            .collect::<Result<_>>()
            .map(LRWord)
    }
}

impl Serialize for LRWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LRWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

pub fn is_wedge(sigma: &Perm) -> bool {
    let v = sigma.values();
    let top = v.iter().position(|&x| x as usize == v.len()).unwrap_or(0);
    v[..=top].windows(2).all(|w| w[0] < w[1]) && v[top..].windows(2).all(|w| w[0] > w[1])
}

pub fn encode_wedge(sigma: &Perm) -> Result<LRWord> {
    if !is_wedge(sigma) {
        return Err(Error::Domain(format!("{sigma} is not in Av(213, 312)")));
    }
    let v = sigma.values();
    let n = v.len();
    let top = v.iter().position(|&x| x as usize == n).unwrap();
    let mut pos = vec![0; n + 1];
    for (i, &x) in v.iter().enumerate() {
        pos[x as usize] = i;
    }
    Ok(LRWord(
        (1..n)
            .map(|x| if pos[x] < top { Letter::L } else { Letter::R })
            .collect(),
    ))
}

pub fn decode_word(w: &LRWord) -> Perm {
    let n = w.len() + 1;
    let mut vals: Vec<u8> = (1..n).filter(|&x| w.0[x - 1] == Letter::L).map(|x| x as u8).collect();
    vals.push(n as u8);
    vals.extend((1..n).rev().filter(|&x| w.0[x - 1] == Letter::R).map(|x| x as u8));
    Perm::new(&vals).expect("decoded values form a permutation")
}

/// Whether `u` is a subsequence of `w`.
pub fn word_contains(w: &LRWord, u: &LRWord) -> bool {
    minimal_prefix(w, u).is_some()
}

/// Length of the shortest prefix of `w` having `u` as a subsequence.
pub fn minimal_prefix(w: &LRWord, u: &LRWord) -> Option<usize> {
    let mut matched = 0;
    if u.is_empty() {
        return Some(0);
    }
    for (i, &l) in w.0.iter().enumerate() {
        if l == u.0[matched] {
            matched += 1;
            if matched == u.len() {
                return Some(i + 1);
            }
        }
    }
    None
}

/// Maps words containing `alpha` to words of the same length containing
/// `beta`.
///
/// Write `w = M s` with `M` the minimal prefix containing `alpha`. Peeling
/// the last letter `a` of `alpha` gives `M = A a' ^ k a`, where `a'` is the
/// other letter and `A` is minimal for the rest of `alpha`. That goes to
/// `Phi(A) b' ^ k b` for the last letter `b` of `beta`, and `s` is kept.
pub fn wedge_bijection(alpha: &LRWord, beta: &LRWord, w: &LRWord) -> Result<LRWord> {
    if alpha.len() != beta.len() {
        return Err(Error::Domain(format!(
            "patterns {alpha} and {beta} have different lengths"
        )));
    }
    let m = minimal_prefix(w, alpha)
        .ok_or_else(|| Error::Domain(format!("{w} does not contain {alpha}")))?;
    let mut out = map_minimal(&alpha.0, &beta.0, &w.0[..m]);
    out.extend_from_slice(&w.0[m..]);
    Ok(LRWord(out))
}

fn map_minimal(alpha: &[Letter], beta: &[Letter], minimal: &[Letter]) -> Vec<Letter> {
    let Some((&a, alpha0)) = alpha.split_last() else {
        return Vec::new();
    };
    let (&b, beta0) = beta.split_last().unwrap();
    let (&last, rest) = minimal.split_last().unwrap();
    debug_assert_eq!(last, a);
    // rest = A a'^k with A minimal for alpha0.
    let head_len = minimal_prefix(&LRWord(rest.to_vec()), &LRWord(alpha0.to_vec())).unwrap();
    let head = &rest[..head_len];
    let k = rest.len() - head_len;
    let mut out = map_minimal(alpha0, beta0, head);
    let (filler, end) = match (a, b) {
        (Letter::L, Letter::L) => (Letter::R, Letter::L),
        (Letter::L, Letter::R) => (Letter::L, Letter::R),
        (Letter::R, Letter::L) => (Letter::R, Letter::L),
        (Letter::R, Letter::R) => (Letter::L, Letter::R),
    };
    out.extend(std::iter::repeat(filler).take(k));
    out.push(end);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::enumerate_av;
    use crate::perm::parse_perm_list;
    use proptest::prelude::*;

    fn w(s: &str) -> LRWord {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Perm {
        s.parse().unwrap()
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode_wedge(&p("132")).unwrap(), w("LR"));
        assert_eq!(encode_wedge(&p("231")).unwrap(), w("RL"));
        assert_eq!(encode_wedge(&Perm::identity(6)).unwrap(), w("LLLLL"));
        assert_eq!(encode_wedge(&p("1")).unwrap(), w(""));
        assert!(matches!(encode_wedge(&p("213")), Err(Error::Domain(_))));
        assert!(encode_wedge(&p("312")).is_err());
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode_word(&w("RL")), p("231"));
        assert_eq!(decode_word(&w("")), p("1"));
        assert_eq!(decode_word(&w("RR")), p("321"));
    }

    #[test]
    fn word_parsing() {
        assert!("LRX".parse::<LRWord>().is_err());
        assert_eq!(w("LRRL").to_string(), "LRRL");
    }

    #[test]
    fn prefix_examples() {
        assert!(word_contains(&w("LR"), &w("R")));
        assert!(word_contains(&w("LR"), &w("")));
        assert_eq!(minimal_prefix(&w("RRL"), &w("L")), Some(3));
        assert_eq!(minimal_prefix(&w("LRL"), &w("RL")), Some(3));
        assert_eq!(minimal_prefix(&w("LLL"), &w("R")), None);
    }

    #[test]
    fn bijection_examples() {
        assert_eq!(wedge_bijection(&w("L"), &w("R"), &w("RRL")).unwrap(), w("LLR"));
        assert_eq!(wedge_bijection(&w("L"), &w("R"), &w("RLRL")).unwrap(), w("LRRL"));
        assert!(wedge_bijection(&w("L"), &w("RR"), &w("L")).is_err());
        assert!(wedge_bijection(&w("R"), &w("L"), &w("LL")).is_err());
    }

    #[test]
    fn bijection_fixes_words_when_patterns_agree() {
        for len in 0..=4 {
            for alpha in LRWord::all_of_length(len) {
                for m in len..=10 {
                    for word in LRWord::all_of_length(m).filter(|x| word_contains(x, &alpha)) {
                        assert_eq!(wedge_bijection(&alpha, &alpha, &word).unwrap(), word);
                    }
                }
            }
        }
    }

    #[test]
    fn round_trips() {
        let wedges = enumerate_av(&parse_perm_list("213,312").unwrap(), 8).unwrap();
        for sigma in wedges.iter() {
            assert_eq!(decode_word(&encode_wedge(sigma).unwrap()), *sigma);
        }
        for m in 0..=7 {
            assert_eq!(wedges.level(m + 1).len(), 1 << m);
            for word in LRWord::all_of_length(m) {
                assert_eq!(encode_wedge(&decode_word(&word)).unwrap(), word);
            }
        }
    }

    proptest! {
        #[test]
        fn minimal_prefix_is_minimal(word in "[LR]{0,12}", pat in "[LR]{0,4}") {
            let (word, pat) = (w(&word), w(&pat));
            match minimal_prefix(&word, &pat) {
                Some(m) => {
                    prop_assert!(word_contains(&LRWord(word.0[..m].to_vec()), &pat));
                    if m > 0 {
                        prop_assert!(!word_contains(&LRWord(word.0[..m - 1].to_vec()), &pat));
                    }
                }
                None => prop_assert!(!word_contains(&word, &pat)),
            }
        }

        #[test]
        fn bijection_preserves_length_and_lands_in_target(
            word in "[LR]{0,12}", alpha in "[LR]{0,4}", beta_seed in any::<u8>()
        ) {
            let (word, alpha) = (w(&word), w(&alpha));
            prop_assume!(word_contains(&word, &alpha));
            let beta = LRWord((0..alpha.len())
                .map(|i| if beta_seed >> i & 1 == 1 { Letter::R } else { Letter::L })
                .collect());
            let image = wedge_bijection(&alpha, &beta, &word).unwrap();
            prop_assert_eq!(image.len(), word.len());
            prop_assert!(word_contains(&image, &beta));
            prop_assert_eq!(wedge_bijection(&beta, &alpha, &image).unwrap(), word);
        }
    }
}
