//! Braid words over the Artin generators `σ_1 .. σ_{n-1}`.
//!
//! A letter is stored as a nonzero `i16`: `+i` is `σ_i`, `-i` is `σ_i^{-1}`.

mod burau;
mod reduce;

pub use burau::BurauKey;
pub use reduce::{braid_equal, free_reduce, handle_reduce, is_trivial, main_sign, MainSignReport};

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidWord {
    n: usize,
    letters: Vec<i16>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<i16>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Precondition(format!("braid group needs n >= 2, got {n}")));
        }
        if n > i16::MAX as usize {
            return Err(Error::Precondition(format!("strand count {n} too large")));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= n {
                return Err(Error::Precondition(format!("letter {l} out of range for B_{n}")));
            }
        }
        Ok(BraidWord { n, letters })
    }

    pub(crate) fn from_raw(n: usize, letters: Vec<i16>) -> Self {
        debug_assert!(letters.iter().all(|&l| l != 0 && (l.unsigned_abs() as usize) < n));
        BraidWord { n, letters }
    }

    pub fn identity(n: usize) -> Self {
        BraidWord { n, letters: Vec::new() }
    }

    /// The word `σ_i^{±1}`.
    pub fn generator(n: usize, index: usize, positive: bool) -> Result<Self> {
        let l = index as i16;
        BraidWord::new(n, vec![if positive { l } else { -l }])
    }

    /// Parses the `s1 S2` token syntax (`S` marks an inverse).
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" || tok == "e" {
                continue;
            }
            let (positive, digits) = match tok.as_bytes().first() {
                Some(b's') => (true, &tok[1..]),
                Some(b'S') => (false, &tok[1..]),
                _ => return Err(Error::Parse(format!("bad braid token `{tok}`"))),
            };
            let index: i16 = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad braid token `{tok}`")))?;
            letters.push(if positive { index } else { -index });
        }
        BraidWord::new(n, letters)
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i16] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation; `other` must live in the same braid group.
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.n != other.n {
            return Err(Error::IncompatibleGroups(format!("B_{} vs B_{}", self.n, other.n)));
        }
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { n: self.n, letters })
    }

    /// Formal inverse: reverse the word and flip every exponent.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> BraidWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { n: self.n, letters }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&l| if l > 0 { 1 } else { -1 }).sum()
    }

    /// True when every letter is a positive generator (an element of the Garside monoid).
    pub fn is_positive_word(&self) -> bool {
        self.letters.iter().all(|&l| l > 0)
    }

    /// Lowest index occurring in the word together with the sign it occurs with, if that
    /// sign is constant.
    pub fn lowest_letter_sign(&self) -> Option<(usize, Option<Sign>)> {
        let low = self.letters.iter().map(|l| l.unsigned_abs()).min()?;
        let mut pos = false;
        let mut neg = false;
        for &l in &self.letters {
            if l.unsigned_abs() == low {
                if l > 0 {
                    pos = true;
                } else {
                    neg = true;
                }
            }
        }
        let sign = match (pos, neg) {
            (true, false) => Some(Sign::Positive),
            (false, true) => Some(Sign::Negative),
            _ => None,
        };
        Some((low as usize, sign))
    }

    /// Image in the symmetric group `S_n` (as the permutation of positions `0..n`).
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.n).collect();
        for &l in &self.letters {
            let j = l.unsigned_abs() as usize - 1;
            perm.swap(j, j + 1);
        }
        perm
    }
}

#[derive(Serialize, Deserialize)]
struct BraidWordRepr {
    n: usize,
    word: String,
}

impl Serialize for BraidWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BraidWordRepr { n: self.n, word: self.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = BraidWordRepr::deserialize(d)?;
        BraidWord::parse(repr.n, &repr.word).map_err(serde::de::Error::custom)
    }
}

/// Shift embedding `sh^r : B_m -> B_n`, `σ_i ↦ σ_{i+r}`.
pub fn shift_embed(r: usize, w: &BraidWord, n: usize) -> Result<BraidWord> {
    let mut letters = Vec::with_capacity(w.len());
    for &l in &w.letters {
        let idx = l.unsigned_abs() as usize + r;
        if idx >= n {
            return Err(Error::Precondition(format!(
                "shift by {r} sends σ_{} outside B_{n}",
                l.unsigned_abs()
            )));
        }
        let idx = idx as i16;
        letters.push(if l > 0 { idx } else { -idx });
    }
    BraidWord::new(n, letters)
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &l in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if l > 0 {
                write!(f, "s{l}")?;
            } else {
                write!(f, "S{}", -l)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let w = BraidWord::parse(3, "s1 S2 s2").unwrap();
        assert_eq!(w.letters(), &[1, -2, 2]);
        assert_eq!(w.to_string(), "s1 S2 s2");
        assert!(BraidWord::parse(3, "s3").is_err());
        assert!(BraidWord::parse(3, "x1").is_err());
        assert!(BraidWord::parse(3, "").unwrap().is_empty());
    }

    #[test]
    fn inverse_reverses_and_flips() {
        let w = BraidWord::parse(3, "s1 s2").unwrap();
        assert_eq!(w.inverse().to_string(), "S2 S1");
    }

    #[test]
    fn shift_examples() {
        let s1 = BraidWord::parse(2, "s1").unwrap();
        assert_eq!(shift_embed(1, &s1, 3).unwrap().to_string(), "s2");
        let w = BraidWord::parse(4, "s1 S2").unwrap();
        assert_eq!(shift_embed(0, &w, 4).unwrap(), w);
        let w = BraidWord::parse(2, "s1 s1").unwrap();
        assert_eq!(shift_embed(2, &w, 4).unwrap().to_string(), "s3 s3");
        assert!(shift_embed(2, &BraidWord::parse(3, "s2").unwrap(), 4).is_err());
    }

    #[test]
    fn permutation_distinguishes_commutator() {
        let a = BraidWord::parse(3, "s1 s2").unwrap();
        let b = BraidWord::parse(3, "s2 s1").unwrap();
        assert_ne!(a.permutation(), b.permutation());
    }
}
