use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use super::BraidWord;
use crate::error::{Error, Result};
use crate::Sign;

/// Removes adjacent pairs `σ_i^e σ_i^{-e}` (stack based, so cascades are handled).
pub fn free_reduce(w: &BraidWord) -> BraidWord {
    BraidWord::from_raw(w.strands(), free_reduce_letters(w.letters()))
}

pub(crate) fn free_reduce_letters(letters: &[i16]) -> Vec<i16> {
    let mut out: Vec<i16> = Vec::with_capacity(letters.len());
    for &l in letters {
        push_reduced(&mut out, l);
    }
    out
}

#[inline]
fn push_reduced(out: &mut Vec<i16>, l: i16) {
    if out.last() == Some(&-l) {
        out.pop();
    } else {
        out.push(l);
    }
}

/// Finds the handle whose closing letter is leftmost, scanning closing positions from
/// `from`. Such a handle contains no nested handle, so it is permitted.
fn leftmost_handle(w: &[i16], from: usize) -> Option<(usize, usize)> {
    for close in from..w.len() {
        let c = w[close];
        let i = c.unsigned_abs();
        let mut p = close;
        while p > 0 {
            p -= 1;
            let a = w[p].unsigned_abs();
            if a < i {
                break;
            }
            if a == i {
                if w[p] == -c {
                    return Some((p, close));
                }
                break;
            }
        }
    }
    None
}

/// Dehornoy handle reduction, always reducing the leftmost permitted handle.
///
/// A `σ_i`-handle `σ_i^e v σ_i^{-e}` (all letters of `v` above `i`) is replaced by `v` with
/// each `σ_{i+1}^d` rewritten as `σ_{i+1}^{-e} σ_i^d σ_{i+1}^e`.
pub fn handle_reduce(w: &BraidWord, max_steps: u64) -> Result<BraidWord> {
    Ok(BraidWord::from_raw(w.strands(), handle_reduce_letters(w.letters(), max_steps)?))
}

pub(crate) fn handle_reduce_letters(letters: &[i16], max_steps: u64) -> Result<Vec<i16>> {
    let mut w = free_reduce_letters(letters);
    let mut steps: u64 = 0;
    let mut from = 0;
    let mut scratch: Vec<i16> = Vec::new();
    while let Some((open, close)) = leftmost_handle(&w, from) {
        steps += 1;
        if steps > max_steps {
            return Err(Error::ReductionBudgetExceeded(max_steps));
        }
        let e: i16 = if w[open] > 0 { 1 } else { -1 };
        let i = w[open].abs();
        scratch.clear();
        for &c in &w[open + 1..close] {
            if c.abs() == i + 1 {
                let d = c.signum();
                push_reduced(&mut scratch, -e * (i + 1));
                push_reduced(&mut scratch, d * i);
                push_reduced(&mut scratch, e * (i + 1));
            } else {
                push_reduced(&mut scratch, c);
            }
        }
        w.splice(open..=close, scratch.iter().copied());
        from = open;
    }
    Ok(w)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MainSignReport {
    /// Lowest generator index in the reduced word, `None` for the trivial braid.
    pub index: Option<usize>,
    pub sign: Sign,
    pub reduced: BraidWord,
}

/// Handle-reduces `w` and reports its main generator and the sign it occurs with.
pub fn main_sign(w: &BraidWord, max_steps: u64) -> Result<MainSignReport> {
    let reduced = handle_reduce(w, max_steps)?;
    match reduced.lowest_letter_sign() {
        None => Ok(MainSignReport { index: None, sign: Sign::Zero, reduced }),
        Some((index, Some(sign))) => Ok(MainSignReport { index: Some(index), sign, reduced }),
        Some((index, None)) => Err(Error::Inconsistent(format!(
            "handle reduction left σ_{index} with both signs in `{reduced}`"
        ))),
    }
}

const CACHE_LIMIT: usize = 1 << 20;

type TrivialityCache = RwLock<HashMap<(usize, Vec<i16>), bool>>;

fn triviality_cache() -> &'static TrivialityCache {
    static CACHE: OnceLock<TrivialityCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Word problem: is `w` the identity in `B_n`? Memoized on the free-reduced word.
pub fn is_trivial(w: &BraidWord, max_steps: u64) -> Result<bool> {
    let key = (w.strands(), free_reduce_letters(w.letters()));
    if key.1.is_empty() {
        return Ok(true);
    }
    if let Some(&hit) = triviality_cache().read().expect("cache poisoned").get(&key) {
        return Ok(hit);
    }
    let trivial = handle_reduce_letters(&key.1, max_steps)?.is_empty();
    let mut cache = triviality_cache().write().expect("cache poisoned");
    if cache.len() >= CACHE_LIMIT {
        cache.clear();
    }
    cache.insert(key, trivial);
    Ok(trivial)
}

/// `u = v` in `B_n`, decided by emptiness of the reduced form of `u v^{-1}`.
pub fn braid_equal(u: &BraidWord, v: &BraidWord, max_steps: u64) -> Result<bool> {
    let w = u.concat(&v.inverse())?;
    is_trivial(&w, max_steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    const STEPS: u64 = 1_000_000;

    fn w(n: usize, s: &str) -> BraidWord {
        BraidWord::parse(n, s).unwrap()
    }

    #[test]
    fn free_reduce_examples() {
        assert!(free_reduce(&w(3, "s1 S1")).is_empty());
        assert_eq!(free_reduce(&w(3, "s1 s2 S2 s2")), w(3, "s1 s2"));
        assert_eq!(free_reduce(&w(3, "S2 s2 S2")), w(3, "S2"));
    }

    #[test]
    fn handle_reduce_examples() {
        assert!(handle_reduce(&w(3, "s1 S1"), STEPS).unwrap().is_empty());
        let r = handle_reduce(&w(3, "s1 s2 S1"), STEPS).unwrap();
        assert_eq!(r, w(3, "S2 s1 s2"));
        assert!(handle_reduce(&w(3, "s1 s2 s1 S2 S1 S2"), STEPS).unwrap().is_empty());
    }

    #[test]
    fn budget_is_enforced() {
        let long = w(3, "s1 s2 s1 S2 S1 S2");
        assert_eq!(handle_reduce(&long, 1), Err(Error::ReductionBudgetExceeded(1)));
    }

    #[test]
    fn main_sign_examples() {
        let r = main_sign(&w(3, "S2"), STEPS).unwrap();
        assert_eq!((r.index, r.sign), (Some(2), Sign::Negative));
        let r = main_sign(&w(3, "s1 S2"), STEPS).unwrap();
        assert_eq!((r.index, r.sign), (Some(1), Sign::Positive));
        let r = main_sign(&w(3, "s1 s2 S1"), STEPS).unwrap();
        assert_eq!((r.index, r.sign), (Some(1), Sign::Positive));
        let r = main_sign(&w(3, ""), STEPS).unwrap();
        assert_eq!((r.index, r.sign), (None, Sign::Zero));
    }

    #[test]
    fn equality_examples() {
        assert!(braid_equal(&w(3, "s1 s2 s1"), &w(3, "s2 s1 s2"), STEPS).unwrap());
        assert!(!braid_equal(&w(3, "s1 s2"), &w(3, "s2 s1"), STEPS).unwrap());
        assert!(braid_equal(&w(3, ""), &w(3, "s1 S1"), STEPS).unwrap());
        assert!(braid_equal(&w(4, "s1 s3"), &w(4, "s3 s1"), STEPS).unwrap());
        assert!(braid_equal(&w(3, "s1 s2 S1"), &w(3, "S2 s1 s2"), STEPS).unwrap());
    }
}
