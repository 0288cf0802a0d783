//! Hash keys from the unreduced Burau representation specialised at fixed `t` over two
//! prime fields. Equal braids always get equal keys; equal keys are only a hint and are
//! confirmed by the word problem.

use super::BraidWord;

const PRIMES: [u64; 2] = [(1 << 61) - 1, 1_000_000_007];
const TS: [u64; 2] = [3, 5];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BurauKey([u64; 2]);

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn matrix(letters: &[i16], n: usize, p: u64, t: u64) -> Vec<u64> {
    let t_inv = powmod(t, p - 2, p);
    let one_minus_t = (1 + p - t) % p;
    let one_minus_t_inv = (1 + p - t_inv) % p;
    let mut m = vec![0u64; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    for &l in letters {
        let j = l.unsigned_abs() as usize - 1;
        for row in 0..n {
            let a = m[row * n + j];
            let b = m[row * n + j + 1];
            let (na, nb) = if l > 0 {
                ((mulmod(a, one_minus_t, p) + b) % p, mulmod(a, t, p))
            } else {
                (mulmod(b, t_inv, p), (a + mulmod(b, one_minus_t_inv, p)) % p)
            };
            m[row * n + j] = na;
            m[row * n + j + 1] = nb;
        }
    }
    m
}

fn digest(m: &[u64], p: u64) -> u64 {
    let base = 1_000_003u64;
    m.iter().fold(17u64, |acc, &x| (mulmod(acc, base, p) + x) % p)
}

impl BurauKey {
    pub fn of(w: &BraidWord) -> BurauKey {
        let mut key = [0u64; 2];
        for k in 0..2 {
            let m = matrix(w.letters(), w.strands(), PRIMES[k], TS[k]);
            key[k] = digest(&m, PRIMES[k]);
        }
        BurauKey(key)
    }
}
