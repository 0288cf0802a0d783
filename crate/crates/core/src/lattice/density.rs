use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::intmat::to_i64;
use super::spec::{identity_basis, kernel_on, restrict, LexConeSpec};
use crate::error::{Error, Result};
use crate::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Dense,
    Discrete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DensityMethod {
    #[serde(rename = "exact-recursive")]
    ExactRecursive,
    #[serde(rename = "ball-search")]
    BallSearch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityReport {
    pub verdict: Verdict,
    pub least_positive: Option<Vec<i64>>,
    pub method: DensityMethod,
    /// Radius of the ball search run alongside the exact verdict.
    pub check_radius: usize,
    /// Whether the ball search corroborated the verdict. A discrete verdict that the
    /// search contradicts is an error; a dense verdict can only be corroborated by finding
    /// a positive element below the smallest one of the half-radius ball.
    pub corroborated: bool,
}

/// All nonzero vectors of `Z^k` with `|v|_1 <= r`, by norm and then lexicographically.
pub fn lattice_ball(k: usize, r: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for norm in 1..=r {
        let mut cur = vec![0i64; k];
        fill(&mut cur, 0, norm as i64, &mut out);
    }
    out
}

fn fill(cur: &mut Vec<i64>, pos: usize, remaining: i64, out: &mut Vec<Vec<i64>>) {
    if pos == cur.len() - 1 {
        if remaining == 0 {
            cur[pos] = 0;
            out.push(cur.clone());
        } else {
            for v in [-remaining, remaining] {
                cur[pos] = v;
                out.push(cur.clone());
            }
        }
        return;
    }
    for a in -remaining..=remaining {
        cur[pos] = a;
        fill(cur, pos + 1, remaining - a.abs(), out);
    }
}

fn sub(u: &[i64], v: &[i64]) -> Vec<i64> {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

/// Smallest positive element of the ball under `spec`.
pub(crate) fn min_positive(spec: &LexConeSpec, ball: &[Vec<i64>]) -> Option<Vec<i64>> {
    let mut best: Option<&Vec<i64>> = None;
    for v in ball {
        if spec.sign_unchecked(v) != Sign::Positive {
            continue;
        }
        match best {
            Some(b) if spec.sign_unchecked(&sub(b, v)) != Sign::Positive => {}
            _ => best = Some(v),
        }
    }
    best.cloned()
}

fn default_radius(k: usize) -> usize {
    match k {
        0..=2 => 8,
        3 => 6,
        _ => 4,
    }
}

/// Exact discrete/dense classification.
///
/// Peel normals from the first, replacing the current lattice by the kernel of each
/// normal on it. The order is discrete iff the last nonzero lattice, on which the next
/// normal is injective, has rank 1; its primitive vector oriented by that normal is the
/// least positive element.
pub fn classify_density(spec: &LexConeSpec) -> Result<DensityReport> {
    classify_density_with(spec, default_radius(spec.dim()))
}

pub fn classify_density_with(spec: &LexConeSpec, check_radius: usize) -> Result<DensityReport> {
    let k = spec.dim();
    let mut basis: Vec<Vec<BigInt>> = identity_basis(k);
    let mut least: Option<Vec<i64>> = None;
    let mut verdict = None;
    for n in spec.normals() {
        let kernel = kernel_on(n, &basis, k);
        if kernel.is_empty() {
            if basis.len() == 1 {
                let b = &basis[0];
                let s = restrict(n, &basis)[0].sign();
                let eps: Vec<BigInt> = if s == Sign::Positive { b.clone() } else { b.iter().map(|x| -x).collect() };
                least = Some(to_i64(&eps)?);
                verdict = Some(Verdict::Discrete);
            } else {
                verdict = Some(Verdict::Dense);
            }
            break;
        }
        basis = kernel;
    }
    let verdict = verdict.ok_or_else(|| Error::InvalidSpec("normals do not separate the lattice".into()))?;

    let ball = lattice_ball(k, check_radius);
    let corroborated = match (&verdict, &least) {
        (Verdict::Discrete, Some(eps)) => {
            if spec.sign_unchecked(eps) != Sign::Positive {
                return Err(Error::Inconsistent(format!("least positive {eps:?} is not positive")));
            }
            if let Some(g) = ball.iter().find(|g| {
                spec.sign_unchecked(g) == Sign::Positive && spec.sign_unchecked(&sub(eps, g)) == Sign::Positive
            }) {
                return Err(Error::Inconsistent(format!(
                    "exact verdict says {eps:?} is least positive but ball search found {g:?} below it"
                )));
            }
            true
        }
        _ => {
            let half = lattice_ball(k, check_radius / 2);
            match min_positive(spec, &half) {
                Some(m) => ball.iter().any(|g| {
                    spec.sign_unchecked(g) == Sign::Positive && spec.sign_unchecked(&sub(&m, g)) == Sign::Positive
                }),
                None => false,
            }
        }
    };
    Ok(DensityReport { verdict, least_positive: least, method: DensityMethod::ExactRecursive, check_radius, corroborated })
}

/// Heuristic classification from balls alone: discrete when the smallest positive element
/// of `Ball(radius / 2)` stays smallest in `Ball(radius)`.
pub fn classify_by_search(spec: &LexConeSpec, radius: usize) -> DensityReport {
    let k = spec.dim();
    let half = min_positive(spec, &lattice_ball(k, radius / 2));
    let full = min_positive(spec, &lattice_ball(k, radius));
    let (verdict, least) = match (half, full) {
        (Some(h), Some(f)) if h == f => (Verdict::Discrete, Some(f)),
        _ => (Verdict::Dense, None),
    };
    DensityReport {
        verdict,
        least_positive: least,
        method: DensityMethod::BallSearch,
        check_radius: radius,
        corroborated: false,
    }
}
