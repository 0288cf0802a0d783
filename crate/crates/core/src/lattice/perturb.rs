//! Dense perturbations of lexicographic orders of `Z^k`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};
use serde::{Deserialize, Serialize};

use super::density::{classify_density, lattice_ball, Verdict};
use super::intmat::{self, to_big, to_i64};
use super::quad::{format_rational, QuadScalar};
use super::spec::{dot_big, restrict, LexConeSpec};
use super::sublattice::Sublattice;
use crate::error::{Error, Result};
use crate::Sign;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbOptions {
    /// 1-based coordinate of the final two-dimensional layer that receives the `√2`
    /// entry. Tried in order when absent.
    pub coordinate: Option<usize>,
    /// Radius of the difference-witness search; 12 for `k = 2`, 8 otherwise by default.
    pub witness_radius: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbResult {
    pub spec: LexConeSpec,
    pub delta: String,
    pub coordinate: usize,
    /// Sign applied to `δ√2`.
    pub direction: i8,
    /// A lattice vector on which the input and output orders disagree.
    pub witness: Vec<i64>,
    pub witness_input_sign: Sign,
    pub witness_output_sign: Sign,
}

const MAX_HALVINGS: u32 = 61;

fn delta_schedule() -> impl Iterator<Item = BigRational> {
    (0..=MAX_HALVINGS).map(|h| BigRational::new(BigInt::one(), BigInt::one() << (3 + h)))
}

fn all_positive(f: &[QuadScalar], vs: &[Vec<BigInt>]) -> bool {
    vs.iter().all(|v| dot_big(f, v).sign() == Sign::Positive)
}

fn rational_all_positive(f: &[BigRational], vs: &[Vec<BigInt>]) -> bool {
    vs.iter().all(|v| {
        let s = f.iter().zip(v).fold(BigRational::zero(), |acc, (a, x)| acc + a * x);
        s > BigRational::zero()
    })
}

/// A rational functional positive on `required`, close to the lexicographic collapse
/// `Σ t^j n_j` of the normals.
fn rationalize(normals: &[Vec<QuadScalar>], required: &[Vec<BigInt>]) -> Option<Vec<BigRational>> {
    let m = normals[0].len();
    for t in delta_schedule() {
        let mut phi = vec![QuadScalar::zero(); m];
        let mut weight = QuadScalar::int(1);
        for n in normals {
            for (p, q) in phi.iter_mut().zip(n) {
                *p = &*p + &(q * &weight);
            }
            weight = weight.scale(&t);
        }
        if !all_positive(&phi, required) {
            continue;
        }
        for bits in 2..=60u32 {
            let scale = (1u64 << bits) as f64;
            let alpha: Vec<BigRational> = phi
                .iter()
                .map(|q| {
                    let num = BigInt::from_f64((q.to_f64() * scale).round()).unwrap_or_default();
                    BigRational::new(num, BigInt::from(1u64 << bits))
                })
                .collect();
            if alpha.iter().any(|a| !a.is_zero()) && rational_all_positive(&alpha, required) {
                return Some(alpha);
            }
        }
    }
    None
}

/// Builds normals (in the coordinates of the current layer) for a dense order positive on
/// `required`. The last layer is two-dimensional and gets a single normal
/// `α + dir·δ√2·e_j` with `α` rational.
fn construct(
    normals: &[Vec<QuadScalar>],
    m: usize,
    required: &[Vec<BigInt>],
    delta: &BigRational,
    j: usize,
    dir: i64,
) -> Result<Vec<Vec<QuadScalar>>> {
    let live: Vec<Vec<QuadScalar>> = normals.iter().filter(|n| n.iter().any(|q| !q.is_zero())).cloned().collect();
    let f = live.first().ok_or_else(|| Error::Inconsistent("no normal survives on layer".into()))?;
    let (alpha, on_kernel): (Vec<BigRational>, Vec<Vec<BigInt>>) = if f.iter().all(QuadScalar::is_rational) {
        let alpha: Vec<BigRational> = f.iter().map(|q| q.a.clone()).collect();
        let zero: Vec<Vec<BigInt>> = required
            .iter()
            .filter(|v| alpha.iter().zip(v.iter()).fold(BigRational::zero(), |acc, (a, x)| acc + a * x).is_zero())
            .cloned()
            .collect();
        (alpha, zero)
    } else {
        let alpha = rationalize(&live, required)
            .ok_or_else(|| Error::PerturbationFailed("no rational approximation keeps the pins".into()))?;
        (alpha, Vec::new())
    };
    let alpha_q: Vec<QuadScalar> = alpha.iter().cloned().map(QuadScalar::rational).collect();
    if m == 2 {
        let mut n = alpha_q;
        let shift = QuadScalar::new(BigRational::zero(), delta * BigInt::from(dir));
        n[j] = &n[j] + &shift;
        return Ok(vec![n]);
    }
    let rows = super::spec::functional_rows(&alpha_q);
    let kernel = intmat::integer_kernel(&rows, m);
    let kernel_i64: Vec<Vec<i64>> = kernel.iter().map(|v| to_i64(v)).collect::<Result<_>>()?;
    let sub = Sublattice::new(m, kernel_i64)?;
    let inner_normals: Vec<Vec<QuadScalar>> = live.iter().map(|n| restrict(n, &kernel)).collect();
    let inner_required: Vec<Vec<BigInt>> = on_kernel
        .iter()
        .map(|v| Ok(to_big(&sub.split(&to_i64(v)?)?.0)))
        .collect::<Result<_>>()?;
    let inner = construct(&inner_normals, m - 1, &inner_required, delta, j, dir)?;
    let kq = intmat::to_rational(&kernel);
    let mut out = vec![alpha_q];
    for w in inner {
        let a: Vec<BigRational> = w.iter().map(|q| q.a.clone()).collect();
        let b: Vec<BigRational> = w.iter().map(|q| q.b.clone()).collect();
        let la = intmat::solve_rows(&kq, &a, m).ok_or_else(|| Error::Inconsistent("lift failed".into()))?;
        let lb = intmat::solve_rows(&kq, &b, m).ok_or_else(|| Error::Inconsistent("lift failed".into()))?;
        out.push(la.into_iter().zip(lb).map(|(a, b)| QuadScalar::new(a, b)).collect());
    }
    Ok(out)
}

/// Perturbs `spec` into a dense order keeping every `required` vector positive.
///
/// Tries `δ = 1/8, 1/16, …, 2^{-64}`, then coordinates, then the sign of the `√2` entry,
/// and returns the first candidate that passes every exact check: pins positive, dense
/// by [`classify_density`], and a disagreement with `spec` inside the witness ball.
pub fn perturb_dense(spec: &LexConeSpec, required: &[Vec<i64>], opts: &PerturbOptions) -> Result<PerturbResult> {
    let k = spec.dim();
    if k < 2 {
        return Err(Error::Precondition("Z has no dense orders".into()));
    }
    for g in required {
        if spec.sign(g)? != Sign::Positive {
            return Err(Error::Precondition(format!("required vector {g:?} is not positive")));
        }
    }
    let coords: Vec<usize> = match opts.coordinate {
        Some(c) if (1..=2).contains(&c) => vec![c - 1],
        Some(c) => return Err(Error::Precondition(format!("coordinate {c} outside 1..=2"))),
        None => vec![0, 1],
    };
    let radius = opts.witness_radius.unwrap_or(if k == 2 { 12 } else { 8 });
    let ball = lattice_ball(k, radius);
    let required_big: Vec<Vec<BigInt>> = required.iter().map(|g| to_big(g)).collect();
    let mut last_err = None;
    for delta in delta_schedule() {
        for &j in &coords {
            for dir in [1i64, -1] {
                let normals = match construct(spec.normals(), k, &required_big, &delta, j, dir) {
                    Ok(n) => n,
                    Err(e) => {
                        last_err = Some(e);
                        continue;
                    }
                };
                let Ok(candidate) = LexConeSpec::new(k, normals) else { continue };
                if required.iter().any(|g| candidate.sign_unchecked(g) != Sign::Positive) {
                    continue;
                }
                if classify_density(&candidate)?.verdict != Verdict::Dense {
                    continue;
                }
                let witness = ball.iter().find(|v| candidate.sign_unchecked(v) != spec.sign_unchecked(v));
                if let Some(w) = witness {
                    return Ok(PerturbResult {
                        witness_input_sign: spec.sign_unchecked(w),
                        witness_output_sign: candidate.sign_unchecked(w),
                        witness: w.clone(),
                        spec: candidate,
                        delta: format_rational(&delta),
                        coordinate: j + 1,
                        direction: dir as i8,
                    });
                }
            }
        }
    }
    Err(Error::PerturbationFailed(match last_err {
        Some(e) => format!("no admissible δ down to 2^-64 ({e})"),
        None => "no admissible δ down to 2^-64".into(),
    }))
}
