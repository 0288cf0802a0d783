//! Saturated sublattices, isolators and lexicographic extension over a quotient.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::intmat::{self, to_big, to_i64, QMat};
use super::quad::QuadScalar;
use super::spec::LexConeSpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationResult {
    pub input_generators: Vec<Vec<i64>>,
    /// Hermite-normal-form basis of the isolator of the generated subgroup.
    pub basis: Vec<Vec<i64>>,
}

fn check_dims(k: usize, vs: &[Vec<i64>]) -> Result<()> {
    for v in vs {
        if v.len() != k {
            return Err(Error::DimensionMismatch { expected: k, got: v.len() });
        }
    }
    Ok(())
}

/// Smallest saturated sublattice containing the generators: the integer points of their
/// rational span, computed as a double integer kernel.
pub fn saturate(k: usize, generators: &[Vec<i64>]) -> Result<SaturationResult> {
    check_dims(k, generators)?;
    let rows: Vec<Vec<BigInt>> = generators.iter().map(|g| to_big(g)).collect();
    let basis = if intmat::rank(&rows, k) == 0 {
        Vec::new()
    } else {
        let annihilator = intmat::integer_kernel(&rows, k);
        let sat = if annihilator.is_empty() {
            super::spec::identity_basis(k)
        } else {
            intmat::integer_kernel(&annihilator, k)
        };
        intmat::row_hnf(&sat, k)
    };
    Ok(SaturationResult {
        input_generators: generators.to_vec(),
        basis: basis.iter().map(|b| to_i64(b)).collect::<Result<_>>()?,
    })
}

/// A saturated sublattice `L ⊂ Z^k` with a unimodular completion, so every vector splits
/// uniquely into coordinates along `L` and coordinates in `Z^k / L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sublattice {
    k: usize,
    basis: Vec<Vec<i64>>,
    /// Columns `0..m` give `L`-coordinates, columns `m..k` quotient coordinates.
    coord_map: QMat,
}

impl Sublattice {
    pub fn new(k: usize, basis: Vec<Vec<i64>>) -> Result<Self> {
        check_dims(k, &basis)?;
        let b: Vec<Vec<BigInt>> = basis.iter().map(|v| to_big(v)).collect();
        if !b.is_empty() && !intmat::is_saturated(&b, k) {
            return Err(Error::Precondition(
                "sublattice basis is not saturated (quotient has torsion)".into(),
            ));
        }
        let m = b.len();
        let (_, u, _) = intmat::column_echelon(&b, k);
        let w = intmat::rat_inverse(&intmat::to_rational(&u))
            .ok_or_else(|| Error::Inconsistent("unimodular transform not invertible".into()))?;
        let mut completion: QMat = intmat::to_rational(&b);
        completion.extend(w.into_iter().skip(m));
        let coord_map = intmat::rat_inverse(&completion)
            .ok_or_else(|| Error::Inconsistent("completion not invertible".into()))?;
        Ok(Sublattice { k, basis, coord_map })
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    fn coords(&self, v: &[i64]) -> Vec<BigRational> {
        (0..self.k)
            .map(|j| {
                v.iter()
                    .zip(&self.coord_map)
                    .fold(BigRational::zero(), |acc, (&x, row)| acc + &row[j] * BigInt::from(x))
            })
            .collect()
    }

    /// `(L-coordinates, quotient coordinates)` of `v`.
    pub fn split(&self, v: &[i64]) -> Result<(Vec<i64>, Vec<i64>)> {
        if v.len() != self.k {
            return Err(Error::DimensionMismatch { expected: self.k, got: v.len() });
        }
        let c = self.coords(v);
        let ints: Vec<i64> = c
            .iter()
            .map(|x| {
                if !x.is_integer() {
                    return Err(Error::Inconsistent("non-integral lattice coordinates".into()));
                }
                x.to_integer().to_i64().ok_or_else(|| Error::Precondition("coordinate overflow".into()))
            })
            .collect::<Result<_>>()?;
        let m = self.rank();
        Ok((ints[..m].to_vec(), ints[m..].to_vec()))
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        Ok(self.split(v)?.1.iter().all(|&x| x == 0))
    }

    /// Ambient functional whose value on `v` is `<w, coordinate block of v>`.
    fn lift(&self, w: &[QuadScalar], offset: usize) -> Vec<QuadScalar> {
        (0..self.k)
            .map(|i| {
                w.iter().enumerate().fold(QuadScalar::zero(), |acc, (j, q)| {
                    &acc + &q.scale(&self.coord_map[i][offset + j])
                })
            })
            .collect()
    }
}

/// Order on `Z^k` comparing quotient images by `outer` first and elements of the
/// sublattice by `inner` (in basis coordinates). Either side may be absent when the
/// sublattice is trivial or everything.
pub fn extend_by_quotient(
    k: usize,
    basis: &[Vec<i64>],
    inner: Option<&LexConeSpec>,
    outer: Option<&LexConeSpec>,
) -> Result<LexConeSpec> {
    let sub = Sublattice::new(k, basis.to_vec())?;
    let m = sub.rank();
    let expect = |spec: Option<&LexConeSpec>, dim: usize, what: &str| -> Result<()> {
        match (spec, dim) {
            (None, 0) => Ok(()),
            (Some(s), d) if s.dim() == d => Ok(()),
            (Some(s), d) => Err(Error::DimensionMismatch { expected: d, got: s.dim() }),
            (None, d) => Err(Error::Precondition(format!("{what} order required on rank {d}"))),
        }
    };
    expect(inner, m, "inner")?;
    expect(outer, k - m, "quotient")?;
    let mut normals = Vec::new();
    if let Some(o) = outer {
        normals.extend(o.normals().iter().map(|w| sub.lift(w, m)));
    }
    if let Some(i) = inner {
        normals.extend(i.normals().iter().map(|w| sub.lift(w, 0)));
    }
    LexConeSpec::new(k, normals)
}
