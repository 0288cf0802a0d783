use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::intmat;
use super::quad::QuadScalar;
use crate::error::{Error, Result};
use crate::Sign;

/// A lexicographic ordering of `Z^k`: `v` is positive when the first nonzero
/// `<normal_j, v>` is positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LexConeSpec {
    k: usize,
    normals: Vec<Vec<QuadScalar>>,
}

#[derive(Deserialize)]
struct RawSpec {
    k: usize,
    normals: Vec<Vec<QuadScalar>>,
}

impl<'de> Deserialize<'de> for LexConeSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSpec::deserialize(d)?;
        LexConeSpec::new(raw.k, raw.normals).map_err(serde::de::Error::custom)
    }
}

/// Dot product of a `Q(√2)` vector with an integer vector.
pub fn dot(normal: &[QuadScalar], v: &[i64]) -> QuadScalar {
    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    for (n, &x) in normal.iter().zip(v) {
        if x != 0 {
            let x = BigInt::from(x);
            a += &n.a * &x;
            b += &n.b * &x;
        }
    }
    QuadScalar { a, b }
}

pub(crate) fn dot_big(normal: &[QuadScalar], v: &[BigInt]) -> QuadScalar {
    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    for (n, x) in normal.iter().zip(v) {
        a += &n.a * x;
        b += &n.b * x;
    }
    QuadScalar { a, b }
}

/// Integer rows of the rational and `√2` parts of a functional, denominators cleared.
pub(crate) fn functional_rows(f: &[QuadScalar]) -> Vec<Vec<BigInt>> {
    let mut rows = Vec::new();
    for part in [f.iter().map(|q| q.a.clone()).collect::<Vec<_>>(), f.iter().map(|q| q.b.clone()).collect()] {
        if part.iter().all(Zero::is_zero) {
            continue;
        }
        let l = part.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        rows.push(part.iter().map(|r| (r * &l).to_integer()).collect());
    }
    rows
}

/// Restriction of a functional to the sublattice with the given basis, in basis coordinates.
pub(crate) fn restrict(f: &[QuadScalar], basis: &[Vec<BigInt>]) -> Vec<QuadScalar> {
    basis.iter().map(|b| dot_big(f, b)).collect()
}

/// Integer kernel of `f` on the lattice with `basis`, returned as ambient vectors.
pub(crate) fn kernel_on(f: &[QuadScalar], basis: &[Vec<BigInt>], k: usize) -> Vec<Vec<BigInt>> {
    let m = basis.len();
    if m == 0 {
        return Vec::new();
    }
    let restricted = restrict(f, basis);
    let rows = functional_rows(&restricted);
    let coords = intmat::integer_kernel(&rows, m);
    coords
        .iter()
        .map(|c| {
            let mut v = vec![BigInt::zero(); k];
            for (ci, b) in c.iter().zip(basis) {
                for (vj, bj) in v.iter_mut().zip(b) {
                    *vj += ci * bj;
                }
            }
            v
        })
        .collect()
}

pub(crate) fn identity_basis(k: usize) -> Vec<Vec<BigInt>> {
    (0..k)
        .map(|i| (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

impl LexConeSpec {
    /// Validates that no nonzero integer vector is orthogonal to every normal.
    pub fn new(k: usize, normals: Vec<Vec<QuadScalar>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidSpec("dimension must be >= 1".into()));
        }
        if normals.is_empty() {
            return Err(Error::InvalidSpec("at least one normal is required".into()));
        }
        for n in &normals {
            if n.len() != k {
                return Err(Error::DimensionMismatch { expected: k, got: n.len() });
            }
        }
        let spec = LexConeSpec { k, normals };
        let rest = spec.common_kernel();
        if !rest.is_empty() {
            return Err(Error::InvalidSpec(format!(
                "integer vector {:?} is orthogonal to every normal",
                intmat::to_i64(&rest[0]).unwrap_or_default()
            )));
        }
        Ok(spec)
    }

    /// Integer-coefficient normals, for convenience.
    pub fn from_int_normals(normals: &[&[i64]]) -> Result<Self> {
        let k = normals.first().map_or(0, |n| n.len());
        LexConeSpec::new(k, normals.iter().map(|n| n.iter().map(|&x| QuadScalar::int(x)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn normals(&self) -> &[Vec<QuadScalar>] {
        &self.normals
    }

    fn common_kernel(&self) -> Vec<Vec<BigInt>> {
        let mut basis = identity_basis(self.k);
        for n in &self.normals {
            if basis.is_empty() {
                break;
            }
            basis = kernel_on(n, &basis, self.k);
        }
        basis
    }

    /// Sign of the first nonzero `<normal_j, v>`.
    pub fn sign(&self, v: &[i64]) -> Result<Sign> {
        if v.len() != self.k {
            return Err(Error::DimensionMismatch { expected: self.k, got: v.len() });
        }
        Ok(self.sign_unchecked(v))
    }

    pub(crate) fn sign_unchecked(&self, v: &[i64]) -> Sign {
        for n in &self.normals {
            let s = dot(n, v).sign();
            if s != Sign::Zero {
                return s;
            }
        }
        Sign::Zero
    }

    pub fn is_rational(&self) -> bool {
        self.normals.iter().flatten().all(QuadScalar::is_rational)
    }
}

impl LexConeSpec {
    /// Short text form: normals separated by `;`, entries by `,`, e.g. `1,r2` or `0,1;1,0`.
    /// JSON is accepted as well.
    pub fn parse_text(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('{') {
            return serde_json::from_str(t).map_err(|e| Error::Parse(format!("lattice spec: {e}")));
        }
        let normals: Vec<Vec<QuadScalar>> = t
            .split(';')
            .map(|row| row.split(',').map(QuadScalar::parse).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let k = normals.first().map_or(0, |n| n.len());
        LexConeSpec::new(k, normals)
    }
}

impl std::fmt::Display for LexConeSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, n) in self.normals.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            let row: Vec<String> = n.iter().map(|x| x.to_string().replace(' ', "").replace('√', "r")).collect();
            f.write_str(&row.join(","))?;
        }
        Ok(())
    }
}

/// Free-function form of [`LexConeSpec::sign`].
pub fn lex_sign(spec: &LexConeSpec, v: &[i64]) -> Result<Sign> {
    spec.sign(v)
}
