//! Small exact integer/rational matrix routines: unimodular column reduction, integer
//! kernels, Hermite normal form, rational inversion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type IMat = Vec<Vec<BigInt>>;

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn to_i64(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::Precondition(format!("lattice entry {x} overflows i64"))))
        .collect()
}

fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn col_axpy(m: &mut IMat, dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let t = &row[src] * q;
        row[dst] -= t;
    }
}

fn col_swap(m: &mut IMat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Column reduction `A U = E` with `U` unimodular and `E` in column echelon form.
/// Returns `(E, U, rank)`; the last `cols - rank` columns of `E` are zero.
pub fn column_echelon(a: &IMat, cols: usize) -> (IMat, IMat, usize) {
    let mut e = a.clone();
    let mut u = identity(cols);
    let mut pc = 0;
    for i in 0..e.len() {
        if pc == cols {
            break;
        }
        loop {
            let pivot = (pc..cols)
                .filter(|&j| !e[i][j].is_zero())
                .min_by(|&x, &y| e[i][x].abs().cmp(&e[i][y].abs()));
            let Some(p) = pivot else { break };
            if p != pc {
                col_swap(&mut e, p, pc);
                col_swap(&mut u, p, pc);
            }
            let mut done = true;
            for j in pc + 1..cols {
                if !e[i][j].is_zero() {
                    let q = e[i][j].div_floor(&e[i][pc]);
                    col_axpy(&mut e, j, pc, &q);
                    col_axpy(&mut u, j, pc, &q);
                    if !e[i][j].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if !e[i][pc].is_zero() {
            pc += 1;
        }
    }
    (e, u, pc)
}

/// Basis (as vectors) of `{c ∈ Z^cols : A c = 0}`; always a saturated sublattice.
pub fn integer_kernel(a: &IMat, cols: usize) -> Vec<Vec<BigInt>> {
    let (_, u, rank) = column_echelon(a, cols);
    (rank..cols).map(|j| u.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Row Hermite normal form of the lattice spanned by `rows`, zero rows dropped.
pub fn row_hnf(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut r = 0;
    for c in 0..cols {
        loop {
            let pivot = (r..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&x, &y| m[x][c].abs().cmp(&m[y][c].abs()));
            let Some(p) = pivot else { break };
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                if !m[i][c].is_zero() {
                    let q = m[i][c].div_floor(&m[r][c]);
                    let pr = m[r].clone();
                    for (x, y) in m[i].iter_mut().zip(&pr) {
                        *x -= &q * y;
                    }
                    if !m[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            if m[r][c].is_negative() {
                for x in m[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..r {
                let q = m[i][c].div_floor(&m[r][c]);
                if !q.is_zero() {
                    let pr = m[r].clone();
                    for (x, y) in m[i].iter_mut().zip(&pr) {
                        *x -= &q * y;
                    }
                }
            }
            r += 1;
        }
    }
    m.truncate(r);
    m
}

/// True when `rows` are independent and span a saturated sublattice (all elementary
/// divisors equal to 1).
pub fn is_saturated(rows: &[Vec<BigInt>], cols: usize) -> bool {
    let (e, _, rank) = column_echelon(&rows.to_vec(), cols);
    if rank != rows.len() {
        return false;
    }
    let mut det = BigInt::one();
    for (i, row) in e.iter().enumerate() {
        det *= &row[i];
    }
    det.abs().is_one()
}

pub fn rank(rows: &[Vec<BigInt>], cols: usize) -> usize {
    column_echelon(&rows.to_vec(), cols).2
}

pub type QMat = Vec<Vec<BigRational>>;

pub fn to_rational(m: &IMat) -> QMat {
    m.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect()
}

/// Gauss–Jordan inverse of a square rational matrix.
pub fn rat_inverse(m: &QMat) -> Option<QMat> {
    let n = m.len();
    let mut a: QMat = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pr = a[c].clone();
                for (x, y) in a[i].iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Some rational solution `w` of `rows · w = rhs` (rows independent).
pub fn solve_rows(rows: &QMat, rhs: &[BigRational], cols: usize) -> Option<Vec<BigRational>> {
    let m = rows.len();
    let mut a: QMat = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pr = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut w = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        w[c] = a[i][cols].clone();
    }
    Some(w)
}
