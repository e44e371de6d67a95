//! Exact linear algebra over the rationals and the integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{primitive_integer_vector, Rational};

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let height = rows.len();
    if height == 0 {
        return Vec::new();
    }
    let width = rows[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        if r == height {
            break;
        }
        let Some(p) = (r..height).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

pub fn rank_int(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let height = m.len();
    if height == 0 {
        return 0;
    }
    let width = m[0].len();
    let mut r = 0;
    for c in 0..width {
        if r == height {
            break;
        }
        let Some(p) = (r..height).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..height {
            if m[i][c].is_zero() {
                continue;
            }
            let a = m[r][c].clone();
            let b = m[i][c].clone();
            let pivot_row = m[r].clone();
            let mut g = BigInt::zero();
            for (v, pv) in m[i].iter_mut().zip(&pivot_row) {
                *v = &a * &*v - &b * pv;
                g = num_integer::Integer::gcd(&g, v);
            }
            if !g.is_zero() && !g.is_one() {
                for v in m[i].iter_mut() {
                    *v /= &g;
                }
            }
        }
        r += 1;
    }
    r
}

/// Integer basis of `{x : rows · x = 0}` with primitive basis vectors.
pub fn kernel_basis(rows: &[Vec<Rational>], width: usize) -> Vec<Vec<BigInt>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); width];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            primitive_integer_vector(&v).expect("kernel vector is nonzero")
        })
        .collect()
}

/// Some solution of `a · x = b`, or `None` when inconsistent.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let width = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&width) {
        return None;
    }
    let mut x = vec![Rational::zero(); width];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][width].clone();
    }
    Some(x)
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

pub fn determinant_i64(matrix: &[Vec<i64>]) -> BigInt {
    let m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    determinant(&m)
}

/// Determinant by cofactor expansion; exponential, kept for cross-checks.
pub fn determinant_by_expansion(matrix: &[Vec<i64>]) -> i128 {
    let n = matrix.len();
    match n {
        0 => 1,
        1 => matrix[0][0] as i128,
        _ => {
            let mut total = 0i128;
            for (c, &entry) in matrix[0].iter().enumerate() {
                if entry == 0 {
                    continue;
                }
                let minor: Vec<Vec<i64>> = matrix[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let term = entry as i128 * determinant_by_expansion(&minor);
                total += if c % 2 == 0 { term } else { -term };
            }
            total
        }
    }
}

pub fn to_rational_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|r| r.iter().map(|v| Rational::from_integer(v.clone())).collect())
        .collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_positive(v: &BigInt) -> bool {
    v.is_positive()
}
