//! Small dense exact linear algebra: fraction-free rank and rational
//! Gauss–Jordan elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::Rational;

/// Row-major dense matrix.
pub type Matrix = Vec<Vec<Rational>>;

/// Rank by Bareiss fraction-free elimination. Rational rows are first scaled
/// to integer rows (which does not change the rank).
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    bareiss_rank(&mut m)
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
}

/// Bareiss elimination in place; every intermediate entry is an integer
/// minor of the input, so the divisions below are exact.
pub fn bareiss_rank(m: &mut [Vec<BigInt>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pivot) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pivot);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form; returns the pivot column of each nonzero row.
/// Within a row, `preferred` columns are tried before the rest, in order.
pub fn rref(m: &mut Matrix, preferred: &[usize]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut order: Vec<usize> = preferred.iter().copied().filter(|&c| c < cols).collect();
    let mut seen = vec![false; cols];
    for &c in &order {
        seen[c] = true;
    }
    order.extend((0..cols).filter(|&c| !seen[c]));
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in &order {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug, &[]);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `x · M` for a row vector `x`.
pub fn row_times(x: &[Rational], m: &Matrix) -> Vec<Rational> {
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![Rational::zero(); cols];
    for (xi, row) in x.iter().zip(m) {
        if xi.is_zero() {
            continue;
        }
        for (o, v) in out.iter_mut().zip(row) {
            *o += xi * v;
        }
    }
    out
}

pub fn trace(m: &Matrix) -> Rational {
    m.iter().enumerate().map(|(i, r)| r[i].clone()).sum()
}
