//! Small dense rational matrices.

use num_traits::{One, Zero};

use crate::rational::Q;

pub type DMat = Vec<Vec<Q>>;

pub fn zeros(r: usize, c: usize) -> DMat {
    vec![vec![Q::zero(); c]; r]
}

pub fn identity(n: usize) -> DMat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn mul(a: &DMat, b: &DMat) -> DMat {
    let n = b.first().map_or(0, Vec::len);
    let mut out = zeros(a.len(), n);
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[k].iter().enumerate() {
                if !y.is_zero() {
                    out[i][j] += x * y;
                }
            }
        }
    }
    out
}

pub fn mul_vec(a: &DMat, v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

pub fn transpose(a: &DMat) -> DMat {
    let n = a.first().map_or(0, Vec::len);
    (0..n).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Gauss–Jordan inverse; `None` if singular.
pub fn inverse(a: &DMat) -> Option<DMat> {
    let n = a.len();
    let mut m: DMat = a
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = Q::one() / &m[c][c];
        for x in m[c].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solves `a x = b` for square invertible `a`.
pub fn solve(a: &DMat, b: &[Q]) -> Option<Vec<Q>> {
    inverse(a).map(|inv| mul_vec(&inv, b))
}
