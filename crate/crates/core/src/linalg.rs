// SPDX-License-Identifier: Apache-2.0

//! Small dense helpers over [`Real`] scalars.

use crate::jet::Real;

pub type Mat<T> = Vec<Vec<T>>;

pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + *x * *y)
}

pub fn dot3<T: Real>(a: &[T; 3], b: &[T; 3]) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross<T: Real>(a: &[T; 3], b: &[T; 3]) -> [T; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn scale3<T: Real>(a: &[T; 3], s: T) -> [T; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}

/// `g(x, y)` for a symmetric bilinear form given as a matrix.
pub fn quad<T: Real>(g: &Mat<T>, x: &[T], y: &[T]) -> T {
    let mut acc = T::zero();
    for (i, row) in g.iter().enumerate() {
        let mut r = T::zero();
        for (j, gij) in row.iter().enumerate() {
            r = r + *gij * y[j];
        }
        acc = acc + x[i] * r;
    }
    acc
}

/// Inverse of a symmetric positive-definite matrix (Gauss-Jordan without
/// pivoting).
pub fn spd_inverse<T: Real>(a: &Mat<T>) -> Mat<T> {
    let n = a.len();
    let mut m: Mat<T> = a.clone();
    let mut inv: Mat<T> = (0..n)
        .map(|i| (0..n).map(|j| T::cst(if i == j { 1.0 } else { 0.0 })).collect())
        .collect();
    for k in 0..n {
        let p = m[k][k].recip();
        for j in 0..n {
            m[k][j] = m[k][j] * p;
            inv[k][j] = inv[k][j] * p;
        }
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = m[i][k];
            for j in 0..n {
                m[i][j] = m[i][j] - f * m[k][j];
                inv[i][j] = inv[i][j] - f * inv[k][j];
            }
        }
    }
    inv
}

pub fn norm3(a: &[f64; 3]) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}
