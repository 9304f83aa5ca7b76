//! Dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use super::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

/// `row dst −= f · row src`, from column `from` on.
fn sub_scaled(a: &mut Matrix, dst: usize, src: usize, f: &Scalar, from: usize) {
    let (target, pivot) = if src < dst {
        let (lo, hi) = a.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    } else {
        let (lo, hi) = a.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    };
    for (x, p) in target[from..].iter_mut().zip(&pivot[from..]) {
        *x -= p * f;
    }
}

fn scale_row(row: &mut [Scalar], c: &Scalar) {
    for x in row {
        *x *= c;
    }
}

/// Determinant by fraction-exact Gaussian elimination.
pub fn determinant(m: &Matrix) -> Scalar {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= &a[col][col];
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[col][col];
            sub_scaled(&mut a, r, col, &f, col);
        }
    }
    det
}

/// Solves `m · x = b` for square invertible `m`.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let inv = a[col][col].recip();
        scale_row(&mut a[col][col..], &inv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                sub_scaled(&mut a, r, col, &f, col);
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Inverse of a square matrix, if invertible.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Scalar> = (0..n).map(|i| if i == j { Scalar::one() } else { Scalar::zero() }).collect();
        cols.push(solve(m, &e)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

/// Finds `x` with `Σ_k x_k · columns[k] = target` for an arbitrary
/// (possibly non-square) system, or `None` if inconsistent.
pub fn solve_least(columns: &[Vec<Scalar>], target: &[Scalar]) -> Option<Vec<Scalar>> {
    let rows = target.len();
    let ncols = columns.len();
    let mut a: Matrix = (0..rows)
        .map(|r| {
            let mut row: Vec<Scalar> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(piv) = (row..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(piv, row);
        let inv = a[row][col].recip();
        scale_row(&mut a[row][col..], &inv);
        for r in 0..rows {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                sub_scaled(&mut a, r, row, &f, col);
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    if a[row..].iter().any(|r| !r[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![Scalar::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][ncols].clone();
    }
    Some(x)
}
