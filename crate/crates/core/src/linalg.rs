//! Dense complex linear algebra for the small systems in Newton polish and
//! the saddle-point Hessian.

use alloc::vec::Vec;

use crate::numeric::Complex;

pub type Matrix = Vec<Vec<Complex>>;

/// LU with partial pivoting; returns `None` when a pivot is exactly zero.
fn lu(mut a: Matrix) -> Option<(Matrix, Vec<usize>, bool)> {
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut odd = false;
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| {
            a[i][k]
                .norm_sqr()
                .partial_cmp(&a[j][k].norm_sqr())
                .unwrap_or(core::cmp::Ordering::Equal)
        })?;
        if a[p][k].is_zero() {
            return None;
        }
        if p != k {
            a.swap(p, k);
            perm.swap(p, k);
            odd = !odd;
        }
        let pivot_inv = a[k][k].inv();
        for i in k + 1..n {
            let f = &a[i][k] * &pivot_inv;
            for j in k + 1..n {
                let t = &f * &a[k][j];
                a[i][j] = &a[i][j] - &t;
            }
            a[i][k] = f;
        }
    }
    Some((a, perm, odd))
}

/// Solve `a x = b`.
pub fn solve(a: &Matrix, b: &[Complex]) -> Option<Vec<Complex>> {
    let n = a.len();
    let (lu, perm, _) = lu(a.clone())?;
    let mut y: Vec<Complex> = perm.iter().map(|&i| b[i].clone()).collect();
    for i in 0..n {
        for j in 0..i {
            let t = &lu[i][j] * &y[j];
            y[i] = &y[i] - &t;
        }
    }
    for i in (0..n).rev() {
        for j in i + 1..n {
            let t = &lu[i][j] * &y[j];
            y[i] = &y[i] - &t;
        }
        y[i] = &y[i] / &lu[i][i];
    }
    Some(y)
}

pub fn determinant(a: &Matrix, prec: usize) -> Complex {
    match lu(a.clone()) {
        None => Complex::zero(prec),
        Some((lu, _, odd)) => {
            let mut d = Complex::one(prec);
            for (i, row) in lu.iter().enumerate() {
                d = &d * &row[i];
            }
            if odd {
                -d
            } else {
                d
            }
        }
    }
}

pub fn inverse(a: &Matrix, prec: usize) -> Option<Matrix> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Complex> = (0..n)
            .map(|i| if i == j { Complex::one(prec) } else { Complex::zero(prec) })
            .collect();
        cols.push(solve(a, &e)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(v: i64) -> Complex {
        Complex::from_int(v, 128)
    }

    #[test]
    fn small_system() {
        let a = vec![vec![c(0), c(2)], vec![c(3), c(1)]];
        let x = solve(&a, &[c(4), c(5)]).unwrap();
        assert_eq!(x[0].to_f64_pair(), (1.0, 0.0));
        assert_eq!(x[1].to_f64_pair(), (2.0, 0.0));
        assert_eq!(determinant(&a, 128).to_f64_pair(), (-6.0, 0.0));
        let inv = inverse(&a, 128).unwrap();
        assert!((inv[0][0].to_f64_pair().0 + 1.0 / 6.0).abs() < 1e-15);
        assert!(solve(&vec![vec![c(1), c(2)], vec![c(2), c(4)]], &[c(1), c(1)]).is_none());
    }
}
