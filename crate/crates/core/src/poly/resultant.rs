use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::MultiPoly;
use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Sylvester matrix of `a` and `b` in variable `v`: `deg b` shifted rows of
/// `a` followed by `deg a` shifted rows of `b`, highest power first.
pub fn sylvester_matrix(a: &MultiPoly, b: &MultiPoly, v: usize) -> Vec<Vec<MultiPoly>> {
    let m = a.degree_in(v) as usize;
    let n = b.degree_in(v) as usize;
    let size = m + n;
    let zero = MultiPoly::zero(a.vars());
    let ca = a.coefficients_in(v);
    let cb = b.coefficients_in(v);
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![zero.clone(); size];
        for k in 0..=m {
            row[shift + k] = ca[m - k].clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![zero.clone(); size];
        for k in 0..=n {
            row[shift + k] = cb[n - k].clone();
        }
        rows.push(row);
    }
    rows
}

/// Fraction-free (Bareiss) determinant. Every division is exact.
fn bareiss_det(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    let vars = m[0][0].vars().clone();
    let mut negate = false;
    let mut prev = MultiPoly::one(&vars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return MultiPoly::zero(&vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = MultiPoly::zero(&vars);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Resultant of `a` and `b` with respect to variable index `v`.
pub fn resultant(a: &MultiPoly, b: &MultiPoly, v: usize) -> Result<MultiPoly> {
    if a.vars() != b.vars() {
        return Err(Error::InvalidArgument("resultant of polynomials in different rings".into()));
    }
    if a.is_zero() || b.is_zero() {
        return Ok(MultiPoly::zero(a.vars()));
    }
    let (m, n) = (a.degree_in(v), b.degree_in(v));
    match (m, n) {
        (0, 0) => Err(Error::ConstantInVariable(a.vars().name(v).into())),
        (0, _) => Ok(a.pow(n)),
        (_, 0) => Ok(b.pow(m)),
        _ => Ok(bareiss_det(sylvester_matrix(a, b, v))),
    }
}

/// Discriminant in `v`, normalized so that `disc(a Y^2 + b Y + c) = b^2 - 4ac`.
pub fn discriminant(p: &MultiPoly, v: usize) -> Result<MultiPoly> {
    let d = p.degree_in(v);
    if d == 0 {
        return Err(Error::ConstantInVariable(p.vars().name(v).into()));
    }
    if d == 1 {
        return Ok(MultiPoly::one(p.vars()));
    }
    let r = resultant(p, &p.derivative(v), v)?;
    let lc = p.leading_coefficient_in(v);
    let q = r.div_exact(&lc).ok_or_else(|| {
        Error::InvalidArgument(format!("leading coefficient does not divide resultant: {r}"))
    })?;
    let sign = (d as u64 * (d as u64 - 1) / 2) % 2 == 1;
    Ok(if sign { q.scale(&-Rational::ONE) } else { q })
}
