//! Simultaneous root finding for univariate complex polynomials (Aberth).
//!
//! A double-precision pass from Newton-polygon starting points gets every
//! root roughly right; the same iteration then runs at full precision.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numeric::{approx_log2, pow2, to_f64, Complex, Float};

#[derive(Clone, Copy, Debug, PartialEq)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    fn add(self, o: C64) -> C64 {
        C64 { re: self.re + o.re, im: self.im + o.im }
    }
    fn sub(self, o: C64) -> C64 {
        C64 { re: self.re - o.re, im: self.im - o.im }
    }
    fn mul(self, o: C64) -> C64 {
        C64 {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
    fn div(self, o: C64) -> C64 {
        let d = o.re * o.re + o.im * o.im;
        C64 {
            re: (self.re * o.re + self.im * o.im) / d,
            im: (self.im * o.re - self.re * o.im) / d,
        }
    }
    fn abs(self) -> f64 {
        libm::hypot(self.re, self.im)
    }
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Starting points on circles whose radii come from the upper convex hull
/// of `(k, log|a_k|)`.
fn initial_guesses(log_abs: &[f64]) -> Vec<C64> {
    let n = log_abs.len() - 1;
    let pts: Vec<(usize, f64)> = log_abs
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_finite())
        .map(|(k, &v)| (k, v))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(n);
    let two_pi = 2.0 * core::f64::consts::PI;
    for w in hull.windows(2) {
        let (i, j) = (w[0].0, w[1].0);
        let count = j - i;
        let radius = libm::exp2((w[0].1 - w[1].1) / count as f64);
        for k in 0..count {
            let angle = two_pi * k as f64 / count as f64 + two_pi * i as f64 / n as f64 + 0.4;
            out.push(C64 {
                re: radius * libm::cos(angle),
                im: radius * libm::sin(angle),
            });
        }
    }
    out
}

fn eval_f64(coeffs: &[C64], z: C64) -> (C64, C64) {
    let mut p = coeffs[coeffs.len() - 1];
    let mut dp = C64 { re: 0.0, im: 0.0 };
    for c in coeffs.iter().rev().skip(1) {
        dp = dp.mul(z).add(p);
        p = p.mul(z).add(*c);
    }
    (p, dp)
}

fn aberth_f64(coeffs: &[C64], mut z: Vec<C64>) -> Vec<C64> {
    let n = z.len();
    for _ in 0..1000 {
        let mut moved = false;
        for i in 0..n {
            let (p, dp) = eval_f64(coeffs, z[i]);
            if p.abs() == 0.0 {
                continue;
            }
            let ratio = p.div(dp);
            let mut s = C64 { re: 0.0, im: 0.0 };
            for j in 0..n {
                if j != i {
                    s = s.add(C64 { re: 1.0, im: 0.0 }.div(z[i].sub(z[j])));
                }
            }
            let corr = ratio.div(C64 { re: 1.0, im: 0.0 }.sub(ratio.mul(s)));
            if !corr.is_finite() {
                continue;
            }
            z[i] = z[i].sub(corr);
            if corr.abs() > 1e-14 * z[i].abs().max(1e-300) {
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    z
}

fn eval_big(coeffs: &[Complex], z: &Complex, prec: usize) -> (Complex, Complex) {
    let mut p = coeffs[coeffs.len() - 1].clone();
    let mut dp = Complex::zero(prec);
    for c in coeffs.iter().rev().skip(1) {
        dp = &(&dp * z) + &p;
        p = &(&p * z) + c;
    }
    (p, dp)
}

/// All roots of `sum coeffs[k] z^k`, at `prec` bits. Leading coefficients
/// below `2^-(prec - 40)` relative to the largest are treated as zero.
pub fn polynomial_roots(coeffs: &[Complex], prec: usize) -> Result<Vec<Complex>> {
    let scale = coeffs
        .iter()
        .map(|c| approx_log2(&c.abs()))
        .fold(f64::NEG_INFINITY, f64::max);
    if !scale.is_finite() {
        return Err(Error::InvalidArgument("zero polynomial has no isolated roots".into()));
    }
    let negligible = |c: &Complex| approx_log2(&c.abs()) < scale - (prec as f64 - 40.0);
    let mut end = coeffs.len();
    while end > 0 && negligible(&coeffs[end - 1]) {
        end -= 1;
    }
    // Exact zero roots are split off up front.
    let mut start = 0;
    while start < end && coeffs[start].is_zero() {
        start += 1;
    }
    let mut zeros = vec![Complex::zero(prec); start];
    let coeffs: Vec<Complex> = coeffs[start..end].iter().map(|c| c.with_precision(prec)).collect();
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Ok(zeros);
    }

    // Scale into double range before the rough pass.
    let unit = pow2(-(libm::round(scale) as isize), prec);
    let log_abs: Vec<f64> = coeffs.iter().map(|c| approx_log2(&c.abs())).collect();
    let small: Vec<C64> = coeffs
        .iter()
        .map(|c| {
            let s = c.scale(&unit);
            C64 { re: to_f64(&s.re), im: to_f64(&s.im) }
        })
        .collect();
    let rough = aberth_f64(&small, initial_guesses(&log_abs));

    let mut z: Vec<Complex> = rough
        .iter()
        .map(|w| Complex::from_f64(w.re, w.im, prec))
        .collect();
    let tol_log = -(prec as f64) + 24.0;
    let one = Complex::one(prec);
    let mut converged = vec![false; n];
    for _ in 0..200 {
        for i in 0..n {
            if converged[i] {
                continue;
            }
            let (p, dp) = eval_big(&coeffs, &z[i], prec);
            if p.is_zero() {
                converged[i] = true;
                continue;
            }
            let ratio = &p / &dp;
            let mut s = Complex::zero(prec);
            for j in 0..n {
                if j != i {
                    s = &s + &(&z[i] - &z[j]).inv();
                }
            }
            let corr = &ratio / &(&one - &(&ratio * &s));
            z[i] = &z[i] - &corr;
            let size = approx_log2(&z[i].abs()).max(-(prec as f64));
            if approx_log2(&corr.abs()) < size + tol_log {
                converged[i] = true;
            }
        }
        if converged.iter().all(|&c| c) {
            break;
        }
    }
    zeros.extend(z);
    Ok(zeros)
}

/// Roots of a real polynomial given by exact rational coefficients.
pub fn rational_polynomial_roots(coeffs: &[crate::numeric::Rational], prec: usize) -> Result<Vec<Complex>> {
    let c: Vec<Complex> = coeffs.iter().map(|q| Complex::from_rational(q, prec)).collect();
    polynomial_roots(&c, prec)
}

/// Max of `|z|` over a list, as a float.
pub fn max_abs(values: &[Complex], prec: usize) -> Float {
    values
        .iter()
        .map(|v| v.abs())
        .fold(crate::numeric::float_from_int(0, prec), |a, b| if b > a { b } else { a })
}
