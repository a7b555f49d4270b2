//! Best-effort closed forms for numeric constants: `(a + b√d)^{1/e} π^{-j/e}`
//! with small rationals `a`, `b`. Annotation only; never used in checks.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use dashu_int::IBig;

use crate::numeric::{approx_log2, float_from_ibig, float_from_int, pi, rational_to_string, to_f64, Float, Rational};

const POWERS: [u32; 3] = [1, 2, 4];
const SQUAREFREE: [i64; 14] = [2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22];
const MAX_DEN: i64 = 64;
const MAX_SURD: i64 = 128;

fn close(a: &Float, b: &Float, prec: usize) -> bool {
    let scale = approx_log2(b).max(0.0);
    let tol = -(prec as f64) * 0.6;
    approx_log2(&(a - b)) < scale + tol
}

/// `x` as `p/q` in lowest terms with `q <= max_den`, when it matches to
/// full precision.
fn as_rational(x: &Float, max_den: i64, prec: usize) -> Option<(i64, i64)> {
    let xf = to_f64(x);
    if !xf.is_finite() || xf.abs() > 1e12 {
        return None;
    }
    for q in 1..=max_den {
        let p = libm::round(xf * q as f64);
        if (xf * q as f64 - p).abs() > 1e-6 {
            continue;
        }
        let cand = float_from_int(p as i64, prec) / float_from_int(q, prec);
        if close(x, &cand, prec) {
            let g = gcd_u(p.abs() as u64, q as u64) as i64;
            return Some((p as i64 / g, q / g));
        }
    }
    None
}

/// `x = (a + b√d)` with `a, b` of denominator at most `MAX_DEN`.
fn as_quadratic(x: &Float, prec: usize) -> Option<(Rational, Rational, i64)> {
    let xf = to_f64(x);
    if !xf.is_finite() || xf.abs() > 1e9 {
        return None;
    }
    for &d in &SQUAREFREE {
        let root_f = libm::sqrt(d as f64);
        for q in 1..=MAX_DEN {
            for bn in -MAX_SURD..=MAX_SURD {
                if bn == 0 {
                    continue;
                }
                let an = xf * q as f64 - bn as f64 * root_f;
                let ar = libm::round(an);
                if (an - ar).abs() > 1e-7 {
                    continue;
                }
                let root = float_from_int(d, prec).sqrt();
                let cand = (float_from_ibig(&IBig::from(ar as i64), prec) + float_from_int(bn, prec) * root)
                    / float_from_int(q, prec);
                if close(x, &cand, prec) {
                    let den: dashu_int::UBig = (q as u64).into();
                    return Some((
                        Rational::from_parts(IBig::from(ar as i64), den.clone()),
                        Rational::from_parts(IBig::from(bn), den),
                        d,
                    ));
                }
            }
        }
    }
    None
}

fn render_quadratic(a: &Rational, b: &Rational, d: i64) -> String {
    let surd = if *b == Rational::ONE {
        format!("sqrt({d})")
    } else if *b == -Rational::ONE {
        format!("-sqrt({d})")
    } else {
        format!("{}*sqrt({d})", rational_to_string(b))
    };
    if a.is_zero() {
        surd
    } else if let Some(pos) = surd.strip_prefix('-') {
        format!("{} - {pos}", rational_to_string(a))
    } else {
        format!("{} + {surd}", rational_to_string(a))
    }
}

fn gcd_u(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u(b, a % b)
    }
}

/// `n = a^e * r` with `r` free of `e`-th powers.
fn extract_power(mut n: u64, e: u32) -> (u64, u64) {
    let mut a = 1u64;
    let mut p = 2u64;
    while p.saturating_pow(e) <= n {
        let pe = p.pow(e);
        while n.is_multiple_of(pe) {
            n /= pe;
            a *= p;
        }
        p += 1;
    }
    (a, n)
}

fn root_text(r: &str, e: u32) -> String {
    match e {
        1 => r.to_string(),
        2 => format!("sqrt({r})"),
        _ => format!("{r}^(1/{e})"),
    }
}

fn pi_text(j: u32, e: u32) -> Option<String> {
    if j == 0 {
        return None;
    }
    let g = gcd_u(u64::from(j), u64::from(e)) as u32;
    Some(match (j / g, e / g) {
        (1, 1) => "pi".to_string(),
        (1, 2) => "sqrt(pi)".to_string(),
        (n, 1) => format!("pi^{n}"),
        (n, d) => format!("pi^({n}/{d})"),
    })
}

fn fraction(num: Vec<String>, den: Vec<String>) -> String {
    let top = if num.is_empty() { "1".to_string() } else { num.join("*") };
    match den.len() {
        0 => top,
        1 => format!("{top}/{}", den[0]),
        _ => format!("{top}/({})", den.join("*")),
    }
}

/// `(p/q)^{1/e} / pi^{j/e}` with perfect powers pulled out of the root.
fn render_rational(p: i64, q: i64, e: u32, j: u32) -> String {
    let (a, rn) = extract_power(p as u64, e);
    let (b, rd) = extract_power(q as u64, e);
    let g = gcd_u(a, b);
    let (a, b) = (a / g, b / g);
    let mut num = Vec::new();
    let mut den = Vec::new();
    if a != 1 {
        num.push(a.to_string());
    }
    if b != 1 {
        den.push(b.to_string());
    }
    if rn != 1 {
        let r = if rd == 1 { rn.to_string() } else { format!("{rn}/{rd}") };
        num.push(root_text(&r, e));
    } else if rd != 1 {
        den.push(root_text(&rd.to_string(), e));
    }
    den.extend(pi_text(j, e));
    fraction(num, den)
}

fn render_surd(base: String, e: u32, j: u32) -> String {
    let root = match e {
        1 if j == 0 => base,
        1 => format!("({base})"),
        2 => format!("sqrt({base})"),
        _ => format!("({base})^(1/{e})"),
    };
    fraction(vec![root], pi_text(j, e).into_iter().collect())
}

/// Closed form for a positive `x`, trying powers of `π` when `with_pi`.
/// Rationals are preferred over surds, and low roots over high ones.
pub fn recognize(x: &Float, with_pi: bool) -> Option<String> {
    let prec = x.precision().max(128);
    if x.sign() != dashu_base::Sign::Positive {
        return None;
    }
    let pi_val = pi(prec);
    let max_j = u32::from(with_pi);
    for &e in &POWERS {
        for j in 0..=max_j * e {
            let mut u = x.clone().with_precision(prec).value().powi(IBig::from(e));
            u *= pi_val.clone().powi(IBig::from(j));
            if let Some((p, q)) = as_rational(&u, 100_000, prec) {
                return Some(render_rational(p, q, e, j));
            }
        }
    }
    for &e in &POWERS {
        for j in 0..=max_j * e {
            let mut u = x.clone().with_precision(prec).value().powi(IBig::from(e));
            u *= pi_val.clone().powi(IBig::from(j));
            if let Some((a, b, d)) = as_quadratic(&u, prec) {
                return Some(render_surd(render_quadratic(&a, &b, d), e, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_constants() {
        let prec = 256;
        let four = float_from_int(4, prec);
        assert_eq!(recognize(&four, false).as_deref(), Some("4"));
        let rho = float_from_int(6, prec) + float_from_int(4, prec) * float_from_int(2, prec).sqrt();
        assert_eq!(recognize(&rho, false).as_deref(), Some("6 + 4*sqrt(2)"));
        let c = float_from_int(1, prec) / pi(prec).sqrt();
        assert_eq!(recognize(&c, true).as_deref(), Some("1/sqrt(pi)"));
        let eight_pi = float_from_int(8, prec) / pi(prec);
        assert_eq!(recognize(&eight_pi, true).as_deref(), Some("8/pi"));
        // 1/(pi 2^(9/4)): fourth power times pi^4 is 1/512.
        let two = float_from_int(2, prec);
        let c = float_from_int(1, prec) / (pi(prec) * two.sqrt().sqrt() * float_from_int(4, prec));
        assert_eq!(recognize(&c, true).as_deref(), Some("1/(4*2^(1/4)*pi)"));
        let c = float_from_int(1875, prec).sqrt() / (float_from_int(8, prec) * pi(prec));
        assert_eq!(recognize(&c, true).as_deref(), Some("25*sqrt(3)/(8*pi)"));
        let c = float_from_int(1, prec) / (float_from_int(2, prec) * pi(prec));
        assert_eq!(recognize(&c, true).as_deref(), Some("1/(2*pi)"));
        assert_eq!(recognize(&pi(prec).ln(), true), None);
    }
}
