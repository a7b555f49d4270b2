//! Arbitrary-precision real and complex floating point values.
//!
//! Exact work happens over [`Rational`]; floats only show up in point
//! evaluation, root finding, Newton polish and the saddle-point stage.
//! Every float is created with an explicit binary precision.

use alloc::format;
use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use dashu_base::{Abs, BitTest, Sign, UnsignedAbs};
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::{IBig, UBig};
use dashu_ratio::RBig;

/// Binary floating point with round-half-even.
pub type Float = FBig<HalfEven>;
/// Exact rational with arbitrary-precision numerator and denominator.
pub type Rational = RBig;

pub const DEFAULT_PRECISION_BITS: usize = 256;
pub const MAX_PRECISION_BITS: usize = 2048;

pub fn float_from_int(v: i64, prec: usize) -> Float {
    Float::from(IBig::from(v)).with_precision(prec).value()
}

pub fn float_from_ibig(v: &IBig, prec: usize) -> Float {
    Float::from(v.clone()).with_precision(prec).value()
}

pub fn float_from_rational(q: &Rational, prec: usize) -> Float {
    let num = float_from_ibig(q.numerator(), prec);
    let den = Float::from(IBig::from(q.denominator().clone()))
        .with_precision(prec)
        .value();
    num / den
}

/// `2^exp` at the given precision.
pub fn pow2(exp: isize, prec: usize) -> Float {
    Float::from_parts(IBig::ONE, exp).with_precision(prec).value()
}

pub fn is_zero(x: &Float) -> bool {
    x.repr().significand().is_zero()
}

pub fn to_f64(x: &Float) -> f64 {
    x.to_f64().value()
}

pub fn from_f64(v: f64, prec: usize) -> Float {
    if v == 0.0 || !v.is_finite() {
        return float_from_int(0, prec);
    }
    let bits = v.to_bits();
    let negative = bits >> 63 == 1;
    let biased = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mantissa, exp) = if biased == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), biased - 1075)
    };
    let mut sig = IBig::from(mantissa);
    if negative {
        sig = -sig;
    }
    Float::from_parts(sig, exp as isize).with_precision(prec).value()
}

/// Approximate base-2 logarithm of `|x|`, valid far outside the f64 range.
pub fn approx_log2(x: &Float) -> f64 {
    if is_zero(x) {
        return f64::NEG_INFINITY;
    }
    let repr = x.repr();
    let sig = repr.significand().unsigned_abs();
    let bits = sig.bit_len();
    let shift = bits.saturating_sub(60);
    let top: UBig = &sig >> shift;
    let top = u64::try_from(top).unwrap_or(u64::MAX) as f64;
    libm::log2(top) + shift as f64 + repr.exponent() as f64
}

/// pi via Machin's formula.
pub fn pi(prec: usize) -> Float {
    let wp = prec + 32;
    let atan_inv = |k: i64| -> Float {
        let k_f = float_from_int(k, wp);
        let k2 = &k_f * &k_f;
        let eps = pow2(-(wp as isize) - 4, wp);
        let mut power = float_from_int(1, wp) / &k_f;
        let mut sum = power.clone();
        let mut j: i64 = 1;
        loop {
            power /= &k2;
            let term = &power / float_from_int(2 * j + 1, wp);
            if term < eps {
                break;
            }
            if j % 2 == 1 {
                sum -= term;
            } else {
                sum += term;
            }
            j += 1;
        }
        sum
    };
    let value = atan_inv(5) * float_from_int(16, wp) - atan_inv(239) * float_from_int(4, wp);
    value.with_precision(prec).value()
}

/// Real `x^e` for `x > 0` and rational `e`.
pub fn pow_rational(x: &Float, e: &Rational, prec: usize) -> Float {
    if e.is_zero() {
        return float_from_int(1, prec);
    }
    if e.is_int() {
        let n = e.numerator().clone();
        return x.powi(n).with_precision(prec).value();
    }
    let ln = x.clone().with_precision(prec + 32).value().ln();
    (ln * float_from_rational(e, prec + 32)).exp().with_precision(prec).value()
}

/// Render `x` in scientific notation with `digits` significant decimal digits.
pub fn to_decimal_string(x: &Float, digits: usize) -> String {
    if is_zero(x) {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let negative = x.sign() == Sign::Negative;
    let ax = x.clone().abs();
    let prec = (digits as f64 * 3.33) as usize + 64;
    let ax = ax.with_precision(prec.max(x.precision())).value();
    let mut e10 = libm::floor(approx_log2(&ax) * core::f64::consts::LOG10_2) as i64;
    let mut mantissa;
    loop {
        let shift = digits as i64 - 1 - e10;
        let ten = float_from_int(10, prec);
        let scale = ten.powi(IBig::from(shift.unsigned_abs()));
        let scaled = if shift >= 0 { &ax * &scale } else { &ax / &scale };
        mantissa = scaled.round().to_int().value().unsigned_abs().to_string();
        if mantissa.len() > digits {
            e10 += 1;
            continue;
        }
        if mantissa.len() < digits {
            e10 -= 1;
            continue;
        }
        break;
    }
    let (head, tail) = mantissa.split_at(1);
    let sign = if negative { "-" } else { "" };
    if tail.is_empty() {
        format!("{sign}{head}e{e10}")
    } else {
        format!("{sign}{head}.{tail}e{e10}")
    }
}

/// Complex number with [`Float`] parts.
#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        Complex { re, im }
    }

    pub fn zero(prec: usize) -> Self {
        Complex::new(float_from_int(0, prec), float_from_int(0, prec))
    }

    pub fn one(prec: usize) -> Self {
        Complex::new(float_from_int(1, prec), float_from_int(0, prec))
    }

    pub fn i(prec: usize) -> Self {
        Complex::new(float_from_int(0, prec), float_from_int(1, prec))
    }

    pub fn from_real(re: Float) -> Self {
        let prec = re.precision();
        Complex::new(re, float_from_int(0, prec))
    }

    pub fn from_rational(q: &Rational, prec: usize) -> Self {
        Complex::from_real(float_from_rational(q, prec))
    }

    pub fn from_int(v: i64, prec: usize) -> Self {
        Complex::from_real(float_from_int(v, prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        Complex::new(from_f64(re, prec), from_f64(im, prec))
    }

    pub fn precision(&self) -> usize {
        self.re.precision().max(self.im.precision())
    }

    pub fn with_precision(&self, prec: usize) -> Self {
        Complex::new(
            self.re.clone().with_precision(prec).value(),
            self.im.clone().with_precision(prec).value(),
        )
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.re) && is_zero(&self.im)
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Float {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> Float {
        if is_zero(&self.im) {
            return self.re.clone().abs();
        }
        if is_zero(&self.re) {
            return self.im.clone().abs();
        }
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: &Float) -> Self {
        Complex::new(&self.re * s, &self.im * s)
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let prec = self.precision();
        if self.is_zero() {
            return Complex::zero(prec);
        }
        let r = self.abs();
        let two = float_from_int(2, prec);
        let re_part = ((&r + &self.re) / &two).sqrt();
        let im_mag = ((&r - &self.re) / &two).sqrt();
        let im_part = if self.im.sign() == Sign::Negative {
            -im_mag
        } else {
            im_mag
        };
        Complex::new(re_part, im_part)
    }

    pub fn powi(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Complex::one(self.precision());
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn inv(&self) -> Self {
        let d = self.norm_sqr();
        Complex::new(&self.re / &d, -(&self.im / &d))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (to_f64(&self.re), to_f64(&self.im))
    }

    /// Lexicographic comparison on (re, im).
    pub fn cmp_lex(&self, other: &Self) -> Ordering {
        self.re
            .partial_cmp(&other.re)
            .unwrap_or(Ordering::Equal)
            .then(self.im.partial_cmp(&other.im).unwrap_or(Ordering::Equal))
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} {} {}i)",
            to_decimal_string(&self.re, 20),
            if self.im.sign() == Sign::Negative { "-" } else { "+" },
            to_decimal_string(&self.im.clone().abs(), 20)
        )
    }
}

macro_rules! forward_complex_op {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a Complex> for &'a Complex {
            type Output = Complex;
            fn $method(self, rhs: &'a Complex) -> Complex {
                let f: fn(&Complex, &Complex) -> Complex = $body;
                f(self, rhs)
            }
        }
        impl $tr<Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: &'a Complex) -> Complex {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Complex> for &'a Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                self.$method(&rhs)
            }
        }
    };
}

forward_complex_op!(Add, add, |a, b| Complex::new(&a.re + &b.re, &a.im + &b.im));
forward_complex_op!(Sub, sub, |a, b| Complex::new(&a.re - &b.re, &a.im - &b.im));
forward_complex_op!(Mul, mul, |a, b| {
    if is_zero(&a.im) && is_zero(&b.im) {
        let prec = a.precision().max(b.precision());
        return Complex::new(&a.re * &b.re, float_from_int(0, prec));
    }
    Complex::new(
        &a.re * &b.re - &a.im * &b.im,
        &a.re * &b.im + &a.im * &b.re,
    )
});
forward_complex_op!(Div, div, |a, b| {
    if is_zero(&b.im) {
        return Complex::new(&a.re / &b.re, &a.im / &b.re);
    }
    let d = b.norm_sqr();
    Complex::new(
        (&a.re * &b.re + &a.im * &b.im) / &d,
        (&a.im * &b.re - &a.re * &b.im) / &d,
    )
});

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-self.re, -self.im)
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-self.re.clone(), -self.im.clone())
    }
}

/// Small integer and power helpers on exact values.
pub fn rational_from_ints(num: i64, den: i64) -> Rational {
    Rational::from_parts_signed(IBig::from(num), IBig::from(den))
}

pub fn rational_is_positive(q: &Rational) -> bool {
    q.sign() == Sign::Positive && !q.is_zero()
}

pub fn rational_is_negative(q: &Rational) -> bool {
    q.sign() == Sign::Negative && !q.is_zero()
}

pub fn rational_pow(q: &Rational, n: u32) -> Rational {
    let mut acc = Rational::ONE;
    for _ in 0..n {
        acc = &acc * q;
    }
    acc
}

/// Parse `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: IBig = num.parse().ok()?;
    let den: IBig = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::from_parts_signed(num, den))
}

pub fn rational_to_string(q: &Rational) -> String {
    if q.denominator().is_one() {
        q.numerator().to_string()
    } else {
        format!("{}/{}", q.numerator(), q.denominator())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_matches_reference_digits() {
        let p = pi(256);
        let s = to_decimal_string(&p, 50);
        assert_eq!(s, "3.1415926535897932384626433832795028841971693993751e0");
    }

    #[test]
    fn decimal_rendering_handles_powers_of_ten() {
        assert_eq!(to_decimal_string(&float_from_int(1000, 128), 5), "1.0000e3");
        assert_eq!(to_decimal_string(&float_from_int(-7, 128), 1), "-7e0");
        let third = float_from_rational(&rational_from_ints(1, 3), 256);
        assert_eq!(to_decimal_string(&third, 10), "3.333333333e-1");
    }

    #[test]
    fn complex_sqrt_is_principal() {
        let z = Complex::from_int(-4, 256);
        let r = z.sqrt();
        assert!(is_zero(&r.re));
        assert_eq!(to_decimal_string(&r.im, 10), "2.000000000e0");
        let w = Complex::new(float_from_int(3, 256), float_from_int(-4, 256));
        let s = w.sqrt();
        let back = &s * &s;
        assert!(to_f64(&(&back - &w).abs()) < 1e-60);
        assert!(s.re.sign() == Sign::Positive);
    }

    #[test]
    fn rational_power_of_float() {
        let two = float_from_int(2, 256);
        let v = pow_rational(&two, &rational_from_ints(9, 4), 256);
        assert_eq!(to_decimal_string(&v, 20), "4.7568284600108842669e0");
        assert!((approx_log2(&v) - 2.25).abs() < 1e-12);
    }

    #[test]
    fn f64_round_trip() {
        for v in [1.5, -0.1, 3.0e-200, 6.02e23] {
            assert_eq!(to_f64(&from_f64(v, 128)), v);
        }
    }

    #[test]
    fn parse_rational_strings() {
        assert_eq!(parse_rational("2/5"), Some(rational_from_ints(2, 5)));
        assert_eq!(parse_rational(" -3 "), Some(rational_from_ints(-3, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(rational_to_string(&rational_from_ints(-4, 6)), "-2/3");
    }
}
