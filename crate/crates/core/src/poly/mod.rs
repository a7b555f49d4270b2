//! Exact sparse multivariate polynomials over the rationals.
//!
//! A [`MultiPoly`] stores a [`VarList`] and a map from exponent vectors to
//! nonzero rational coefficients. Terms are kept in graded lexicographic
//! order with respect to the declared variable order, so iteration and
//! rendering are deterministic.

mod gcd;
mod parse;
mod resultant;

pub use gcd::{content_in, gcd, primitive_part_in, squarefree_part_in};
pub use parse::parse_polynomial;
pub use resultant::{discriminant, resultant, sylvester_matrix};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use dashu_base::{Gcd, Sign};
use dashu_int::{IBig, UBig};

use crate::error::{Error, Result};
use crate::numeric::{float_from_rational, Complex, Float, Rational};

/// Ordered list of distinct variable names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarList(Vec<String>);

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarList {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidVarList("empty variable list".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if !valid_identifier(name) {
                return Err(Error::InvalidVarList(format!("bad identifier `{name}`")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidVarList(format!("duplicate variable `{name}`")));
            }
        }
        Ok(VarList(names))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Prepend an embedding variable, which becomes index 0.
    pub fn with_leading(&self, name: &str) -> Result<VarList> {
        let mut names = vec![name.to_string()];
        names.extend(self.0.iter().cloned());
        VarList::new(names)
    }

    pub fn without(&self, idx: usize) -> Result<VarList> {
        let mut names = self.0.clone();
        names.remove(idx);
        VarList::new(names)
    }
}

impl fmt::Debug for VarList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(", "))
    }
}

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One coordinate of a [`Point`].
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Approx(Complex),
}

impl Scalar {
    pub fn to_complex(&self, prec: usize) -> Complex {
        match self {
            Scalar::Exact(q) => Complex::from_rational(q, prec),
            Scalar::Approx(z) => z.with_precision(prec),
        }
    }
}

/// Evaluation point; floating coordinates carry at least 128 bits.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    pub coords: Vec<Scalar>,
}

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Result<Self> {
        for c in &coords {
            if let Scalar::Approx(z) = c {
                if z.precision() < 128 {
                    return Err(Error::InvalidArgument(
                        "floating coordinates need at least 128 bits".into(),
                    ));
                }
            }
        }
        Ok(Point { coords })
    }

    pub fn exact(coords: Vec<Rational>) -> Self {
        Point {
            coords: coords.into_iter().map(Scalar::Exact).collect(),
        }
    }

    pub fn approx(coords: Vec<Complex>) -> Result<Self> {
        Point::new(coords.into_iter().map(Scalar::Approx).collect())
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    fn precision(&self) -> Option<usize> {
        self.coords
            .iter()
            .filter_map(|c| match c {
                Scalar::Approx(z) => Some(z.precision()),
                Scalar::Exact(_) => None,
            })
            .min()
    }
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: VarList,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &VarList) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarList, c: Rational) -> Self {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &VarList) -> Self {
        MultiPoly::constant(vars, Rational::ONE)
    }

    pub fn var(vars: &VarList, i: usize) -> Self {
        MultiPoly::monomial(vars, Monomial::unit(vars.len(), i), Rational::ONE)
    }

    pub fn var_named(vars: &VarList, name: &str) -> Result<Self> {
        Ok(MultiPoly::var(vars, vars.require(name)?))
    }

    pub fn monomial(vars: &VarList, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), vars.len(), "exponent length mismatch");
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Build from `(exponents, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I>(vars: &VarList, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = MultiPoly::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length mismatch");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or(Rational::ZERO)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars()])
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = &*existing + &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_ring(&self, other: &MultiPoly) {
        assert!(
            self.vars == other.vars,
            "polynomials live in different rings: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.vars);
        let mut base = self.clone();
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

    /// Formal partial derivative with respect to variable index `i`.
    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, c * Rational::from(e));
        }
        out
    }

    pub fn partial_derivative(&self, var: &str) -> Result<MultiPoly> {
        Ok(self.derivative(self.vars.require(var)?))
    }

    /// Replace variables (by index) with polynomials of the same ring.
    pub fn substitute_indexed(&self, assignments: &[(usize, MultiPoly)]) -> MultiPoly {
        let n = self.nvars();
        let mut target: Vec<Option<&MultiPoly>> = vec![None; n];
        for (i, q) in assignments {
            self.check_ring(q);
            target[*i] = Some(q);
        }
        let mut powers: Vec<Vec<MultiPoly>> = vec![Vec::new(); n];
        for i in 0..n {
            if let Some(q) = target[i] {
                let d = self.degree_in(i) as usize;
                let mut pw = Vec::with_capacity(d + 1);
                pw.push(MultiPoly::one(&self.vars));
                for k in 1..=d {
                    let next = &pw[k - 1] * q;
                    pw.push(next);
                }
                powers[i] = pw;
            }
        }
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut kept = m.clone();
            let mut factor = MultiPoly::constant(&self.vars, c.clone());
            for i in 0..n {
                if target[i].is_some() && m.0[i] > 0 {
                    factor = &factor * &powers[i][m.0[i] as usize];
                    kept.0[i] = 0;
                }
            }
            for (fm, fc) in factor.terms {
                out.add_term(fm.mul(&kept), fc);
            }
        }
        out
    }

    pub fn substitute(&self, assignments: &[(&str, &MultiPoly)]) -> Result<MultiPoly> {
        let mut idx = Vec::with_capacity(assignments.len());
        for (name, q) in assignments {
            if q.vars != self.vars {
                return Err(Error::InvalidArgument(format!(
                    "substitution for `{name}` lives in a different ring"
                )));
            }
            idx.push((self.vars.require(name)?, (*q).clone()));
        }
        Ok(self.substitute_indexed(&idx))
    }

    /// Set variable `i` to the rational `value`.
    pub fn specialize(&self, i: usize, value: &Rational) -> MultiPoly {
        let c = MultiPoly::constant(&self.vars, value.clone());
        self.substitute_indexed(&[(i, c)])
    }

    /// Move into another ring by variable name. Every variable that occurs
    /// must exist in `target`.
    pub fn to_ring(&self, target: &VarList) -> Result<MultiPoly> {
        let mut map = Vec::with_capacity(self.nvars());
        for (i, name) in self.vars.names().iter().enumerate() {
            match target.index_of(name) {
                Some(j) => map.push(Some(j)),
                None if !self.depends_on(i) => map.push(None),
                None => return Err(Error::UnknownVariable(name.clone())),
            }
        }
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &j) in map.iter().enumerate() {
                if let Some(j) = j {
                    e[j] = m.0[i];
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    pub fn evaluate_exact(&self, values: &[Rational]) -> Result<Rational> {
        if values.len() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: values.len(),
            });
        }
        let mut acc = Rational::ZERO;
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in values.iter().zip(&m.0) {
                for _ in 0..e {
                    t = &t * v;
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    pub fn evaluate_complex(&self, values: &[Complex], prec: usize) -> Result<Complex> {
        if values.len() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: values.len(),
            });
        }
        let mut powers: Vec<Vec<Complex>> = Vec::with_capacity(values.len());
        for (i, v) in values.iter().enumerate() {
            let d = self.degree_in(i) as usize;
            let mut pw = Vec::with_capacity(d + 1);
            pw.push(Complex::one(prec));
            for k in 1..=d {
                let next = &pw[k - 1] * v;
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut acc = Complex::zero(prec);
        for (m, c) in &self.terms {
            let mut t = Complex::from_real(float_from_rational(c, prec));
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Exact value when every coordinate is exact, complex float otherwise.
    pub fn evaluate(&self, pt: &Point) -> Result<Scalar> {
        if pt.len() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: pt.len(),
            });
        }
        match pt.precision() {
            None => {
                let vals: Vec<Rational> = pt
                    .coords
                    .iter()
                    .map(|c| match c {
                        Scalar::Exact(q) => q.clone(),
                        Scalar::Approx(_) => unreachable!(),
                    })
                    .collect();
                Ok(Scalar::Exact(self.evaluate_exact(&vals)?))
            }
            Some(prec) => {
                let vals: Vec<Complex> = pt.coords.iter().map(|c| c.to_complex(prec)).collect();
                Ok(Scalar::Approx(self.evaluate_complex(&vals, prec)?))
            }
        }
    }

    /// Floating evaluation together with an error estimate obtained by
    /// repeating the evaluation at twice the working precision.
    pub fn evaluate_with_error(&self, pt: &Point) -> Result<(Complex, Float)> {
        let prec = pt.precision().unwrap_or(crate::numeric::DEFAULT_PRECISION_BITS);
        let lo: Vec<Complex> = pt.coords.iter().map(|c| c.to_complex(prec)).collect();
        let hi: Vec<Complex> = pt.coords.iter().map(|c| c.to_complex(2 * prec)).collect();
        let v_lo = self.evaluate_complex(&lo, prec)?;
        let v_hi = self.evaluate_complex(&hi, 2 * prec)?;
        let err = (&v_lo.with_precision(2 * prec) - &v_hi).abs();
        Ok((v_lo, err))
    }

    /// Coefficients with respect to variable `i`: entry `k` multiplies `x_i^k`.
    pub fn coefficients_in(&self, i: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(i) as usize;
        let mut out = vec![MultiPoly::zero(&self.vars); d + 1];
        if self.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            let k = m.0[i] as usize;
            let mut m2 = m.clone();
            m2.0[i] = 0;
            out[k].terms.insert(m2, c.clone());
        }
        out
    }

    pub fn from_coefficients_in(vars: &VarList, i: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            let shift = Monomial({
                let mut e = vec![0; vars.len()];
                e[i] = k as u32;
                e
            });
            for (m, v) in &c.terms {
                out.add_term(m.mul(&shift), v.clone());
            }
        }
        out
    }

    /// Leading coefficient with respect to variable `i`.
    pub fn leading_coefficient_in(&self, i: usize) -> MultiPoly {
        self.coefficients_in(i).pop().unwrap_or_else(|| MultiPoly::zero(&self.vars))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        self.check_ring(d);
        let (dm, dc) = d.leading_term()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quo = MultiPoly::zero(&self.vars);
        while let Some((rm, rc)) = rem.leading_term() {
            if !dm.divides(rm) {
                return None;
            }
            let m = rm.div(&dm);
            let c = rc / &dc;
            let t = MultiPoly::monomial(&self.vars, m, c);
            rem = &rem - &(&t * d);
            quo = &quo + &t;
        }
        Some(quo)
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Monomial {
        let n = self.nvars();
        let mut mins: Option<Vec<u32>> = None;
        for m in self.terms.keys() {
            mins = Some(match mins {
                None => m.0.clone(),
                Some(v) => v.iter().zip(&m.0).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        Monomial(mins.unwrap_or_else(|| vec![0; n]))
    }

    pub fn strip_monomial_content(&self) -> MultiPoly {
        let g = self.monomial_content();
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.div(&g), c.clone())).collect(),
        }
    }

    /// Rational multiple with coprime integer coefficients and positive
    /// leading coefficient.
    pub fn primitive_integer(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm = UBig::ONE;
        for c in self.terms.values() {
            let d = c.denominator();
            let g = (&lcm).gcd(d);
            lcm = &lcm * d / g;
        }
        let scale_up = Rational::from(IBig::from(lcm));
        let mut g = UBig::ZERO;
        for c in self.terms.values() {
            let v = (c * &scale_up).numerator().unsigned_abs();
            g = (&g).gcd(&v);
        }
        let mut factor = scale_up / Rational::from(IBig::from(g));
        if self.leading_term().map(|(_, c)| c.sign()) == Some(Sign::Negative) {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            Some((_, c)) => {
                let inv = Rational::ONE / c;
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Max absolute coefficient as a float.
    pub fn coefficient_scale(&self, prec: usize) -> Float {
        let mut best = Rational::ZERO;
        for c in self.terms.values() {
            let a = if c.sign() == Sign::Negative { -c.clone() } else { c.clone() };
            if a > best {
                best = a;
            }
        }
        float_from_rational(&best, prec)
    }
}

use dashu_base::UnsignedAbs;

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_ring(rhs);
        let mut out = MultiPoly::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $method:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &VarList, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(vars.name(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.denominator().is_one() {
        write!(f, "{}", c.numerator())
    } else {
        write!(f, "{}/{}", c.numerator(), c.denominator())
    }
}

/// Renders in the input grammar, so `parse_polynomial(&p.to_string(), vars)`
/// reproduces `p`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let negative = c.sign() == Sign::Negative;
            let abs = if negative { -c.clone() } else { c.clone() };
            if k == 0 {
                if m.is_one() {
                    write_rational(f, c)?;
                } else if negative || !abs.is_one() {
                    write_rational(f, c)?;
                    f.write_str("*")?;
                    write_monomial(f, &self.vars, m)?;
                } else {
                    write_monomial(f, &self.vars, m)?;
                }
                continue;
            }
            f.write_str(if negative { " - " } else { " + " })?;
            if m.is_one() {
                write_rational(f, &abs)?;
            } else {
                if !abs.is_one() {
                    write_rational(f, &abs)?;
                    f.write_str("*")?;
                }
                write_monomial(f, &self.vars, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self, self.vars)
    }
}
