//! Exact truncated power series.
//!
//! Storage is dense over a box `[0, cap_0] × … × [0, cap_{d-1}]` with the
//! extra total-degree bound `order`. By default every cap equals `order`
//! (pure total-degree truncation); tighter caps are an optimization for
//! extracting a single far-out coefficient, and remain an ideal, so products
//! and Newton steps stay exact on every retained slot.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use dashu_base::Gcd;
use dashu_int::{IBig, UBig};

use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::poly::{MultiPoly, VarList};

#[derive(Clone, PartialEq)]
pub struct TruncatedSeries {
    vars: VarList,
    order: u32,
    caps: Vec<u32>,
    strides: Vec<usize>,
    coeffs: Vec<Rational>,
}

fn strides_for(caps: &[u32]) -> (Vec<usize>, usize) {
    let mut strides = vec![0; caps.len()];
    let mut size = 1usize;
    for i in (0..caps.len()).rev() {
        strides[i] = size;
        size *= caps[i] as usize + 1;
    }
    (strides, size)
}

impl TruncatedSeries {
    pub fn zero(vars: &VarList, order: u32) -> Self {
        TruncatedSeries::zero_boxed(vars, order, &vec![order; vars.len()])
    }

    /// Zero series with per-variable caps. Series sharing `vars` and `caps`
    /// can be combined regardless of their orders.
    pub fn zero_boxed(vars: &VarList, order: u32, caps: &[u32]) -> Self {
        assert_eq!(caps.len(), vars.len(), "cap vector length mismatch");
        let (strides, size) = strides_for(caps);
        TruncatedSeries {
            vars: vars.clone(),
            order,
            caps: caps.to_vec(),
            strides,
            coeffs: vec![Rational::ZERO; size],
        }
    }

    fn empty_like(&self, order: u32) -> Self {
        TruncatedSeries::zero_boxed(&self.vars, order, &self.caps)
    }

    /// Truncation of a polynomial.
    pub fn from_poly(p: &MultiPoly, order: u32) -> Self {
        let caps = vec![order; p.nvars()];
        TruncatedSeries::from_poly_boxed(p, order, &caps)
    }

    pub fn from_poly_boxed(p: &MultiPoly, order: u32, caps: &[u32]) -> Self {
        let mut s = TruncatedSeries::zero_boxed(p.vars(), order, caps);
        for (m, c) in p.terms() {
            if let Some(i) = s.index(&m.0) {
                s.coeffs[i] = c.clone();
            }
        }
        s
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    fn index(&self, e: &[u32]) -> Option<usize> {
        if e.len() != self.caps.len() {
            return None;
        }
        let mut total = 0u32;
        let mut idx = 0usize;
        for (k, &x) in e.iter().enumerate() {
            if x > self.caps[k] {
                return None;
            }
            total += x;
            idx += x as usize * self.strides[k];
        }
        (total <= self.order).then_some(idx)
    }

    fn exps_of(&self, mut idx: usize) -> Vec<u32> {
        let mut e = vec![0; self.caps.len()];
        for k in 0..self.caps.len() {
            e[k] = (idx / self.strides[k]) as u32;
            idx %= self.strides[k];
        }
        e
    }

    /// Coefficient of `x^e`; zero outside the retained region.
    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.index(e)
            .map(|i| self.coeffs[i].clone())
            .unwrap_or(Rational::ZERO)
    }

    /// True when `e` lies inside the retained region.
    pub fn contains(&self, e: &[u32]) -> bool {
        self.index(e).is_some()
    }

    pub fn set_coeff(&mut self, e: &[u32], c: Rational) -> Result<()> {
        match self.index(e) {
            Some(i) => {
                self.coeffs[i] = c;
                Ok(())
            }
            None => Err(Error::InvalidArgument(format!(
                "exponent {e:?} outside truncation"
            ))),
        }
    }

    /// Nonzero terms in storage order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.exps_of(i), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Polynomial with the same nonzero terms.
    pub fn to_poly(&self) -> MultiPoly {
        MultiPoly::from_terms(&self.vars, self.terms().map(|(e, c)| (e, c.clone())))
    }

    /// Drop everything above total degree `order`.
    pub fn truncate(&self, order: u32) -> Self {
        if order >= self.order {
            return self.clone();
        }
        let mut out = self.empty_like(order);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.exps_of(i);
            if let Some(j) = out.index(&e) {
                out.coeffs[j] = c.clone();
            }
        }
        out
    }

    /// Raise or lower the truncation order. Raising asserts nothing about
    /// the new slots: they are simply zero.
    pub fn with_order(&self, order: u32) -> Self {
        if order <= self.order {
            return self.truncate(order);
        }
        let mut out = self.clone();
        out.order = order;
        out
    }

    fn check_shape(&self, other: &Self) {
        assert!(
            self.vars == other.vars && self.caps == other.caps,
            "series shapes differ"
        );
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        self.check_shape(other);
        let order = self.order.min(other.order);
        let a = self.truncate(order);
        let b = other.truncate(order);
        let mut out = a.clone();
        for (i, c) in b.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out.coeffs[i] = if negate { &a.coeffs[i] - c } else { &a.coeffs[i] + c };
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        for v in out.coeffs.iter_mut() {
            if !v.is_zero() {
                *v = &*v * c;
            }
        }
        out
    }

    /// Nonzero entries as integers over a common denominator.
    fn integer_entries(&self) -> (Vec<(usize, IBig)>, UBig) {
        let mut lcm = UBig::ONE;
        for c in &self.coeffs {
            if c.is_zero() || c.denominator().is_one() {
                continue;
            }
            let d = c.denominator();
            let g = (&lcm).gcd(d);
            lcm = &lcm / g * d;
        }
        let entries = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let scale = &lcm / c.denominator();
                (i, c.numerator() * IBig::from(scale))
            })
            .collect();
        (entries, lcm)
    }

    /// Product truncated to `order` (at most the smaller input order).
    pub fn mul_trunc(&self, other: &Self, order: u32) -> Self {
        self.check_shape(other);
        let order = order.min(self.order).min(other.order);
        let mut out = self.empty_like(order);
        let d = self.caps.len();
        let (a, da) = self.integer_entries();
        let (b, db) = other.integer_entries();
        let flat = |s: &Self, entries: &[(usize, IBig)]| -> (Vec<u32>, Vec<u32>) {
            let mut ex = Vec::with_capacity(entries.len() * d);
            let mut tot = Vec::with_capacity(entries.len());
            for (i, _) in entries {
                let e = s.exps_of(*i);
                tot.push(e.iter().sum());
                ex.extend(e);
            }
            (ex, tot)
        };
        let (ea, ta) = flat(self, &a);
        let (eb, tb) = flat(other, &b);
        // Visit b in order of total degree so the inner loop can stop early.
        let mut b_order: Vec<usize> = (0..b.len()).collect();
        b_order.sort_by_key(|&k| tb[k]);

        let mut acc: Vec<IBig> = vec![IBig::ZERO; out.coeffs.len()];
        for (ka, (ia, va)) in a.iter().enumerate() {
            if ta[ka] > order {
                continue;
            }
            let xa = &ea[ka * d..(ka + 1) * d];
            let room = order - ta[ka];
            'inner: for &kb in &b_order {
                if tb[kb] > room {
                    break;
                }
                let xb = &eb[kb * d..(kb + 1) * d];
                for k in 0..d {
                    if xa[k] + xb[k] > out.caps[k] {
                        continue 'inner;
                    }
                }
                let (ib, vb) = &b[kb];
                // Shared caps make box indices additive.
                acc[ia + ib] += va * vb;
            }
        }
        let den = IBig::from(da * db);
        let den = UBig::try_from(den).expect("positive");
        for (slot, v) in out.coeffs.iter_mut().zip(acc) {
            if !v.is_zero() {
                *slot = Rational::from_parts(v, den.clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_trunc(other, self.order.min(other.order))
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeff(&vec![0; self.caps.len()]);
        if c0.is_zero() {
            return Err(Error::InvalidArgument("series has zero constant term".into()));
        }
        let mut g = self.empty_like(0);
        g.coeffs[0] = Rational::ONE / c0;
        let mut prec = 1u32;
        while prec <= self.order {
            let next = (2 * prec).min(self.order + 1);
            let g_big = g.with_order(next - 1);
            let fg = self.mul_trunc(&g_big, next - 1);
            let two_minus = self.constant_like(next - 1, Rational::from(2)).sub(&fg);
            g = g_big.mul_trunc(&two_minus, next - 1);
            prec = next;
        }
        Ok(g)
    }

    fn constant_like(&self, order: u32, c: Rational) -> Self {
        let mut s = self.empty_like(order);
        s.coeffs[0] = c;
        s
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(deg {}) in {:?}", self.to_poly(), self.order + 1, self.vars)
    }
}

/// Ring of the series unknowns: `P`'s variables minus the leading `Y`.
fn series_ring(p: &MultiPoly) -> Result<VarList> {
    if p.nvars() < 2 {
        return Err(Error::InvalidArgument(
            "need at least one variable besides the series unknown".into(),
        ));
    }
    p.vars().without(0)
}

/// Y-coefficients of `p`, each moved into the series ring and truncated.
fn y_coefficients(p: &MultiPoly, ring: &VarList, order: u32, caps: &[u32]) -> Vec<TruncatedSeries> {
    p.coefficients_in(0)
        .iter()
        .map(|c| {
            let moved = c.to_ring(ring).expect("Y-free coefficient");
            TruncatedSeries::from_poly_boxed(&moved, order, caps)
        })
        .collect()
}

/// `sum_k coeffs[k] * f^k` by Horner's rule.
fn horner(coeffs: &[TruncatedSeries], f: &TruncatedSeries, order: u32) -> TruncatedSeries {
    let mut acc = coeffs.last().expect("nonempty").truncate(order);
    for c in coeffs.iter().rev().skip(1) {
        acc = acc.mul_trunc(f, order).add(&c.truncate(order));
    }
    acc
}

fn derivative_coeffs(coeffs: &[TruncatedSeries]) -> Vec<TruncatedSeries> {
    if coeffs.len() <= 1 {
        return vec![coeffs[0].scale(&Rational::ZERO)];
    }
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale(&Rational::from(k as u64)))
        .collect()
}

/// Hypothesis H2 at the origin, returning `P_Y(0, 0)`.
fn branch_preconditions(p: &MultiPoly) -> Result<Rational> {
    let p0 = p.constant_term();
    if !p0.is_zero() {
        return Err(Error::NoBranchThroughOrigin(crate::numeric::rational_to_string(&p0)));
    }
    let mut e = vec![0; p.nvars()];
    e[0] = 1;
    let c = p.coeff(&e);
    if c.is_zero() {
        return Err(Error::DegenerateBranch);
    }
    Ok(c)
}

/// All Newton iterates for the origin branch of `P(Y, x) = 0`; iterate `i`
/// is exact through total degree `2^i - 1`. The last one is the answer.
pub fn branch_expand_iterates(
    p: &MultiPoly,
    order: u32,
    caps: &[u32],
) -> Result<Vec<TruncatedSeries>> {
    let c = branch_preconditions(p)?;
    let ring = series_ring(p)?;
    let pc = y_coefficients(p, &ring, order, caps);
    let dpc = derivative_coeffs(&pc);

    let mut f = TruncatedSeries::zero_boxed(&ring, 0, caps);
    let mut g = f.clone();
    g.coeffs[0] = Rational::ONE / c;
    let mut iterates = vec![f.clone()];
    let mut prec = 1u32;
    while prec <= order {
        let next = (2 * prec).min(order + 1);
        let o = next - 1;
        let f_o = f.with_order(o);
        let g_o = g.with_order(o);
        let residual = horner(&pc, &f_o, o);
        f = f_o.sub(&g_o.mul_trunc(&residual, o));
        if next <= order {
            let deriv = horner(&dpc, &f, o);
            let two = {
                let mut t = f.empty_like(o);
                t.coeffs[0] = Rational::from(2);
                t
            };
            g = g_o.mul_trunc(&two.sub(&deriv.mul_trunc(&g_o, o)), o);
        }
        iterates.push(f.clone());
        prec = next;
    }
    Ok(iterates)
}

/// The origin branch `f` of `P(Y, x) = 0` (variable 0 of `P` is `Y`),
/// truncated at total degree `order`. The result lives in the ring of the
/// remaining variables.
pub fn branch_expand(p: &MultiPoly, order: u32) -> Result<TruncatedSeries> {
    let caps = vec![order; p.nvars().saturating_sub(1)];
    branch_expand_boxed(p, order, &caps)
}

/// As [`branch_expand`], keeping only exponents within `caps`.
pub fn branch_expand_boxed(p: &MultiPoly, order: u32, caps: &[u32]) -> Result<TruncatedSeries> {
    if caps.len() + 1 != p.nvars() {
        return Err(Error::DimensionMismatch {
            expected: p.nvars().saturating_sub(1),
            found: caps.len(),
        });
    }
    let mut it = branch_expand_iterates(p, order, caps)?;
    Ok(it.pop().expect("at least one iterate"))
}

/// Series of `G/H` up to total degree `order`.
pub fn rational_expand(g: &MultiPoly, h: &MultiPoly, order: u32) -> Result<TruncatedSeries> {
    let caps = vec![order; g.nvars()];
    rational_expand_boxed(g, h, order, &caps)
}

pub fn rational_expand_boxed(
    g: &MultiPoly,
    h: &MultiPoly,
    order: u32,
    caps: &[u32],
) -> Result<TruncatedSeries> {
    if g.vars() != h.vars() {
        return Err(Error::InvalidArgument("numerator and denominator rings differ".into()));
    }
    let h0 = h.constant_term();
    if h0.is_zero() {
        return Err(Error::SingularDenominator);
    }
    let inv = Rational::ONE / &h0;
    let mut out = TruncatedSeries::from_poly_boxed(g, order, caps);
    let h_terms: Vec<(Vec<u32>, Rational)> = h
        .terms()
        .filter(|(m, _)| !m.is_one())
        .map(|(m, c)| (m.0.clone(), c.clone()))
        .collect();
    // Box offsets of each H exponent, to index c[e - m] without decoding.
    let offsets: Vec<usize> = h_terms
        .iter()
        .map(|(m, _)| m.iter().zip(&out.strides).map(|(&x, &s)| x as usize * s).sum())
        .collect();
    let d = out.caps.len();
    let mut e = vec![0u32; d];
    for idx in 0..out.coeffs.len() {
        if idx > 0 {
            // Advance the mixed-radix counter.
            let mut k = d;
            while k > 0 {
                k -= 1;
                if e[k] < out.caps[k] {
                    e[k] += 1;
                    break;
                }
                e[k] = 0;
            }
        }
        let total: u32 = e.iter().sum();
        if total > order {
            continue;
        }
        let mut acc = core::mem::replace(&mut out.coeffs[idx], Rational::ZERO);
        for ((m, hc), off) in h_terms.iter().zip(&offsets) {
            if m.iter().zip(&e).all(|(a, b)| a <= b) {
                let prev = &out.coeffs[idx - off];
                if !prev.is_zero() {
                    acc -= hc * prev;
                }
            }
        }
        out.coeffs[idx] = if acc.is_zero() { acc } else { acc * &inv };
    }
    Ok(out)
}

/// Terms whose exponents in `v1` and `v2` agree, with the two merged into
/// `v2` (which keeps its name and position). Complete through order
/// `floor(order / 2)`.
pub fn elementary_diagonal(s: &TruncatedSeries, v1: usize, v2: usize) -> Result<TruncatedSeries> {
    if v1 == v2 {
        return Err(Error::InvalidArgument("diagonal needs two distinct variables".into()));
    }
    let d = s.caps.len();
    if v1 >= d || v2 >= d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: v1.max(v2) + 1,
        });
    }
    let vars = s.vars.without(v1)?;
    let order = s.order / 2;
    let caps: Vec<u32> = (0..d)
        .filter(|&k| k != v1)
        .map(|k| {
            let c = if k == v2 { s.caps[v1].min(s.caps[v2]) } else { s.caps[k] };
            c.min(order)
        })
        .collect();
    let mut out = TruncatedSeries::zero_boxed(&vars, order, &caps);
    for (i, c) in s.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = s.exps_of(i);
        if e[v1] != e[v2] {
            continue;
        }
        let merged: Vec<u32> = (0..d).filter(|&k| k != v1).map(|k| e[k]).collect();
        if let Some(j) = out.index(&merged) {
            out.coeffs[j] = c.clone();
        }
    }
    Ok(out)
}

/// Bounded screen for "f restricted to x_j = 0 is a polynomial": expand to
/// order 2D and check nothing appears in degrees (D, 2D]. `D` defaults to
/// `deg_Y(P) * totaldeg(P)`.
pub fn section_is_polynomial(p: &MultiPoly, j: usize, bound: Option<u32>) -> Result<bool> {
    if j == 0 || j >= p.nvars() {
        return Err(Error::InvalidArgument("section variable must be a non-Y variable".into()));
    }
    let d = bound.unwrap_or_else(|| (p.degree_in(0) * p.total_degree()).max(1));
    let restricted = p.specialize(j, &Rational::ZERO);
    let s = branch_expand(&restricted, 2 * d)?;
    let polynomial = s.terms().all(|(e, _)| e.iter().sum::<u32>() <= d);
    Ok(polynomial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational_from_ints;
    use crate::poly::parse_polynomial;

    fn ring(names: &[&str]) -> VarList {
        VarList::new(names.iter().copied()).unwrap()
    }

    fn p(text: &str, names: &[&str]) -> MultiPoly {
        parse_polynomial(text, &ring(names)).unwrap()
    }

    fn ints(s: &TruncatedSeries, n: u32) -> Vec<Rational> {
        (0..=n).map(|k| s.coeff(&[k])).collect()
    }

    fn r(v: i64) -> Rational {
        Rational::from(v)
    }

    #[test]
    fn catalan_branch() {
        let f = branch_expand(&p("Y^2 - Y + x", &["Y", "x"]), 5).unwrap();
        assert_eq!(ints(&f, 5), [0, 1, 1, 2, 5, 14].map(r).to_vec());
        let lin = branch_expand(&p("Y - x", &["Y", "x"]), 6).unwrap();
        assert_eq!(lin.to_poly(), p("x", &["x"]));
    }

    #[test]
    fn branch_errors() {
        assert_eq!(
            branch_expand(&p("Y^3 - x*Y + x^2", &["Y", "x"]), 5),
            Err(Error::DegenerateBranch)
        );
        assert!(matches!(
            branch_expand(&p("x*Y^2 - Y + 1", &["Y", "x"]), 5),
            Err(Error::NoBranchThroughOrigin(_))
        ));
    }

    #[test]
    fn branch_with_rational_linear_coefficient() {
        // Y = x + 2Y^2... scaled: 3Y - 3x - 6Y^2 has P_Y(0) = 3.
        let f = branch_expand(&p("3*Y - 3*x - 6*Y^2", &["Y", "x"]), 6).unwrap();
        let g = branch_expand(&p("Y - x - 2*Y^2", &["Y", "x"]), 6).unwrap();
        assert_eq!(f, g);
        assert_eq!(f.coeff(&[3]), r(8));
    }

    #[test]
    fn geometric_and_embedding_expansions() {
        let v = ["x"];
        let s = rational_expand(&p("1", &v), &p("1 - x", &v), 4).unwrap();
        assert_eq!(ints(&s, 4), [1, 1, 1, 1, 1].map(r).to_vec());
        let w = ["Y", "x"];
        let f2 = rational_expand(&p("Y - 2*Y^2", &w), &p("1 - Y - x", &w), 8).unwrap();
        assert_eq!(f2.coeff(&[1, 1]), r(1));
        assert_eq!(f2.coeff(&[3, 3]), r(2));
        let diag = elementary_diagonal(&f2, 0, 1).unwrap();
        assert_eq!(diag.order(), 4);
        assert_eq!(ints(&diag, 4), [0, 1, 1, 2, 5].map(r).to_vec());
        assert_eq!(
            rational_expand(&p("1", &v), &p("x", &v), 3),
            Err(Error::SingularDenominator)
        );
    }

    #[test]
    fn diagonal_examples() {
        let w = ["x", "y"];
        let all_ones = rational_expand(&p("1", &w), &p("(1 - x)*(1 - y)", &w), 10).unwrap();
        let d = elementary_diagonal(&all_ones, 0, 1).unwrap();
        assert_eq!(ints(&d, 5), [1, 1, 1, 1, 1, 1].map(r).to_vec());
        let off = TruncatedSeries::from_poly(&p("x + x^3*y + y^2", &w), 10);
        assert!(elementary_diagonal(&off, 0, 1).unwrap().is_zero());
    }

    #[test]
    fn products_and_inverse() {
        let w = ["x", "y"];
        let a = TruncatedSeries::from_poly(&p("1/2 + x - 3*y", &w), 6);
        let b = TruncatedSeries::from_poly(&p("2/3 - x*y + y^2", &w), 6);
        assert_eq!(a.mul(&b).to_poly(), p("(1/2 + x - 3*y)*(2/3 - x*y + y^2)", &w));
        let inv = a.inverse().unwrap();
        let one = a.mul(&inv);
        assert_eq!(one.to_poly(), p("1", &w));
        // Boxed product only keeps exponents inside the box.
        let ab = TruncatedSeries::from_poly_boxed(&p("1 + x + y", &w), 4, &[1, 4]);
        let sq = ab.mul(&ab);
        assert_eq!(sq.to_poly(), p("1 + 2*x + 2*y + 2*x*y + y^2", &w));
    }

    #[test]
    fn boxed_branch_matches_full() {
        let v = ["Y", "x", "y"];
        let q = p("x*y^2*(1 + Y)^2 + x*y*(1 + Y)*Y - Y", &v);
        let full = branch_expand(&q, 12).unwrap();
        let boxed = branch_expand_boxed(&q, 12, &[4, 8]).unwrap();
        for (e, c) in boxed.terms() {
            assert_eq!(&full.coeff(&e), c);
        }
        assert_eq!(boxed.coeff(&[4, 6]), full.coeff(&[4, 6]));
        assert!(!full.coeff(&[4, 6]).is_zero());
    }

    #[test]
    fn newton_doubling() {
        let q = p("Y^2 - Y + x", &["Y", "x"]);
        let it = branch_expand_iterates(&q, 40, &[40]).unwrap();
        let last = it.last().unwrap();
        for (i, f) in it.iter().enumerate() {
            let good = (1u32 << i).min(41) - 1;
            for k in 0..=good {
                assert_eq!(f.coeff(&[k]), last.coeff(&[k]), "iterate {i} degree {k}");
            }
        }
    }

    #[test]
    fn section_screen() {
        let asm = p("Y^2 - 2*Y - x^2 + 2*x - y^2 + 2*y", &["Y", "x", "y"]);
        assert!(section_is_polynomial(&asm, 1, None).unwrap());
        let coss = p("x*Y^2 + 2*x*Y + x - Y + z*Y + z", &["Y", "x", "z"]);
        assert!(!section_is_polynomial(&coss, 1, None).unwrap());
        let prod = p("Y - x*y", &["Y", "x", "y"]);
        assert!(section_is_polynomial(&prod, 1, None).unwrap());
        let _ = rational_from_ints(1, 2);
    }
}
