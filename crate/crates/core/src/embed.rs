//! Preprocessing transforms and the rational-diagonal embedding.
//!
//! Polynomials here always carry the series unknown `Y` as variable 0; the
//! remaining variables are the series variables. The same `Y` becomes the
//! extra variable of the embedded rational function.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::numeric::{rational_to_string, Rational};
use crate::poly::{gcd, squarefree_part_in, MultiPoly, VarList};
use crate::series::{
    branch_expand, branch_expand_boxed, elementary_diagonal, rational_expand_boxed,
    TruncatedSeries,
};

/// Affine map `r -> matrix * r + offset` from original coefficient indices
/// to current ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexMap {
    pub matrix: Vec<Vec<i64>>,
    pub offset: Vec<i64>,
}

impl IndexMap {
    pub fn identity(d: usize) -> Self {
        let matrix = (0..d)
            .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
            .collect();
        IndexMap {
            matrix,
            offset: vec![0; d],
        }
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }

    pub fn apply(&self, r: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, o)| row.iter().zip(r).map(|(a, b)| a * b).sum::<i64>() + o)
            .collect()
    }

    /// Linear part applied to a rational vector (used for directions).
    pub fn apply_linear(&self, r: &[Rational]) -> Vec<Rational> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(r)
                    .fold(Rational::ZERO, |acc, (a, b)| acc + Rational::from(*a) * b)
            })
            .collect()
    }

    /// `next ∘ self`: first this map, then `next`.
    pub fn then(&self, next: &IndexMap) -> IndexMap {
        assert_eq!(next.cols(), self.rows(), "index map dimensions");
        let matrix = next
            .matrix
            .iter()
            .map(|row| {
                (0..self.cols())
                    .map(|j| row.iter().zip(&self.matrix).map(|(a, m)| a * m[j]).sum())
                    .collect()
            })
            .collect();
        let offset = next
            .apply(&self.offset)
            .into_iter()
            .collect();
        IndexMap { matrix, offset }
    }

    /// Prepend a row equal to row `i` (the embedding variable tracks the pivot).
    pub fn with_leading_copy(&self, i: usize) -> IndexMap {
        let mut matrix = vec![self.matrix[i].clone()];
        matrix.extend(self.matrix.iter().cloned());
        let mut offset = vec![self.offset[i]];
        offset.extend(self.offset.iter().copied());
        IndexMap { matrix, offset }
    }
}

/// One preprocessing step, recorded by variable name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PreprocStep {
    /// Replace `f` by `f - f0`.
    AdditiveShift { f0: MultiPoly },
    /// Replace `source` by `carrier * source`.
    MonomialSub { source: String, carrier: String },
    /// Replace `f` by `var * f`.
    MultiplicativeShift { var: String },
}

impl PreprocStep {
    /// Index map of this step alone, in the series ring `xs`.
    pub fn index_map(&self, xs: &VarList) -> Result<IndexMap> {
        let mut m = IndexMap::identity(xs.len());
        match self {
            PreprocStep::AdditiveShift { .. } => {}
            PreprocStep::MonomialSub { source, carrier } => {
                let (s, c) = (xs.require(source)?, xs.require(carrier)?);
                m.matrix[c][s] += 1;
            }
            PreprocStep::MultiplicativeShift { var } => {
                m.offset[xs.require(var)?] += 1;
            }
        }
        Ok(m)
    }
}

impl fmt::Display for PreprocStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PreprocStep::AdditiveShift { f0 } => write!(f, "additive shift by {f0}"),
            PreprocStep::MonomialSub { source, carrier } => {
                write!(f, "substitute {source} -> {carrier}*{source}")
            }
            PreprocStep::MultiplicativeShift { var } => write!(f, "multiply by {var}"),
        }
    }
}

/// `F = G/H` whose elementary diagonal in (`Y`, pivot) is the preprocessed
/// series.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingResult {
    pub g: MultiPoly,
    pub h: MultiPoly,
    pub pivot: String,
    pub multiplicity: u32,
    pub trail: Vec<PreprocStep>,
    /// Rows: `Y` followed by the series variables; columns: original variables.
    pub map: IndexMap,
    pub warnings: Vec<String>,
}

impl EmbeddingResult {
    pub fn vars(&self) -> &VarList {
        self.g.vars()
    }

    pub fn pivot_index(&self) -> usize {
        self.vars().index_of(&self.pivot).expect("pivot in ring")
    }
}

fn require_series_var(p: &MultiPoly, name: &str) -> Result<usize> {
    let i = p.vars().require(name)?;
    if i == 0 {
        return Err(Error::InvalidArgument(format!(
            "`{name}` is the series unknown, not a series variable"
        )));
    }
    Ok(i)
}

/// `dP/dY` does not vanish at the origin.
pub fn check_h2(p: &MultiPoly) -> bool {
    let mut e = vec![0; p.nvars()];
    e[0] = 1;
    !p.coeff(&e).is_zero()
}

/// The origin branch vanishes identically once variable `v` is set to 0.
pub fn check_h1(p: &MultiPoly, v: usize) -> Result<bool> {
    if !check_h2(p) {
        return Err(Error::DegenerateBranch);
    }
    if v == 0 || v >= p.nvars() {
        return Err(Error::InvalidArgument("H1 needs a series variable".into()));
    }
    Ok(p.terms().all(|(m, _)| m.0[0] > 0 || m.0[v] > 0))
}

/// Annihilator of `f - f0`: `P(Y + f0, x)`.
pub fn additive_shift(p: &MultiPoly, f0: &MultiPoly) -> Result<MultiPoly> {
    if f0.depends_on(0) {
        return Err(Error::InvalidArgument(
            "shift polynomial must not involve the series unknown".into(),
        ));
    }
    let y = MultiPoly::var(p.vars(), 0);
    let shifted = p.substitute_indexed(&[(0, &y + f0)]);
    if f0.constant_term().is_zero() {
        debug_assert_eq!(check_h2(p), check_h2(&shifted));
    }
    Ok(shifted)
}

/// `source -> carrier * source`, with the index map of the step.
pub fn monomial_substitution(
    p: &MultiPoly,
    source: &str,
    carrier: &str,
) -> Result<(MultiPoly, IndexMap)> {
    let s = require_series_var(p, source)?;
    let c = require_series_var(p, carrier)?;
    if s == c {
        return Err(Error::InvalidArgument("source and carrier must differ".into()));
    }
    let image = &MultiPoly::var(p.vars(), c) * &MultiPoly::var(p.vars(), s);
    let q = p.substitute_indexed(&[(s, image)]);
    let step = PreprocStep::MonomialSub {
        source: source.into(),
        carrier: carrier.into(),
    };
    Ok((q, step.index_map(&p.vars().without(0)?)?))
}

/// Origin branch when `f(0) = origin` (not necessarily zero).
pub fn origin_branch(p: &MultiPoly, origin: &Rational, order: u32) -> Result<TruncatedSeries> {
    let caps = vec![order; p.nvars().saturating_sub(1)];
    origin_branch_boxed(p, origin, order, &caps)
}

pub fn origin_branch_boxed(
    p: &MultiPoly,
    origin: &Rational,
    order: u32,
    caps: &[u32],
) -> Result<TruncatedSeries> {
    if origin.is_zero() {
        return branch_expand_boxed(p, order, caps);
    }
    let c = MultiPoly::constant(p.vars(), origin.clone());
    let shifted = additive_shift(p, &c)?;
    let mut s = branch_expand_boxed(&shifted, order, caps)?;
    let zero = vec![0; caps.len()];
    s.set_coeff(&zero, origin.clone())?;
    Ok(s)
}

/// Annihilator of `v * f`, where `f` is the branch with `f(0) = origin`:
/// `v^deg_Y(P) * P(Y/v, x)` with content and repeated factors removed.
/// The result is checked to vanish on `v * f`.
pub fn multiplicative_shift(p: &MultiPoly, var: &str, origin: &Rational) -> Result<MultiPoly> {
    let v = require_series_var(p, var)?;
    let d = p.degree_in(0);
    let raw = MultiPoly::from_terms(
        p.vars(),
        p.terms().map(|(m, c)| {
            let mut e = m.0.clone();
            e[v] += d - m.0[0];
            (e, c.clone())
        }),
    );
    let q = squarefree_part_in(&raw, 0);

    // Compare against the branch itself.
    let order = 2 * q.total_degree().max(p.total_degree()) + 2;
    let f = origin_branch(p, origin, order)?;
    let xs = p.vars().without(0)?;
    let mut vf_poly = f.to_poly();
    vf_poly = &vf_poly * &MultiPoly::var(&xs, v - 1);
    let vf = TruncatedSeries::from_poly(&vf_poly, order);
    let mut acc = TruncatedSeries::zero(&xs, order);
    for c in q.coefficients_in(0).iter().rev() {
        let c = TruncatedSeries::from_poly(&c.to_ring(&xs)?, order);
        acc = acc.mul(&vf).add(&c);
    }
    if !acc.is_zero() {
        return Err(Error::BranchSelection(format!(
            "{q} does not annihilate {var}*f through degree {order}"
        )));
    }
    Ok(q)
}

/// Embed a preprocessed polynomial whose branch satisfies H1 for `pivot`.
pub fn safonov_embed(p: &MultiPoly, pivot: &str, k: u32) -> Result<EmbeddingResult> {
    let d = p.nvars() - 1;
    embed_with_history(p, pivot, k, Vec::new(), IndexMap::identity(d))
}

/// As [`safonov_embed`], carrying the preprocessing trail and its index map
/// (series variables of `p` in terms of the original ones).
pub fn embed_with_history(
    p: &MultiPoly,
    pivot: &str,
    k: u32,
    trail: Vec<PreprocStep>,
    map: IndexMap,
) -> Result<EmbeddingResult> {
    if k == 0 {
        return Err(Error::InvalidArgument("multiplicity must be positive".into()));
    }
    let pv = require_series_var(p, pivot)?;
    if !check_h1(p, pv)? {
        return Err(Error::H1Failure(pivot.to_string()));
    }
    let vars = p.vars();
    let y = MultiPoly::var(vars, 0);
    let yx = &y * &MultiPoly::var(vars, pv);
    let sub = |q: &MultiPoly| q.substitute_indexed(&[(pv, yx.clone())]);
    let g = &(&y * &y) * &sub(&p.derivative(0));
    let h = sub(p).scale(&Rational::from(k));

    let common = gcd(&g, &h);
    let (g, h) = if common.is_constant() {
        (g, h)
    } else {
        (g.div_exact(&common).expect("gcd divides"), h.div_exact(&common).expect("gcd divides"))
    };
    let h0 = h.constant_term();
    if h0.is_zero() {
        return Err(Error::InvalidEmbedding(format!(
            "denominator {h} vanishes at the origin after reduction"
        )));
    }
    let inv = Rational::ONE / h0;
    let mut warnings = Vec::new();
    if k > 1 {
        warnings.push(format!("unverified multiplicity k = {k}: branch separation is not performed"));
    }
    Ok(EmbeddingResult {
        g: g.scale(&inv),
        h: h.scale(&inv),
        pivot: pivot.to_string(),
        multiplicity: k,
        trail,
        map: map.with_leading_copy(pv - 1),
        warnings,
    })
}

/// The (`Y`, pivot) diagonal of `G/H` equals the branch of `p` through
/// total degree `order`.
pub fn verify_embedding(e: &EmbeddingResult, p: &MultiPoly, order: u32) -> Result<bool> {
    if e.vars() != p.vars() {
        return Err(Error::InvalidArgument("embedding and polynomial rings differ".into()));
    }
    let caps = vec![2 * order; e.vars().len()];
    let full = rational_expand_boxed(&e.g, &e.h, 2 * order, &caps)?;
    let diag = elementary_diagonal(&full, 0, e.pivot_index())?;
    let branch = branch_expand(p, order)?;
    Ok(diag.to_poly() == branch.to_poly())
}

/// End-to-end check of the index map: for every original exponent `r` with
/// `|r| <= order`, `[x^r] f` (corrected for additive shifts) equals the
/// coefficient of `G/H` at `map(r)`.
pub fn verify_chain(
    original: &MultiPoly,
    origin: &Rational,
    e: &EmbeddingResult,
    order: u32,
) -> Result<bool> {
    let f = origin_branch(original, origin, order)?;
    let xs = original.vars().without(0)?;
    let d = xs.len();
    let pre = IndexMap {
        matrix: e.map.matrix[1..].to_vec(),
        offset: e.map.offset[1..].to_vec(),
    };

    // Every original exponent up to `order`, and its image.
    let mut region: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut expected: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
    for r in exponents_up_to(d, order) {
        let s = pre.apply(&r);
        region.insert(s.clone());
        let ru: Vec<u32> = r.iter().map(|&x| x as u32).collect();
        let c = f.coeff(&ru);
        if !c.is_zero() {
            expected.insert(s, c);
        }
    }

    // Subtract each additive shift, pushed through the later steps.
    for (i, step) in e.trail.iter().enumerate() {
        if let PreprocStep::AdditiveShift { f0 } = step {
            let mut later = IndexMap::identity(d);
            for s in &e.trail[i + 1..] {
                later = later.then(&s.index_map(&xs)?);
            }
            for (m, c) in f0.terms() {
                let s = later.apply(&m.0[1..].iter().map(|&x| x as i64).collect::<Vec<_>>());
                if region.contains(&s) {
                    let slot = expected.entry(s).or_insert(Rational::ZERO);
                    *slot = &*slot - c;
                }
            }
        }
    }

    // Expand G/H over the box covering every image.
    let pv = e.pivot_index();
    let mut caps = vec![0u32; d + 1];
    let mut top = 0u32;
    for s in &region {
        if s.iter().any(|&x| x < 0) {
            return Err(Error::InvalidEmbedding("index map leaves the orthant".into()));
        }
        let full: Vec<u32> = core::iter::once(s[pv - 1] as u32)
            .chain(s.iter().map(|&x| x as u32))
            .collect();
        for (c, x) in caps.iter_mut().zip(&full) {
            *c = (*c).max(*x);
        }
        top = top.max(full.iter().sum());
    }
    let series = rational_expand_boxed(&e.g, &e.h, top, &caps)?;
    for s in &region {
        let full: Vec<u32> = core::iter::once(s[pv - 1] as u32)
            .chain(s.iter().map(|&x| x as u32))
            .collect();
        let want = expected.get(s).cloned().unwrap_or(Rational::ZERO);
        if series.coeff(&full) != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All exponent vectors of length `d` with total degree at most `order`.
fn exponents_up_to(d: usize, order: u32) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        let mut next = Vec::new();
        for prefix in &out {
            let used: i64 = prefix.iter().sum();
            for x in 0..=(order as i64 - used) {
                let mut e = prefix.clone();
                e.push(x);
                next.push(e);
            }
        }
        out = next;
    }
    out
}

/// Human-readable trail, one line per step.
pub fn describe_trail(trail: &[PreprocStep]) -> Vec<String> {
    trail.iter().map(|s| s.to_string()).collect()
}

/// Degree-`<= m` truncation of a series as a polynomial in `ring` (which
/// has `Y` at index 0).
pub fn truncation_poly(s: &TruncatedSeries, m: u32, ring: &VarList) -> Result<MultiPoly> {
    let low = s.truncate(m).to_poly();
    low.to_ring(ring)
}

pub fn constant_shift(ring: &VarList, c: &Rational) -> PreprocStep {
    PreprocStep::AdditiveShift {
        f0: MultiPoly::constant(ring, c.clone()),
    }
}

pub fn origin_label(c: &Rational) -> String {
    rational_to_string(c)
}
