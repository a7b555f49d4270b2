//! Smooth-point saddle-point expansion at a minimal critical point and its
//! restatement in original coefficient indexing.
//!
//! Around `w`, set `z_j = w_j e^{iθ_j}` for every variable but the
//! distinguished one `z_d`, which is solved from `H = 0` as a series
//! `g(θ)`. The coefficient of `z^{nr}` is then
//!
//! ```text
//! w^{-nr} (2π)^{-m} ∫ A(θ) e^{-n φ(θ)} dθ,
//! A = -G / (z_d ∂H/∂z_d),   φ = i Σ r_j θ_j + r_d log(g / w_d),
//! ```
//!
//! and the standard stationary-phase expansion gives
//! `(2πn)^{-m/2} det(φ'')^{-1/2} Σ_k C_k n^{-k}` with
//!
//! ```text
//! C_k = Σ_{l=0}^{2k} (-1)^l / l! · 𝒟^{l+k}(A φ̃^l)(0) / (2^{l+k} (l+k)!),
//! 𝒟 = Σ_{ij} (φ''^{-1})_{ij} ∂_i ∂_j,   φ̃ = φ − (quadratic part).
//! ```
//!
//! Every derivative comes out of exact-order Taylor series in `θ`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::critical::{CriticalPoint, Direction};
use crate::embed::IndexMap;
use crate::error::{Error, Result};
use crate::linalg;
use crate::numeric::{
    approx_log2, float_from_int, float_from_rational, pi, pow_rational, Complex, Float, Rational,
};
use crate::poly::MultiPoly;
use crate::radical::recognize;

// 10^-20 and 10^-15 as powers of two.
const TINY_LOG2: f64 = -66.43;
const DEGENERATE_LOG2: f64 = -49.83;

/// Truncated Taylor series in `θ_1..θ_m` with complex coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalSeries {
    nvars: usize,
    order: u32,
    prec: usize,
    coeffs: BTreeMap<Vec<u32>, Complex>,
}

fn degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl LocalSeries {
    pub fn constant(nvars: usize, order: u32, c: Complex) -> Self {
        let prec = c.precision();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(vec![0; nvars], c);
        }
        LocalSeries { nvars, order, prec, coeffs }
    }

    /// `θ_i`.
    pub fn var(nvars: usize, order: u32, i: usize, prec: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut coeffs = BTreeMap::new();
        if order >= 1 {
            coeffs.insert(e, Complex::one(prec));
        }
        LocalSeries { nvars, order, prec, coeffs }
    }

    /// `e^{iθ_j}`.
    pub fn exp_i(nvars: usize, order: u32, j: usize, prec: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        let mut term = Complex::one(prec);
        let i = Complex::i(prec);
        for k in 0..=order {
            let mut e = vec![0; nvars];
            e[j] = k;
            coeffs.insert(e, term.clone());
            term = &(&term * &i) / &Complex::from_int(i64::from(k) + 1, prec);
        }
        LocalSeries { nvars, order, prec, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeff(&self, e: &[u32]) -> Complex {
        self.coeffs.get(e).cloned().unwrap_or_else(|| Complex::zero(self.prec))
    }

    pub fn constant_term(&self) -> Complex {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Complex)> {
        self.coeffs.iter()
    }

    fn same_shape(&self, coeffs: BTreeMap<Vec<u32>, Complex>) -> Self {
        LocalSeries {
            nvars: self.nvars,
            order: self.order,
            prec: self.prec,
            coeffs,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            let v = match out.get(e) {
                Some(a) => a + c,
                None => c.clone(),
            };
            out.insert(e.clone(), v);
        }
        self.same_shape(out)
    }

    pub fn neg(&self) -> Self {
        self.same_shape(self.coeffs.iter().map(|(e, c)| (e.clone(), -c)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Complex) -> Self {
        self.same_shape(self.coeffs.iter().map(|(e, c)| (e.clone(), c * s)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out: BTreeMap<Vec<u32>, Complex> = BTreeMap::new();
        for (ea, a) in &self.coeffs {
            let da = degree(ea);
            for (eb, b) in &other.coeffs {
                if da + degree(eb) > self.order {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let t = a * b;
                let v = match out.remove(&e) {
                    Some(c) => &c + &t,
                    None => t,
                };
                out.insert(e, v);
            }
        }
        self.same_shape(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LocalSeries::constant(self.nvars, self.order, Complex::one(self.prec));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Terms of total degree at least `k`.
    pub fn tail_from(&self, k: u32) -> Self {
        self.same_shape(
            self.coeffs
                .iter()
                .filter(|(e, _)| degree(e) >= k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        )
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::InvalidArgument("series with zero constant term is not invertible".into()));
        }
        let c0_inv = c0.inv();
        // 1/s = c0^-1 Σ t^k with t = 1 - s/c0 nilpotent.
        let one = LocalSeries::constant(self.nvars, self.order, Complex::one(self.prec));
        let t = one.sub(&self.scale(&c0_inv));
        let mut acc = one.clone();
        let mut power = one;
        for _ in 0..self.order {
            power = power.mul(&t);
            acc = acc.add(&power);
        }
        Ok(acc.scale(&c0_inv))
    }

    /// `log s` for `s(0) = 1`.
    pub fn log1(&self) -> Self {
        let one = LocalSeries::constant(self.nvars, self.order, Complex::one(self.prec));
        let t = self.sub(&one);
        let mut acc = LocalSeries::constant(self.nvars, self.order, Complex::zero(self.prec));
        let mut power = one;
        for k in 1..=self.order {
            power = power.mul(&t);
            let mut c = Complex::one(self.prec).scale(&(float_from_int(1, self.prec) / float_from_int(i64::from(k), self.prec)));
            if k % 2 == 0 {
                c = -c;
            }
            acc = acc.add(&power.scale(&c));
        }
        acc
    }

    /// `∂/∂θ_i`, one order lower.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = BTreeMap::new();
        for (e, c) in &self.coeffs {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.insert(f, c * &Complex::from_int(i64::from(e[i]), self.prec));
        }
        LocalSeries {
            nvars: self.nvars,
            order: self.order.saturating_sub(1),
            prec: self.prec,
            coeffs: out,
        }
    }

    /// `Σ_ij m_ij ∂_i ∂_j`.
    fn apply_operator(&self, m: &linalg::Matrix) -> Self {
        let mut out = LocalSeries {
            nvars: self.nvars,
            order: self.order.saturating_sub(2),
            prec: self.prec,
            coeffs: BTreeMap::new(),
        };
        for (i, row) in m.iter().enumerate() {
            let di = self.derivative(i);
            for (j, mij) in row.iter().enumerate() {
                out = out.add(&di.derivative(j).scale(mij));
            }
        }
        out.order = self.order.saturating_sub(2);
        out
    }
}

/// `p` evaluated at a vector of series.
fn eval_poly(p: &MultiPoly, args: &[LocalSeries]) -> LocalSeries {
    let first = &args[0];
    let prec = first.prec;
    let mut powers: Vec<Vec<LocalSeries>> = Vec::with_capacity(args.len());
    for (i, a) in args.iter().enumerate() {
        let mut row = vec![LocalSeries::constant(first.nvars, first.order, Complex::one(prec))];
        for k in 1..=p.degree_in(i) as usize {
            let next = row[k - 1].mul(a);
            row.push(next);
        }
        powers.push(row);
    }
    let mut acc = LocalSeries::constant(first.nvars, first.order, Complex::zero(prec));
    for (m, c) in p.terms() {
        let mut t = LocalSeries::constant(first.nvars, first.order, Complex::from_rational(c, prec));
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 {
                t = t.mul(&powers[i][e as usize]);
            }
        }
        acc = acc.add(&t);
    }
    acc
}

/// Local parametrization of `{H = 0}` near the critical point.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseData {
    pub distinguished: usize,
    /// Variables parametrized by `θ`, in order.
    pub others: Vec<usize>,
    /// `g(θ)` with `H(z(θ), g(θ)) = 0`.
    pub param_series: LocalSeries,
    pub phase: LocalSeries,
    pub hessian: linalg::Matrix,
    pub hessian_det: Complex,
    pub precision: usize,
}

impl PhaseData {
    pub fn order(&self) -> u32 {
        self.param_series.order()
    }

    /// `z(θ)` with the distinguished slot filled by `g(θ)`.
    fn coordinates(&self, w: &CriticalPoint) -> Vec<LocalSeries> {
        let m = self.others.len();
        let order = self.order();
        let prec = self.precision;
        let mut z = Vec::with_capacity(m + 1);
        let mut k = 0;
        for (j, wj) in w.coords.iter().enumerate() {
            if j == self.distinguished {
                z.push(self.param_series.clone());
            } else {
                z.push(LocalSeries::exp_i(m, order, k, prec).scale(wj));
                k += 1;
            }
        }
        z
    }
}

/// Order of the local series; enough for the first correction term.
pub const PHASE_ORDER: u32 = 6;

/// The variable with the largest `|w_j ∂H/∂z_j(w)|`.
pub fn distinguished_variable(h: &MultiPoly, w: &CriticalPoint) -> Result<usize> {
    let prec = w.precision;
    let mut best = (f64::NEG_INFINITY, 0);
    for j in 0..h.nvars() {
        let v = &h.derivative(j).evaluate_complex(&w.coords, prec)? * &w.coords[j];
        let l = approx_log2(&v.abs());
        if l > best.0 {
            best = (l, j);
        }
    }
    if best.0 < approx_log2(&h.coefficient_scale(prec)) + DEGENERATE_LOG2 {
        return Err(Error::NoDistinguishedVariable);
    }
    Ok(best.1)
}

pub fn phase_data(h: &MultiPoly, w: &CriticalPoint, r: &Direction) -> Result<PhaseData> {
    phase_data_with_order(h, w, r, PHASE_ORDER)
}

pub fn phase_data_with_order(h: &MultiPoly, w: &CriticalPoint, r: &Direction, order: u32) -> Result<PhaseData> {
    let d = h.nvars();
    if w.coords.len() != d || r.embedded.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: if w.coords.len() != d { w.coords.len() } else { r.embedded.len() },
        });
    }
    let order = order.max(2);
    let prec = w.precision;
    let dv = distinguished_variable(h, w)?;
    let others: Vec<usize> = (0..d).filter(|&j| j != dv).collect();
    let m = others.len();

    let mut z: Vec<LocalSeries> = Vec::with_capacity(d);
    let mut k = 0;
    for (j, wj) in w.coords.iter().enumerate() {
        if j == dv {
            z.push(LocalSeries::constant(m, order, wj.clone()));
        } else {
            z.push(LocalSeries::exp_i(m, order, k, prec).scale(wj));
            k += 1;
        }
    }
    // Newton on series: each step doubles the number of correct orders.
    let hd = h.derivative(dv);
    let mut steps = 0;
    while (1u32 << steps) <= order + 1 {
        steps += 1;
    }
    for _ in 0..steps + 1 {
        let f = eval_poly(h, &z);
        let df = eval_poly(&hd, &z);
        let step = f.mul(&df.inverse()?);
        z[dv] = z[dv].sub(&step);
    }
    let g = z[dv].clone();

    let mut phase = LocalSeries::constant(m, order, Complex::zero(prec));
    let i = Complex::i(prec);
    for (k, &j) in others.iter().enumerate() {
        let rj = Complex::from_rational(&r.embedded[j], prec);
        phase = phase.add(&LocalSeries::var(m, order, k, prec).scale(&(&i * &rj)));
    }
    let ratio = g.scale(&w.coords[dv].inv());
    let rd = Complex::from_rational(&r.embedded[dv], prec);
    phase = phase.add(&ratio.log1().scale(&rd));

    for k in 0..m {
        let mut e = vec![0; m];
        e[k] = 1;
        if approx_log2(&phase.coeff(&e).abs()) > TINY_LOG2 {
            return Err(Error::InvalidArgument(
                "phase is not stationary: the point is not critical for this direction".into(),
            ));
        }
    }
    let mut hessian = vec![vec![Complex::zero(prec); m]; m];
    for a in 0..m {
        for b in 0..m {
            let mut e = vec![0; m];
            e[a] += 1;
            e[b] += 1;
            let c = phase.coeff(&e);
            hessian[a][b] = if a == b { &c + &c } else { c };
        }
    }
    let det = linalg::determinant(&hessian, prec);
    if approx_log2(&det.abs()) < DEGENERATE_LOG2 {
        return Err(Error::DegenerateDirection);
    }
    Ok(PhaseData {
        distinguished: dv,
        others,
        param_series: g,
        phase,
        hessian,
        hessian_det: det,
        precision: prec,
    })
}

/// `[z^{nr}] G/H ~ ρ^n n^{-(D-1)/2} Σ_k a_k n^{-k}`, embedded indexing.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticExpansion {
    pub rho: Float,
    pub alpha: Rational,
    /// `a_0, ..., a_depth`.
    pub constants: Vec<Complex>,
    /// Index of the first nonzero constant.
    pub leading: usize,
    pub depth: usize,
    pub precision: usize,
}

impl AsymptoticExpansion {
    /// Real part of the leading nonzero constant.
    pub fn constant(&self) -> Float {
        self.constants[self.leading].re.clone()
    }

    /// `C n^{-α} ρ^n`.
    pub fn predict(&self, n: u64) -> Float {
        predict(&self.constant(), &self.alpha, &self.rho, n, self.precision)
    }
}

pub fn predict(c: &Float, alpha: &Rational, rho: &Float, n: u64, prec: usize) -> Float {
    let nf = float_from_int(n as i64, prec);
    let decay = pow_rational(&nf, &-alpha.clone(), prec);
    let growth = pow_rational(rho, &Rational::from(n), prec);
    c * decay * growth
}

fn factorial(k: u32, prec: usize) -> Float {
    (1..=i64::from(k)).fold(float_from_int(1, prec), |acc, j| acc * float_from_int(j, prec))
}

pub fn expansion_terms(
    g: &MultiPoly,
    h: &MultiPoly,
    pd: &PhaseData,
    w: &CriticalPoint,
    r: &Direction,
    k_max: u32,
) -> Result<AsymptoticExpansion> {
    if k_max > 1 {
        return Err(Error::InvalidArgument("expansion depth is capped at 1".into()));
    }
    if pd.order() < 2 + 2 * k_max {
        return Err(Error::InsufficientOrder);
    }
    let prec = pd.precision;
    let m = pd.others.len();
    let z = pd.coordinates(w);
    let dv = pd.distinguished;

    let amp_den = z[dv].mul(&eval_poly(&h.derivative(dv), &z));
    let amplitude = eval_poly(g, &z).mul(&amp_den.inverse()?).neg();
    let tilde = pd.phase.tail_from(3);
    let inv_h = linalg::inverse(&pd.hessian, prec).ok_or(Error::DegenerateDirection)?;

    let two_pi = pi(prec) * float_from_int(2, prec);
    let mut prefactor = pd.hessian_det.sqrt().inv();
    let two_pi_power = pow_rational(&two_pi, &Rational::from_parts((m as i64).into(), 2u8.into()), prec);
    prefactor = prefactor.scale(&(float_from_int(1, prec) / two_pi_power));

    let mut constants = Vec::new();
    for k in 0..=k_max {
        let mut ck = Complex::zero(prec);
        let mut tilde_power = LocalSeries::constant(m, pd.order(), Complex::one(prec));
        for l in 0..=2 * k {
            if l > 0 {
                tilde_power = tilde_power.mul(&tilde);
            }
            let mut s = amplitude.mul(&tilde_power);
            for _ in 0..l + k {
                s = s.apply_operator(&inv_h);
            }
            let denom = pow_rational(&float_from_int(2, prec), &Rational::from(l + k), prec)
                * factorial(l + k, prec)
                * factorial(l, prec);
            let mut term = s.constant_term().scale(&(float_from_int(1, prec) / denom));
            if l % 2 == 1 {
                term = -term;
            }
            ck = &ck + &term;
        }
        constants.push(&ck * &prefactor);
    }

    let gw = g.evaluate_complex(&w.coords, prec)?;
    if g.is_zero() || approx_log2(&gw.abs()) < approx_log2(&g.coefficient_scale(prec)) + TINY_LOG2 {
        if approx_log2(&constants[0].abs()) >= TINY_LOG2 {
            return Err(Error::Validation("a_0 does not vanish although G(w) = 0".into()));
        }
        constants[0] = Complex::zero(prec);
    }
    let leading = constants
        .iter()
        .position(|c| approx_log2(&c.abs()) >= TINY_LOG2)
        .ok_or(Error::ExpansionVanishes)?;

    let mut log_rho = float_from_int(0, prec);
    for (wj, rj) in w.coords.iter().zip(&r.embedded) {
        log_rho -= wj.abs().with_precision(prec + 32).value().ln() * float_from_rational(rj, prec + 32);
    }
    let rho = log_rho.exp().with_precision(prec).value();
    let alpha = Rational::from_parts((m as i64).into(), 2u8.into()) + Rational::from(leading as u64);
    Ok(AsymptoticExpansion {
        rho,
        alpha,
        constants,
        leading,
        depth: k_max as usize,
        precision: prec,
    })
}

/// Asymptotics of `[x^{m s r}] f ~ C m^{-α} ρ^m` in original indexing.
#[derive(Clone, Debug, PartialEq)]
pub struct OriginalAsymptotics {
    /// `s r`, the index step per unit of `m`.
    pub direction: Vec<Rational>,
    pub rho: Float,
    pub alpha: Rational,
    pub constant: Float,
    pub rho_radical: Option<String>,
    pub constant_radical: Option<String>,
}

impl OriginalAsymptotics {
    pub fn predict(&self, n: u64, prec: usize) -> Float {
        predict(&self.constant, &self.alpha, &self.rho, n, prec)
    }
}

/// Undo the index map: the affine offset contributes `w^{-offset}` to the
/// constant; a rescaling `n = s m` turns `ρ` into `ρ^s` and `C` into
/// `C s^{-α}`.
pub fn translate_to_original(
    ax: &AsymptoticExpansion,
    map: &IndexMap,
    r: &Direction,
    w: &CriticalPoint,
    scale: &Rational,
) -> Result<OriginalAsymptotics> {
    if scale.sign() != dashu_base::Sign::Positive {
        return Err(Error::NonInvertibleRescaling("scale must be positive".into()));
    }
    if map.apply_linear(&r.original) != r.embedded {
        return Err(Error::InvalidArgument("direction is not consistent with the index map".into()));
    }
    let prec = ax.precision;
    let mut offset_factor = Complex::one(prec);
    for (wj, &o) in w.coords.iter().zip(&map.offset) {
        let p = wj.powi(o.unsigned_abs() as u32);
        offset_factor = if o >= 0 { &offset_factor / &p } else { &offset_factor * &p };
    }
    let constant = &ax.constant() * &offset_factor.re;
    let rho = pow_rational(&ax.rho, scale, prec);
    let constant = constant * pow_rational(&float_from_rational(scale, prec), &-ax.alpha.clone(), prec);
    Ok(OriginalAsymptotics {
        direction: r.original.iter().map(|q| q * scale).collect(),
        rho_radical: recognize(&rho, false),
        constant_radical: recognize(&constant, true),
        rho,
        alpha: ax.alpha.clone(),
        constant,
    })
}
