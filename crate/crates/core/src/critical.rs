//! Smooth critical points: the system, its solution by elimination, and the
//! smoothness and minimality checks.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::embed::IndexMap;
use crate::error::{Error, Result};
use crate::linalg;
use crate::numeric::{
    approx_log2, float_from_int, float_from_rational, rational_is_positive, Complex, Float,
    Rational, DEFAULT_PRECISION_BITS, MAX_PRECISION_BITS,
};
use crate::poly::{gcd, resultant, squarefree_part_in, MultiPoly};
use crate::roots::polynomial_roots;
use crate::structure::CombCertificate;

/// Tri-state flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

/// Coefficient direction, in original and embedded coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Direction {
    pub original: Vec<Rational>,
    pub embedded: Vec<Rational>,
}

fn check_positive(r: &[Rational], what: &str) -> Result<()> {
    if r.is_empty() {
        return Err(Error::InvalidDirection(format!("{what} direction is empty")));
    }
    if let Some(bad) = r.iter().find(|q| !rational_is_positive(q)) {
        return Err(Error::InvalidDirection(format!(
            "{what} direction entries must be positive, found {}",
            crate::numeric::rational_to_string(bad)
        )));
    }
    Ok(())
}

impl Direction {
    /// Direction in original coordinates, pushed through the index map.
    pub fn new(original: Vec<Rational>, map: &IndexMap) -> Result<Self> {
        if original.len() != map.cols() {
            return Err(Error::DimensionMismatch {
                expected: map.cols(),
                found: original.len(),
            });
        }
        check_positive(&original, "original")?;
        let embedded = map.apply_linear(&original);
        check_positive(&embedded, "embedded")?;
        Ok(Direction { original, embedded })
    }

    /// Direction given directly in embedded coordinates.
    pub fn plain(r: Vec<Rational>) -> Result<Self> {
        check_positive(&r, "embedded")?;
        Ok(Direction {
            original: r.clone(),
            embedded: r,
        })
    }

    /// Embedded entries scaled to sum to 1.
    pub fn canonical(&self) -> Vec<Rational> {
        let total = self.embedded.iter().fold(Rational::ZERO, |a, b| a + b);
        self.embedded.iter().map(|q| q / &total).collect()
    }

    pub fn scaled(&self, lambda: &Rational) -> Direction {
        Direction {
            original: self.original.iter().map(|q| q * lambda).collect(),
            embedded: self.embedded.iter().map(|q| q * lambda).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalPoint {
    pub coords: Vec<Complex>,
    /// Max absolute value of the system polynomials at `coords`.
    pub residual: Float,
    pub smooth: Tri,
    pub positive: bool,
    pub minimal: Tri,
    /// Index of the largest `|dH/dz_j|`, once smoothness was checked.
    pub largest_partial: Option<usize>,
    pub precision: usize,
}

/// Scale to integer coefficients with no common factor, keeping the sign.
fn clear_denominators(p: &MultiPoly) -> MultiPoly {
    let q = p.primitive_integer();
    match (p.leading_term(), q.leading_term()) {
        (Some((_, a)), Some((_, b))) if (a.sign() == b.sign()) => q,
        (Some(_), Some(_)) => -q,
        _ => q,
    }
}

/// `{H} ∪ {r_1 z_j H_j - r_j z_1 H_1 : j = 2..D}`, integer coefficients.
pub fn critical_system(h: &MultiPoly, r: &[Rational]) -> Result<Vec<MultiPoly>> {
    let d = h.nvars();
    if d < 2 {
        return Err(Error::InvalidArgument("critical system needs at least two variables".into()));
    }
    if r.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: r.len(),
        });
    }
    check_positive(r, "embedded")?;
    let vars = h.vars();
    let h1 = &MultiPoly::var(vars, 0) * &h.derivative(0);
    let mut out = vec![clear_denominators(h)];
    for j in 1..d {
        let hj = &MultiPoly::var(vars, j) * &h.derivative(j);
        let e = &hj.scale(&r[0]) - &h1.scale(&r[j]);
        out.push(clear_denominators(&e));
    }
    Ok(out)
}

fn strip(p: &MultiPoly) -> MultiPoly {
    p.strip_monomial_content().primitive_integer()
}

struct Stage {
    var: usize,
    eqs: Vec<MultiPoly>,
}

enum Plan {
    Empty,
    Chain {
        stages: Vec<Stage>,
        last_var: usize,
        univariate: MultiPoly,
    },
}

/// Exact elimination down to one univariate polynomial. Solutions with a
/// zero coordinate are out of scope, so monomial factors are discarded
/// throughout.
fn eliminate(system: &[MultiPoly]) -> Result<Plan> {
    let d = system[0].nvars();
    if system.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: system.len(),
        });
    }
    let mut eqs: Vec<MultiPoly> = Vec::new();
    for e in system {
        let s = strip(e);
        if s.is_zero() {
            return Err(Error::PositiveDimensional);
        }
        if s.is_constant() {
            return Ok(Plan::Empty);
        }
        if !eqs.contains(&s) {
            eqs.push(s);
        }
    }
    let mut active: Vec<usize> = (0..d).collect();
    let mut stages = Vec::new();
    while active.len() > 1 {
        if eqs.len() < active.len() {
            return Err(Error::PositiveDimensional);
        }
        let v = if stages.is_empty() && eqs.iter().any(|e| e.depends_on(0)) {
            0
        } else {
            *active
                .iter()
                .filter(|&&v| eqs.iter().any(|e| e.depends_on(v)))
                .min_by_key(|&&v| (eqs.iter().map(|e| e.degree_in(v)).max(), v))
                .ok_or(Error::PositiveDimensional)?
        };
        let pivot_idx = (0..eqs.len())
            .filter(|&i| eqs[i].depends_on(v))
            .min_by_key(|&i| (eqs[i].degree_in(v), eqs[i].len()))
            .ok_or(Error::PositiveDimensional)?;
        let pivot = eqs[pivot_idx].clone();
        let mut next: Vec<MultiPoly> = Vec::new();
        for (i, e) in eqs.iter().enumerate() {
            if i == pivot_idx {
                continue;
            }
            let r = if e.depends_on(v) {
                strip(&resultant(&pivot, e, v)?)
            } else {
                e.clone()
            };
            if r.is_zero() {
                return Err(Error::PositiveDimensional);
            }
            if r.is_constant() {
                return Ok(Plan::Empty);
            }
            if !next.contains(&r) {
                next.push(r);
            }
        }
        if next.len() == 2 {
            let g = gcd(&next[0], &next[1]);
            if !g.is_constant() {
                next = next.iter().map(|p| strip(&p.div_exact(&g).expect("gcd divides"))).collect();
                if next.iter().any(MultiPoly::is_constant) {
                    return Ok(Plan::Empty);
                }
            }
        }
        let mut level = vec![pivot];
        level.extend(eqs.iter().enumerate().filter(|(i, _)| *i != pivot_idx).map(|(_, e)| e.clone()));
        stages.push(Stage { var: v, eqs: level });
        eqs = next;
        active.retain(|&a| a != v);
    }
    let last_var = active[0];
    let mut u = eqs[0].clone();
    for e in &eqs[1..] {
        u = gcd(&u, e);
    }
    if !u.depends_on(last_var) {
        return Ok(Plan::Empty);
    }
    let u = strip(&squarefree_part_in(&u, last_var));
    if !u.depends_on(last_var) {
        return Ok(Plan::Empty);
    }
    Ok(Plan::Chain {
        stages,
        last_var,
        univariate: u,
    })
}

/// `log2 |p(z)|` and `log2` of the matching sum of absolute term values.
fn value_and_scale(p: &MultiPoly, z: &[Complex], prec: usize) -> (Complex, f64) {
    let abs: Vec<Float> = z.iter().map(Complex::abs).collect();
    let mut scale = float_from_int(0, prec);
    for (m, c) in p.terms() {
        let mut t = float_from_rational(c, prec);
        if t < float_from_int(0, prec) {
            t = -t;
        }
        for (i, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                t = &t * &abs[i];
            }
        }
        scale += t;
    }
    let v = p.evaluate_complex(z, prec).expect("dimension checked");
    (v, approx_log2(&scale))
}

fn relative_log_residual(p: &MultiPoly, z: &[Complex], prec: usize) -> f64 {
    let (v, s) = value_and_scale(p, z, prec);
    if v.is_zero() {
        return f64::NEG_INFINITY;
    }
    approx_log2(&v.abs()) - s
}

/// Roots in `var` of the first equation that stays nonconstant after
/// fixing the known coordinates; the others are checked loosely.
fn extend_candidate(stage: &Stage, z: &[Complex], prec: usize) -> Result<Vec<Vec<Complex>>> {
    let mut out = Vec::new();
    let specialized: Vec<Vec<Complex>> = stage
        .eqs
        .iter()
        .map(|e| {
            e.coefficients_in(stage.var)
                .iter()
                .map(|c| c.evaluate_complex(z, prec).expect("dimension checked"))
                .collect()
        })
        .collect();
    let Some(k) = specialized.iter().position(|cs| {
        cs.iter().skip(1).any(|c| !c.is_zero())
    }) else {
        return Ok(out);
    };
    let roots = match polynomial_roots(&specialized[k], prec) {
        Ok(r) => r,
        Err(_) => return Ok(out),
    };
    let loose = -(prec as f64) / 4.0;
    for root in roots {
        if approx_log2(&root.abs()) < -100.0 {
            continue;
        }
        let mut w = z.to_vec();
        w[stage.var] = root;
        let ok = stage
            .eqs
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .all(|(_, e)| relative_log_residual(e, &w, prec) < loose);
        if ok {
            out.push(w);
        }
    }
    Ok(out)
}

/// Multivariate Newton; returns the point and its max absolute residual.
fn polish(system: &[MultiPoly], jac: &[Vec<MultiPoly>], z0: Vec<Complex>, prec: usize) -> (Vec<Complex>, Float) {
    let mut z = z0;
    for _ in 0..100 {
        let f: Vec<Complex> = system
            .iter()
            .map(|p| p.evaluate_complex(&z, prec).expect("dimension"))
            .collect();
        let j: linalg::Matrix = jac
            .iter()
            .map(|row| row.iter().map(|p| p.evaluate_complex(&z, prec).expect("dimension")).collect())
            .collect();
        let Some(step) = linalg::solve(&j, &f) else { break };
        let mut biggest = f64::NEG_INFINITY;
        let mut size = 0f64;
        for (zi, si) in z.iter_mut().zip(&step) {
            *zi = &*zi - si;
            biggest = biggest.max(approx_log2(&si.abs()));
            size = size.max(approx_log2(&zi.abs()));
        }
        if biggest < size - prec as f64 + 24.0 || biggest == f64::NEG_INFINITY {
            break;
        }
    }
    let residual = system
        .iter()
        .map(|p| p.evaluate_complex(&z, prec).expect("dimension").abs())
        .fold(float_from_int(0, prec), |a, b| if b > a { b } else { a });
    (z, residual)
}

fn snap_real(z: &mut Complex, prec: usize) {
    let re = approx_log2(&z.re).max(0.0);
    if approx_log2(&z.im) < re - prec as f64 + 40.0 {
        z.im = float_from_int(0, prec);
    }
}

fn canonical_order(a: &CriticalPoint, b: &CriticalPoint) -> Ordering {
    for (x, y) in a.coords.iter().zip(&b.coords) {
        match x.re.partial_cmp(&y.re) {
            Some(Ordering::Equal) | None => {}
            Some(o) => return o,
        }
    }
    for (x, y) in a.coords.iter().zip(&b.coords) {
        match x.im.partial_cmp(&y.im) {
            Some(Ordering::Equal) | None => {}
            Some(o) => return o,
        }
    }
    Ordering::Equal
}

enum Attempt {
    Done(Vec<CriticalPoint>),
    NeedPrecision,
}

// log2(1e-30) and log2(1e-20)
const RESIDUAL_LOG2: f64 = -99.65;
const DEDUP_LOG2: f64 = -66.4;

fn numeric_solve(system: &[MultiPoly], plan: &Plan, prec: usize) -> Result<Attempt> {
    let Plan::Chain {
        stages,
        last_var,
        univariate,
    } = plan
    else {
        return Ok(Attempt::Done(Vec::new()));
    };
    let d = system[0].nvars();
    let coeffs: Vec<Complex> = univariate
        .coefficients_in(*last_var)
        .iter()
        .map(|c| Complex::from_rational(&c.constant_term(), prec))
        .collect();
    let mut partial: Vec<Vec<Complex>> = Vec::new();
    for root in polynomial_roots(&coeffs, prec)? {
        if approx_log2(&root.abs()) < -100.0 {
            continue;
        }
        let mut z = vec![Complex::zero(prec); d];
        z[*last_var] = root;
        partial.push(z);
    }
    for stage in stages.iter().rev() {
        let mut next = Vec::new();
        for z in &partial {
            next.extend(extend_candidate(stage, z, prec)?);
        }
        partial = next;
    }

    let jac: Vec<Vec<MultiPoly>> = system
        .iter()
        .map(|p| (0..d).map(|j| p.derivative(j)).collect())
        .collect();
    let mut points: Vec<CriticalPoint> = Vec::new();
    let mut need_more = false;
    for z0 in partial {
        let (mut z, residual) = polish(system, &jac, z0, prec);
        let r = approx_log2(&residual);
        if r >= RESIDUAL_LOG2 {
            let rel = system
                .iter()
                .map(|p| relative_log_residual(p, &z, prec))
                .fold(f64::NEG_INFINITY, f64::max);
            if rel < -40.0 {
                need_more = true;
            }
            continue;
        }
        if z.iter().any(|c| approx_log2(&c.abs()) < -83.0) {
            continue;
        }
        for c in z.iter_mut() {
            snap_real(c, prec);
        }
        let positive = z
            .iter()
            .all(|c| crate::numeric::is_zero(&c.im) && c.re > float_from_int(0, prec));
        let duplicate = points.iter().any(|p| {
            p.coords
                .iter()
                .zip(&z)
                .all(|(a, b)| approx_log2(&(a - b).abs()) < DEDUP_LOG2)
        });
        if duplicate {
            continue;
        }
        points.push(CriticalPoint {
            coords: z,
            residual,
            smooth: Tri::Unknown,
            positive,
            minimal: Tri::Unknown,
            largest_partial: None,
            precision: prec,
        });
    }
    if need_more {
        return Ok(Attempt::NeedPrecision);
    }
    points.sort_by(canonical_order);
    Ok(Attempt::Done(points))
}

/// All isolated critical points with nonzero coordinates, at the default
/// working precision.
pub fn solve_critical(system: &[MultiPoly]) -> Result<Vec<CriticalPoint>> {
    solve_critical_at(system, DEFAULT_PRECISION_BITS)
}

/// As [`solve_critical`], starting at `prec` bits and doubling on polish
/// failure up to the maximum precision.
pub fn solve_critical_at(system: &[MultiPoly], prec: usize) -> Result<Vec<CriticalPoint>> {
    if system.is_empty() {
        return Err(Error::InvalidArgument("empty system".into()));
    }
    let plan = eliminate(system)?;
    let mut prec = prec.max(128);
    loop {
        match numeric_solve(system, &plan, prec)? {
            Attempt::Done(points) if points.is_empty() => return Err(Error::NoAffineCriticalPoints),
            Attempt::Done(points) => return Ok(points),
            Attempt::NeedPrecision if prec >= MAX_PRECISION_BITS => {
                return Err(Error::PrecisionExhausted(prec))
            }
            Attempt::NeedPrecision => prec *= 2,
        }
    }
}

/// Smoothness and the index of the largest partial derivative.
#[derive(Clone, Debug, PartialEq)]
pub struct Smoothness {
    pub smooth: bool,
    pub largest_partial: usize,
}

pub fn smoothness_check(h: &MultiPoly, pt: &CriticalPoint) -> Smoothness {
    let prec = pt.precision;
    let mut best = (f64::NEG_INFINITY, 0);
    for j in 0..h.nvars() {
        let v = h.derivative(j).evaluate_complex(&pt.coords, prec).expect("dimension");
        let l = approx_log2(&v.abs());
        if l > best.0 {
            best = (l, j);
        }
    }
    let scale = approx_log2(&h.coefficient_scale(prec));
    // 1e-15 relative to the coefficient scale.
    let smooth = best.0 > scale - 49.83;
    Smoothness {
        smooth,
        largest_partial: best.1,
    }
}

/// Fill in the smoothness flags of every point.
pub fn mark_smoothness(h: &MultiPoly, points: &mut [CriticalPoint]) {
    for p in points.iter_mut() {
        let s = smoothness_check(h, p);
        p.smooth = if s.smooth { Tri::Yes } else { Tri::No };
        p.largest_partial = Some(s.largest_partial);
    }
}

/// The unique positive critical point, which is minimal when `1/H` is
/// combinatorial with aperiodic support.
pub fn select_minimal(
    points: &[CriticalPoint],
    cert: &CombCertificate,
    aperiodic: bool,
) -> Result<CriticalPoint> {
    if !cert.is_certified() {
        return Err(Error::NotCombinatorial(format!(
            "1/H is not certified combinatorial (K = {})",
            cert.candidate
        )));
    }
    if !aperiodic {
        return Err(Error::Periodic("support of K is periodic".into()));
    }
    let positive: Vec<&CriticalPoint> = points.iter().filter(|p| p.positive).collect();
    match positive.len() {
        0 => Err(Error::NoPositiveCriticalPoint),
        1 => {
            let mut p = positive[0].clone();
            p.minimal = Tri::Yes;
            Ok(p)
        }
        n => Err(Error::AmbiguousMinimality(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rational_from_ints, to_f64};
    use crate::poly::{parse_polynomial, VarList};
    use crate::structure::{aperiodicity_check, combinatorial_certificate};

    fn p(text: &str, names: &[&str]) -> MultiPoly {
        parse_polynomial(text, &VarList::new(names.iter().copied()).unwrap()).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        rational_from_ints(n, d)
    }

    fn coords(pt: &CriticalPoint) -> Vec<(f64, f64)> {
        pt.coords.iter().map(Complex::to_f64_pair).collect()
    }

    fn close(pt: &CriticalPoint, want: &[Rational]) -> bool {
        pt.coords.iter().zip(want).all(|(z, w)| {
            let e = (z - &Complex::from_rational(w, pt.precision)).abs();
            approx_log2(&e) < -83.0
        })
    }

    fn callan_h(a: i64, b: i64) -> MultiPoly {
        let text = format!("1 - (Y^3*{b}*x^2 + 2*Y^2*{b}*x^2 + Y*{b}*x^2 + Y*{a}*x + {a}*x)");
        p(&text, &["Y", "x"])
    }

    #[test]
    fn system_examples() {
        let h = p("1 - Y - x", &["Y", "x"]);
        let sys = critical_system(&h, &[Rational::ONE, Rational::ONE]).unwrap();
        assert_eq!(sys, vec![h.clone(), p("Y - x", &["Y", "x"])]);
        assert!(critical_system(&h, &[Rational::ONE, Rational::ZERO]).is_err());
        let halves = critical_system(&h, &[q(1, 2), q(1, 2)]).unwrap();
        assert_eq!(halves, sys);
    }

    #[test]
    fn linear_solve() {
        let h = p("1 - Y - x", &["Y", "x"]);
        let sys = critical_system(&h, &[Rational::ONE, Rational::ONE]).unwrap();
        let pts = solve_critical(&sys).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(close(&pts[0], &[q(1, 2), q(1, 2)]));
        assert!(pts[0].positive);
        assert!(approx_log2(&pts[0].residual) < RESIDUAL_LOG2);
    }

    #[test]
    fn callan_points() {
        let h = callan_h(1, 4);
        let sys = critical_system(&h, &[Rational::ONE, Rational::ONE]).unwrap();
        let mut pts = solve_critical(&sys).unwrap();
        assert_eq!(pts.len(), 2, "{:?}", pts.iter().map(coords).collect::<Vec<_>>());
        // Coordinates are (Y, x).
        assert!(close(&pts[0], &[q(1, 2), q(-2, 3)]));
        assert!(close(&pts[1], &[q(3, 2), q(2, 15)]));
        mark_smoothness(&h, &mut pts);
        assert!(pts.iter().all(|p| p.smooth == Tri::Yes));
        let cert = combinatorial_certificate(&h).unwrap();
        let k = cert.k.clone().unwrap();
        let best = select_minimal(&pts, &cert, aperiodicity_check(&k)).unwrap();
        assert!(close(&best, &[q(3, 2), q(2, 15)]));
        assert_eq!(best.minimal, Tri::Yes);
    }

    #[test]
    fn callan_counts() {
        for (a, b, n) in [(3, 2, 2), (2, 3, 2), (2, 1, 1)] {
            let sys = critical_system(&callan_h(a, b), &[Rational::ONE, Rational::ONE]).unwrap();
            assert_eq!(solve_critical(&sys).unwrap().len(), n, "a={a} b={b}");
        }
    }

    #[test]
    fn dissections_point() {
        let names = ["Y", "x", "y"];
        let h = p("1 - (Y^2*x*y^2 + Y^2*x*y + 2*Y*x*y^2 + Y*x*y + x*y^2)", &names);
        let r = [q(2, 5), q(2, 5), q(3, 5)];
        let sys = critical_system(&h, &r).unwrap();
        let pts = solve_critical(&sys).unwrap();
        let cert = combinatorial_certificate(&h).unwrap();
        let best = select_minimal(&pts, &cert, true).unwrap();
        assert!(close(&best, &[q(1, 2), q(2, 1), q(1, 3)]), "{:?}", coords(&best));
        let r = [q(1, 4), q(1, 4), q(3, 4)];
        let sys = critical_system(&h, &r).unwrap();
        let pts = solve_critical(&sys).unwrap();
        assert_eq!(select_minimal(&pts, &cert, true), Err(Error::NoPositiveCriticalPoint));
    }

    #[test]
    fn bilateral_has_no_points() {
        let names = ["Y", "t", "z"];
        let base = p("(Y + 1)^2*(1 - 2*z - 4*t*z + z^2) - 1", &names);
        let y = MultiPoly::var(base.vars(), 0);
        let yz = &y * &MultiPoly::var(base.vars(), 2);
        let h = base.substitute_indexed(&[(2, yz)]);
        let sys = critical_system(&h, &[q(3, 5), q(2, 5), q(3, 5)]).unwrap();
        assert_eq!(solve_critical(&sys), Err(Error::NoAffineCriticalPoints));
    }

    #[test]
    fn smoothness() {
        let names = ["Y", "x"];
        let h = p("1 - Y - x", &names);
        let pt = CriticalPoint {
            coords: vec![Complex::from_rational(&q(1, 2), 256); 2],
            residual: float_from_int(0, 256),
            smooth: Tri::Unknown,
            positive: true,
            minimal: Tri::Unknown,
            largest_partial: None,
            precision: 256,
        };
        assert!(smoothness_check(&h, &pt).smooth);
        assert!(!smoothness_check(&h.pow(2), &pt).smooth);
    }

    #[test]
    fn direction_scaling() {
        let h = callan_h(1, 4);
        let a = solve_critical(&critical_system(&h, &[Rational::ONE, Rational::ONE]).unwrap()).unwrap();
        let b = solve_critical(&critical_system(&h, &[q(7, 3), q(7, 3)]).unwrap()).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(coords(x), coords(y));
        }
        let m = IndexMap::identity(2);
        assert!(Direction::new(vec![Rational::ONE, -Rational::ONE], &m).is_err());
        let d = Direction::new(vec![q(2, 5), q(3, 5)], &m).unwrap();
        assert_eq!(d.scaled(&Rational::from(5)).canonical(), d.canonical());
        let _ = to_f64(&float_from_int(1, 64));
    }
}
