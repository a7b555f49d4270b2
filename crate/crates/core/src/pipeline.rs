//! End-to-end driver: preprocess → embed → certify → critical points →
//! asymptotics → oracle validation.
//!
//! Structured mathematical failures (a certificate that does not hold, no
//! usable critical point, ...) end the run early and are recorded in the
//! [`Outcome`]; input errors come back as `Err`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use dashu_base::Abs;

use crate::asympt::{
    expansion_terms, phase_data, predict, translate_to_original, AsymptoticExpansion, OriginalAsymptotics,
};
use crate::critical::{
    critical_system, mark_smoothness, select_minimal, solve_critical_at, CriticalPoint, Direction, Tri,
};
use crate::embed::{
    additive_shift, check_h2, embed_with_history, monomial_substitution, multiplicative_shift, origin_branch,
    origin_branch_boxed, truncation_poly, verify_chain, EmbeddingResult, IndexMap, PreprocStep,
};
use crate::error::{Error, Result};
use crate::numeric::{approx_log2, float_from_int, float_from_rational, rational_to_string, Complex, Float, Rational};
use crate::poly::MultiPoly;
use crate::structure::{aperiodicity_check, combinatorial_certificate, support_lattice, CombCertificate, LatticeInfo};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    Embed,
    Certify,
    Critical,
    Asympt,
    Verify,
}

impl Stage {
    pub const ALL: [Stage; 5] = [Stage::Embed, Stage::Certify, Stage::Critical, Stage::Asympt, Stage::Verify];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Embed => "embed",
            Stage::Certify => "certify",
            Stage::Critical => "critical",
            Stage::Asympt => "asympt",
            Stage::Verify => "verify",
        }
    }

    /// Accepts the stage names plus `all` (same as `verify`).
    pub fn parse(s: &str) -> Option<Stage> {
        match s {
            "embed" => Some(Stage::Embed),
            "certify" => Some(Stage::Certify),
            "critical" => Some(Stage::Critical),
            "asympt" => Some(Stage::Asympt),
            "verify" | "all" => Some(Stage::Verify),
            _ => None,
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Preprocessing {
    /// Search constant/initial-term removal up to degree 3 and every pivot,
    /// preferring an embedding with a combinatorial certificate.
    Auto,
    Steps(Vec<PreprocStep>),
}

/// A fully parsed problem.
#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    pub name: String,
    /// Minimal polynomial in `[Y, x_1, ..., x_d]`.
    pub polynomial: MultiPoly,
    /// `f(0)`; selects the branch.
    pub origin: Rational,
    pub preprocessing: Preprocessing,
    /// `None` searches every variable satisfying H1.
    pub pivot: Option<String>,
    pub multiplicity: u32,
    /// Direction in original variables.
    pub direction: Vec<Rational>,
    /// Report `[x^{m s r}] f` as a function of `m`.
    pub scale: Rational,
    pub oracle_order: u32,
    pub k_max: u32,
    pub n_grid: Vec<u64>,
    pub precision: usize,
}

impl Problem {
    pub fn new(name: &str, polynomial: MultiPoly, direction: Vec<Rational>) -> Self {
        Problem {
            name: name.to_string(),
            polynomial,
            origin: Rational::ZERO,
            preprocessing: Preprocessing::Auto,
            pivot: None,
            multiplicity: 1,
            direction,
            scale: Rational::ONE,
            oracle_order: 12,
            k_max: 1,
            n_grid: Vec::new(),
            precision: crate::numeric::DEFAULT_PRECISION_BITS,
        }
    }

    /// Checks that do not need any computation.
    pub fn validate_input(&self) -> Result<()> {
        let d = self.polynomial.nvars().saturating_sub(1);
        if d == 0 {
            return Err(Error::InvalidArgument("the polynomial ring needs at least one series variable".into()));
        }
        if self.direction.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: self.direction.len(),
            });
        }
        if let Some(bad) = self.direction.iter().find(|q| !crate::numeric::rational_is_positive(q)) {
            return Err(Error::InvalidDirection(format!(
                "entries must be positive, found {}",
                rational_to_string(bad)
            )));
        }
        if !crate::numeric::rational_is_positive(&self.scale) {
            return Err(Error::NonInvertibleRescaling("scale must be positive".into()));
        }
        if self.k_max > 1 {
            return Err(Error::InvalidArgument("k_max must be 0 or 1".into()));
        }
        if self.multiplicity == 0 {
            return Err(Error::InvalidArgument("multiplicity must be positive".into()));
        }
        if let Some(p) = &self.pivot {
            let i = self.polynomial.vars().require(p)?;
            if i == 0 {
                return Err(Error::InvalidArgument(format!("pivot `{p}` is the series unknown")));
            }
        }
        Ok(())
    }
}

/// Preprocessed polynomial, ready to embed.
#[derive(Clone, Debug, PartialEq)]
pub struct Prepared {
    pub polynomial: MultiPoly,
    pub trail: Vec<PreprocStep>,
    pub map: IndexMap,
}

/// Apply explicit steps, tracking `f(0)` so that later multiplicative
/// shifts select the right branch.
pub fn apply_steps(p: &MultiPoly, origin: &Rational, steps: &[PreprocStep]) -> Result<Prepared> {
    let xs = p.vars().without(0)?;
    let mut q = p.clone();
    let mut origin = origin.clone();
    let mut map = IndexMap::identity(xs.len());
    for step in steps {
        match step {
            PreprocStep::AdditiveShift { f0 } => {
                let f0 = f0.to_ring(q.vars())?;
                q = additive_shift(&q, &f0)?;
                origin = &origin - &f0.constant_term();
            }
            PreprocStep::MonomialSub { source, carrier } => {
                let (next, m) = monomial_substitution(&q, source, carrier)?;
                q = next;
                map = map.then(&m);
            }
            PreprocStep::MultiplicativeShift { var } => {
                q = multiplicative_shift(&q, var, &origin)?;
                origin = Rational::ZERO;
                map = map.then(&step.index_map(&xs)?);
            }
        }
    }
    if !origin.is_zero() {
        return Err(Error::NoBranchThroughOrigin(rational_to_string(&origin)));
    }
    Ok(Prepared {
        polynomial: q,
        trail: steps.to_vec(),
        map,
    })
}

/// One candidate considered by the automatic search.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchEntry {
    pub shift_degree: u32,
    pub pivot: String,
    pub result: String,
}

fn pivots(problem: &Problem) -> Vec<String> {
    match &problem.pivot {
        Some(p) => vec![p.clone()],
        None => problem.polynomial.vars().names()[1..].to_vec(),
    }
}

fn embed_one(problem: &Problem, prepared: &Prepared, pivot: &str) -> Result<EmbeddingResult> {
    embed_with_history(
        &prepared.polynomial,
        pivot,
        problem.multiplicity,
        prepared.trail.clone(),
        prepared.map.clone(),
    )
}

/// Bounded search over initial-term removal (degree `m = 0..=3`) and pivots.
pub fn auto_embed(problem: &Problem) -> Result<(EmbeddingResult, Vec<SearchEntry>)> {
    let p = &problem.polynomial;
    if !check_h2(&additive_shift(p, &MultiPoly::constant(p.vars(), problem.origin.clone()))?) {
        return Err(Error::DegenerateBranch);
    }
    let branch = origin_branch(p, &problem.origin, 3)?;
    let mut log = Vec::new();
    let mut fallback: Option<EmbeddingResult> = None;
    let mut last_f0: Option<MultiPoly> = None;
    for m in 0..=3u32 {
        let f0 = truncation_poly(&branch, m, p.vars())?;
        if last_f0.as_ref() == Some(&f0) {
            continue;
        }
        last_f0 = Some(f0.clone());
        let steps = if f0.is_zero() {
            Vec::new()
        } else {
            vec![PreprocStep::AdditiveShift { f0 }]
        };
        let prepared = apply_steps(p, &problem.origin, &steps)?;
        for pivot in pivots(problem) {
            let entry = |result: String| SearchEntry {
                shift_degree: m,
                pivot: pivot.clone(),
                result,
            };
            match embed_one(problem, &prepared, &pivot) {
                Ok(e) => {
                    let cert = combinatorial_certificate(&e.h)?;
                    if cert.is_certified() {
                        log.push(entry("certified".into()));
                        return Ok((e, log));
                    }
                    log.push(entry("embedding is not certified combinatorial".into()));
                    if fallback.is_none() {
                        fallback = Some(e);
                    }
                }
                Err(err) if err.is_mathematical() => log.push(entry(err.to_string())),
                Err(err) => return Err(err),
            }
        }
    }
    match fallback {
        Some(e) => Ok((e, log)),
        None => Err(Error::NoPivot),
    }
}

/// Preprocess and embed as the problem prescribes.
pub fn embed_problem(problem: &Problem) -> Result<(EmbeddingResult, Vec<SearchEntry>)> {
    match &problem.preprocessing {
        Preprocessing::Auto => auto_embed(problem),
        Preprocessing::Steps(steps) => {
            let prepared = apply_steps(&problem.polynomial, &problem.origin, steps)?;
            let mut log = Vec::new();
            let mut first: Option<Result<EmbeddingResult>> = None;
            for pivot in pivots(problem) {
                let r = embed_one(problem, &prepared, &pivot);
                let status = match &r {
                    Ok(e) => {
                        if combinatorial_certificate(&e.h)?.is_certified() {
                            log.push(SearchEntry {
                                shift_degree: 0,
                                pivot: pivot.clone(),
                                result: "certified".into(),
                            });
                            return Ok((r?, log));
                        }
                        "embedding is not certified combinatorial".to_string()
                    }
                    Err(err) if err.is_mathematical() => err.to_string(),
                    Err(err) => return Err(err.clone()),
                };
                log.push(SearchEntry {
                    shift_degree: 0,
                    pivot: pivot.clone(),
                    result: status,
                });
                if first.is_none() || matches!(first, Some(Err(_))) && r.is_ok() {
                    first = Some(r);
                }
            }
            match first {
                Some(r) => Ok((r?, log)),
                None => Err(Error::NoPivot),
            }
        }
    }
}

/// Coefficient indices `n s r` in original variables.
pub fn coefficient_index(problem: &Problem, n: u64) -> Result<Vec<u32>> {
    problem
        .direction
        .iter()
        .map(|r| {
            let v = r * &problem.scale * Rational::from(n);
            if !v.is_int() {
                return Err(Error::NonIntegralIndex(n));
            }
            u32::try_from(v.numerator()).map_err(|_| Error::InvalidArgument("index too large".into()))
        })
        .collect()
}

/// Exact `[x^{n s r}] f` from the branch of the original polynomial.
pub fn empirical_coefficients(problem: &Problem, ns: &[u64]) -> Result<Vec<(u64, Rational)>> {
    let indices: Vec<Vec<u32>> = ns.iter().map(|&n| coefficient_index(problem, n)).collect::<Result<_>>()?;
    let d = problem.direction.len();
    let mut caps = vec![0u32; d];
    let mut order = 0;
    for idx in &indices {
        for (c, &x) in caps.iter_mut().zip(idx) {
            *c = (*c).max(x);
        }
        order = order.max(idx.iter().sum());
    }
    let f = origin_branch_boxed(&problem.polynomial, &problem.origin, order, &caps)?;
    Ok(ns.iter().zip(&indices).map(|(&n, idx)| (n, f.coeff(idx))).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationRow {
    pub n: u64,
    pub exact: Rational,
    pub predicted: Float,
    /// `|exact / predicted - 1|`.
    pub relative_error: Float,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Validation {
    pub rows: Vec<ValidationRow>,
    /// Errors strictly decrease along the grid.
    pub monotone: bool,
    /// Richardson extrapolation of `exact / predicted` from the last two
    /// rows, assuming a `1/n` correction.
    pub limit_ratio: Option<Float>,
}

impl Validation {
    pub fn final_error(&self) -> Option<f64> {
        self.rows.last().map(|r| crate::numeric::to_f64(&r.relative_error))
    }
}

/// Compare exact coefficients with `C n^{-α} ρ^n`.
pub fn compare(table: &[(u64, Rational)], c: &Float, alpha: &Rational, rho: &Float, prec: usize) -> Validation {
    let one = float_from_int(1, prec);
    let mut rows = Vec::new();
    let mut ratios = Vec::new();
    for (n, exact) in table {
        let predicted = predict(c, alpha, rho, *n, prec);
        let ratio = float_from_rational(exact, prec) / &predicted;
        let err = (&ratio - &one).abs();
        ratios.push((*n, ratio));
        rows.push(ValidationRow {
            n: *n,
            exact: exact.clone(),
            predicted,
            relative_error: err,
        });
    }
    let monotone = rows.windows(2).all(|w| w[1].relative_error < w[0].relative_error);
    let limit_ratio = if ratios.len() >= 2 {
        let (n1, q1) = &ratios[ratios.len() - 2];
        let (n2, q2) = &ratios[ratios.len() - 1];
        let (a, b) = (float_from_int(*n1 as i64, prec), float_from_int(*n2 as i64, prec));
        Some((&b * q2 - &a * q1) / (&b - &a))
    } else {
        None
    };
    Validation {
        rows,
        monotone,
        limit_ratio,
    }
}

pub fn validate(problem: &Problem, asymptotics: &OriginalAsymptotics, ns: &[u64]) -> Result<Validation> {
    let table = empirical_coefficients(problem, ns)?;
    Ok(compare(
        &table,
        &asymptotics.constant,
        &asymptotics.alpha,
        &asymptotics.rho,
        problem.precision,
    ))
}

/// Everything a run produced, up to the point where it stopped.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub problem: String,
    pub requested: Stage,
    pub completed: Vec<Stage>,
    pub search: Vec<SearchEntry>,
    pub embedding: Option<EmbeddingResult>,
    pub embedding_verified: Option<bool>,
    pub certificate: Option<CombCertificate>,
    pub lattice: Option<LatticeInfo>,
    pub aperiodic: Option<bool>,
    pub direction: Option<Direction>,
    pub critical_points: Vec<CriticalPoint>,
    pub minimal: Option<CriticalPoint>,
    pub numerator_at_minimal: Option<Complex>,
    pub expansion: Option<AsymptoticExpansion>,
    pub asymptotics: Option<OriginalAsymptotics>,
    pub validation: Option<Validation>,
    /// Stage that hit a structured failure, and the failure.
    pub failure: Option<(Stage, Error)>,
}

impl Outcome {
    fn new(problem: &Problem, requested: Stage) -> Self {
        Outcome {
            problem: problem.name.clone(),
            requested,
            completed: Vec::new(),
            search: Vec::new(),
            embedding: None,
            embedding_verified: None,
            certificate: None,
            lattice: None,
            aperiodic: None,
            direction: None,
            critical_points: Vec::new(),
            minimal: None,
            numerator_at_minimal: None,
            expansion: None,
            asymptotics: None,
            validation: None,
            failure: None,
        }
    }

    pub fn succeeded(&self) -> bool {
        self.failure.is_none()
    }
}

/// Run every stage up to `stage`.
pub fn run(problem: &Problem, stage: Stage) -> Result<Outcome> {
    problem.validate_input()?;
    let mut out = Outcome::new(problem, stage);
    match run_inner(problem, stage, &mut out) {
        Ok(()) => Ok(out),
        Err((s, e)) if e.is_mathematical() => {
            out.failure = Some((s, e));
            Ok(out)
        }
        Err((_, e)) => Err(e),
    }
}

type StageResult<T> = core::result::Result<T, (Stage, Error)>;

fn at<T>(s: Stage, r: Result<T>) -> StageResult<T> {
    r.map_err(|e| (s, e))
}

fn run_inner(problem: &Problem, stage: Stage, out: &mut Outcome) -> StageResult<()> {
    // embed
    let (e, log) = at(Stage::Embed, embed_problem(problem))?;
    out.search = log;
    let verified = at(
        Stage::Embed,
        verify_chain(&problem.polynomial, &problem.origin, &e, problem.oracle_order),
    )?;
    out.embedding_verified = Some(verified);
    out.embedding = Some(e.clone());
    if !verified {
        return Err((
            Stage::Embed,
            Error::InvalidEmbedding("the diagonal of G/H does not reproduce the series".into()),
        ));
    }
    out.completed.push(Stage::Embed);
    if stage == Stage::Embed {
        return Ok(());
    }

    // certify
    let cert = at(Stage::Certify, combinatorial_certificate(&e.h))?;
    let aperiodic = cert.k.as_ref().map(aperiodicity_check);
    out.lattice = Some(support_lattice(&cert.candidate));
    out.aperiodic = aperiodic;
    out.certificate = Some(cert.clone());
    if stage == Stage::Certify {
        if !cert.is_certified() {
            return Err((
                Stage::Certify,
                Error::NotCombinatorial(format!("K = {} has negative coefficients", cert.candidate)),
            ));
        }
        if aperiodic == Some(false) {
            let desc = out.lattice.as_ref().map(LatticeInfo::describe).unwrap_or_default();
            return Err((Stage::Certify, Error::Periodic(desc)));
        }
    }
    out.completed.push(Stage::Certify);
    if stage == Stage::Certify {
        return Ok(());
    }

    // critical
    let dir = at(Stage::Critical, Direction::new(problem.direction.clone(), &e.map))?;
    out.direction = Some(dir.clone());
    let system = at(Stage::Critical, critical_system(&e.h, &dir.embedded))?;
    let mut points = at(Stage::Critical, solve_critical_at(&system, problem.precision))?;
    mark_smoothness(&e.h, &mut points);
    out.critical_points = points.clone();
    out.completed.push(Stage::Critical);
    if stage == Stage::Critical {
        return Ok(());
    }

    // asympt
    let w = at(Stage::Asympt, select_minimal(&points, &cert, aperiodic.unwrap_or(false)))?;
    for p in out.critical_points.iter_mut() {
        if p.coords == w.coords {
            p.minimal = Tri::Yes;
        }
    }
    out.minimal = Some(w.clone());
    if w.smooth != Tri::Yes {
        return Err((Stage::Asympt, Error::NotSmooth));
    }
    let gw = at(Stage::Asympt, e.g.evaluate_complex(&w.coords, w.precision))?;
    out.numerator_at_minimal = Some(gw.clone());
    let pd = at(Stage::Asympt, phase_data(&e.h, &w, &dir))?;
    let ax = at(Stage::Asympt, expansion_terms(&e.g, &e.h, &pd, &w, &dir, problem.k_max))?;
    // The embedding numerator always vanishes at the minimal point.
    if approx_log2(&gw.abs()) > approx_log2(&e.g.coefficient_scale(w.precision)) - 66.43 || !ax.constants[0].is_zero() {
        return Err((
            Stage::Asympt,
            Error::Validation("numerator does not vanish at the minimal point (a_0 != 0)".into()),
        ));
    }
    out.expansion = Some(ax.clone());
    let orig = at(Stage::Asympt, translate_to_original(&ax, &e.map, &dir, &w, &problem.scale))?;
    out.asymptotics = Some(orig.clone());
    out.completed.push(Stage::Asympt);
    if stage == Stage::Asympt {
        return Ok(());
    }

    // verify
    if !problem.n_grid.is_empty() {
        let v = at(Stage::Verify, validate(problem, &orig, &problem.n_grid))?;
        out.validation = Some(v);
    }
    out.completed.push(Stage::Verify);
    Ok(())
}

/// `Problem` with the minimal polynomial given as text in `[Y, vars]`.
pub fn problem_from_text(name: &str, y: &str, vars: &[&str], polynomial: &str, direction: &[Rational]) -> Result<Problem> {
    let names: Vec<&str> = core::iter::once(y).chain(vars.iter().copied()).collect();
    let ring = crate::poly::VarList::new(names)?;
    let p = crate::poly::parse_polynomial(polynomial, &ring)?;
    Ok(Problem::new(name, p, direction.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rational_from_ints, to_f64};

    fn q(n: i64, d: i64) -> Rational {
        rational_from_ints(n, d)
    }

    fn catalan() -> Problem {
        let mut p = problem_from_text("catalan", "Y", &["x"], "x*Y^2 - Y + 1", &[Rational::ONE]).unwrap();
        p.origin = Rational::ONE;
        p.n_grid = vec![25, 50, 100, 200];
        p
    }

    #[test]
    fn catalan_end_to_end() {
        let out = run(&catalan(), Stage::Verify).unwrap();
        assert!(out.succeeded(), "{:?}", out.failure);
        let a = out.asymptotics.unwrap();
        assert!((to_f64(&a.rho) - 4.0).abs() < 1e-14);
        assert_eq!(a.alpha, q(3, 2));
        let c = 1.0 / core::f64::consts::PI.sqrt();
        assert!((to_f64(&a.constant) / c - 1.0).abs() < 1e-14);
        assert_eq!(a.rho_radical.as_deref(), Some("4"));
        assert_eq!(a.constant_radical.as_deref(), Some("1/sqrt(pi)"));
        let v = out.validation.unwrap();
        assert!(v.monotone);
        assert!(v.final_error().unwrap() < 0.02);
        let t = empirical_coefficients(&catalan(), &[0, 1, 2, 3, 4, 5]).unwrap();
        let want = [1, 1, 2, 5, 14, 42];
        for ((_, c), w) in t.iter().zip(want) {
            assert_eq!(*c, Rational::from(w));
        }
    }

    #[test]
    fn catalan_routes_agree() {
        let mut f2 = catalan();
        f2.preprocessing = Preprocessing::Steps(vec![PreprocStep::MultiplicativeShift { var: "x".into() }]);
        let a = run(&catalan(), Stage::Asympt).unwrap().asymptotics.unwrap();
        let b = run(&f2, Stage::Asympt).unwrap();
        assert!(b.succeeded(), "{:?}", b.failure);
        let b = b.asymptotics.unwrap();
        assert!((to_f64(&a.constant) / to_f64(&b.constant) - 1.0).abs() < 1e-12);
        assert_eq!(a.alpha, b.alpha);
    }

    #[test]
    fn non_integral_index() {
        let mut p = problem_from_text("d", "Y", &["x", "y"], "x*y^2*(1 + Y)^2 + x*y*(1 + Y)*Y - Y", &[q(2, 5), q(3, 5)]).unwrap();
        p.n_grid = vec![7];
        assert_eq!(empirical_coefficients(&p, &[7]), Err(Error::NonIntegralIndex(7)));
        assert!(empirical_coefficients(&p, &[5]).is_ok());
    }

    #[test]
    fn input_checks() {
        let mut p = catalan();
        p.direction = vec![Rational::ONE, Rational::ONE];
        assert!(matches!(run(&p, Stage::Embed), Err(Error::DimensionMismatch { .. })));
        let mut p = catalan();
        p.direction = vec![Rational::ZERO];
        assert!(matches!(run(&p, Stage::Embed), Err(Error::InvalidDirection(_))));
    }
}
