#![allow(dead_code)]

//! Randomized property checks shared by the core property tests and the
//! acceptance harness. Every check uses a fixed-seed runner so failures
//! reproduce.

use algcoef_core::critical::{critical_system, solve_critical};
use algcoef_core::embed::PreprocStep;
use algcoef_core::numeric::{is_zero, rational_from_ints, to_f64, Rational};
use algcoef_core::pipeline::{problem_from_text, run, Preprocessing, Stage};
use algcoef_core::poly::{MultiPoly, VarList};
use algcoef_core::series::{branch_expand, branch_expand_iterates, elementary_diagonal, TruncatedSeries};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub type Check = fn(u32) -> Result<(), String>;

pub const ALL: [(&str, Check); 7] = [
    ("polynomial ring axioms", ring_axioms),
    ("newton doubling", newton_doubling),
    ("composition residue", composition_residue),
    ("diagonal hadamard identity", diagonal_hadamard),
    ("direction scale invariance", direction_scale_invariance),
    ("a0 vanishing", a0_vanishing),
    ("f1/f2 route independence", route_independence),
];

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn drive<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn q(n: i64, d: i64) -> Rational {
    rational_from_ints(n, d)
}

fn ring(names: &[&str]) -> VarList {
    VarList::new(names.iter().copied()).unwrap()
}

/// Sparse polynomial with small integer coefficients and degrees.
fn poly_in(vars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, vars), -6i64..=6), 0..=max_terms)
}

fn build(r: &VarList, terms: &[(Vec<u32>, i64)]) -> MultiPoly {
    MultiPoly::from_terms(r, terms.iter().map(|(e, c)| (e.clone(), Rational::from(*c))))
}

pub fn ring_axioms(cases: u32) -> Result<(), String> {
    let r = ring(&["x", "y", "z"]);
    let pt = [q(1, 2), q(-2, 3), q(3, 1)];
    drive(
        cases,
        (poly_in(3, 3, 5), poly_in(3, 3, 5), poly_in(3, 3, 5)),
        |(a, b, c)| {
            let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
            let one = MultiPoly::one(&r);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a + &(-&a)).is_zero());
            prop_assert_eq!(&a * &one, a.clone());
            let ab = &a * &b;
            prop_assert_eq!(ab.derivative(1), &(&a.derivative(1) * &b) + &(&a * &b.derivative(1)));
            let lhs = ab.evaluate_exact(&pt).unwrap();
            let rhs = a.evaluate_exact(&pt).unwrap() * b.evaluate_exact(&pt).unwrap();
            prop_assert_eq!(lhs, rhs);
            Ok(())
        },
    )
}

/// `P = c Y - x R(Y, x, y) - S(x, y)` with `c != 0` and `S(0) = 0`: a
/// single smooth branch through the origin.
fn branch_poly() -> impl Strategy<Value = MultiPoly> {
    let c = prop_oneof![1i64..=3, -3i64..=-1];
    (c, poly_in(3, 2, 4), poly_in(2, 2, 3)).prop_map(|(c, rt, st)| {
        let r = ring(&["Y", "x", "y"]);
        let mut p = MultiPoly::monomial(&r, algcoef_core::poly::Monomial(vec![1, 0, 0]), Rational::from(c));
        let x = MultiPoly::var(&r, 1);
        p = &p - &(&x * &build(&r, &rt));
        let s: Vec<(Vec<u32>, i64)> = st
            .into_iter()
            .filter(|(e, _)| e.iter().any(|&k| k > 0))
            .map(|(e, c)| (vec![0, e[0], e[1]], c))
            .collect();
        &p - &build(&r, &s)
    })
}

pub fn newton_doubling(cases: u32) -> Result<(), String> {
    const ORDER: u32 = 12;
    drive(cases, branch_poly(), |p| {
        let iterates = branch_expand_iterates(&p, ORDER, &[ORDER, ORDER]).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let f = iterates.last().unwrap();
        for (i, it) in iterates.iter().enumerate() {
            let exact = ((1u32 << i) - 1).min(ORDER);
            prop_assert_eq!(it.truncate(exact), f.truncate(exact), "iterate {} through degree {}", i, exact);
        }
        // 0, 1, 3, 7, 12: one iterate per doubling.
        prop_assert_eq!(iterates.len(), 5);
        Ok(())
    })
}

/// `P(f, x)` truncated at `order`.
fn residue(p: &MultiPoly, f: &TruncatedSeries, order: u32) -> TruncatedSeries {
    let sr = f.vars().clone();
    let coeffs = p.coefficients_in(0);
    let mut acc = TruncatedSeries::zero(&sr, order);
    for c in coeffs.iter().rev() {
        let c = TruncatedSeries::from_poly(&c.to_ring(&sr).unwrap(), order);
        acc = acc.mul_trunc(f, order).add(&c);
    }
    acc
}

pub fn composition_residue(cases: u32) -> Result<(), String> {
    const ORDER: u32 = 10;
    let extra = (poly_in(3, 2, 3), 0usize..3);
    drive(cases, (branch_poly(), extra), |(p, (hi, k))| {
        // Add higher powers of Y, keeping the branch smooth at the origin.
        let r = p.vars().clone();
        let y2 = MultiPoly::var(&r, 0).pow(2 + k as u32);
        let p = &p + &(&y2 * &build(&r, &hi));
        let f = branch_expand(&p, ORDER).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(residue(&p, &f, ORDER).is_zero());
        prop_assert!(f.coeff(&[0, 0]).is_zero());
        Ok(())
    })
}

pub fn diagonal_hadamard(cases: u32) -> Result<(), String> {
    let coeffs = || prop::collection::vec(-9i64..=9, 7);
    drive(cases, (coeffs(), coeffs(), coeffs()), |(a, b, c)| {
        let r = ring(&["x", "y", "z"]);
        let uni = |v: usize, cs: &[i64]| {
            MultiPoly::from_terms(
                &r,
                cs.iter().enumerate().map(|(i, &k)| {
                    let mut e = vec![0; 3];
                    e[v] = i as u32;
                    (e, Rational::from(k))
                }),
            )
        };
        let prod = &(&uni(0, &a) * &uni(1, &b)) * &uni(2, &c);
        let s = TruncatedSeries::from_poly(&prod, 12);
        let d = elementary_diagonal(&s, 0, 1).map_err(|e| TestCaseError::fail(e.to_string()))?;
        for n in 0..=6usize {
            for m in 0..=(6 - n) {
                let want = Rational::from(a[n] * b[n] * c[m]);
                prop_assert_eq!(d.coeff(&[n as u32, m as u32]), want, "y^{} z^{}", n, m);
            }
        }
        Ok(())
    })
}

/// Embedded denominators from a few corpus series.
fn corpus_denominators() -> Vec<MultiPoly> {
    let mut out = Vec::new();
    let specs: [(&[&str], &str, i64); 4] = [
        (&["x"], "x*Y^2 - Y + 1", 1),
        (&["x"], "4*x^2*Y^2 + (8*x^2 + x - 1)*Y + 4*x^2 + x", 0),
        (&["x", "y"], "x*y^2*(1 + Y)^2 + x*y*(1 + Y)*Y - Y", 0),
        (&["x", "y"], "x*Y^2 - Y*(1 - x*(y - 1)) + 1", 1),
    ];
    for (vars, text, origin) in specs {
        let dir = vec![Rational::ONE; vars.len()];
        let mut p = problem_from_text("corpus", "Y", vars, text, &dir).unwrap();
        p.origin = Rational::from(origin);
        let o = run(&p, Stage::Embed).unwrap();
        let h = o.embedding.unwrap_or_else(|| panic!("{text}: {:?}", o.failure)).h;
        out.push(h);
    }
    out
}

pub fn direction_scale_invariance(cases: u32) -> Result<(), String> {
    let hs = corpus_denominators();
    let strategy = (0..hs.len(), prop::collection::vec(1i64..=4, 3), 1i64..=20, 1i64..=20);
    drive(cases, strategy, |(k, dir, ln, ld)| {
        let h = &hs[k];
        let r: Vec<Rational> = dir[..h.nvars()].iter().map(|&v| Rational::from(v)).collect();
        let lambda = q(ln, ld);
        let scaled: Vec<Rational> = r.iter().map(|v| v * &lambda).collect();
        let a = critical_system(h, &r).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let b = critical_system(h, &scaled).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(&a, &b);
        let pa = solve_critical(&a);
        let pb = solve_critical(&b);
        match (pa, pb) {
            (Ok(pa), Ok(pb)) => {
                prop_assert_eq!(pa.len(), pb.len());
                for (u, v) in pa.iter().zip(&pb) {
                    for (s, t) in u.coords.iter().zip(&v.coords) {
                        let diff = (s - t).abs();
                        prop_assert!(is_zero(&diff) || to_f64(&diff) < 1e-30);
                    }
                }
            }
            (Err(x), Err(y)) => prop_assert_eq!(x, y),
            (x, y) => prop_assert!(false, "solvers disagree: {:?} vs {:?}", x.err(), y.err()),
        }
        Ok(())
    })
}

fn callan_text(a: i64, b: i64) -> String {
    format!("{b}*x^2*Y^2 + ({}*x^2 + {a}*x - 1)*Y + {b}*x^2 + {a}*x", 2 * b)
}

/// Every embedding the pipeline reaches an expansion for has `G(w) = 0`
/// and hence `a_0 = 0` exactly.
pub fn a0_vanishing(cases: u32) -> Result<(), String> {
    // Callan (a, b), or dissections at p = k/den strictly inside (1/3, 1/2).
    let callan = (1i64..=5, 1i64..=8).prop_map(|(a, b)| (callan_text(a, b), vec![Rational::ONE]));
    let dissections = (7i64..=30).prop_flat_map(|den| {
        let lo = den / 3 + 1;
        let hi = (den - 1) / 2;
        (Just(den), lo..=hi.max(lo))
    });
    let dissections = dissections.prop_filter_map("p in (1/3, 1/2)", |(den, k)| {
        (3 * k > den && 2 * k < den).then(|| {
            (
                "x*y^2*(1 + Y)^2 + x*y*(1 + Y)*Y - Y".to_string(),
                vec![q(k, den), q(den - k, den)],
            )
        })
    });
    let strategy = prop_oneof![callan, dissections];
    drive(cases, strategy, |(text, dir)| {
        let vars: &[&str] = if dir.len() == 1 { &["x"] } else { &["x", "y"] };
        let mut p = problem_from_text("a0", "Y", vars, &text, &dir).unwrap();
        p.preprocessing = Preprocessing::Steps(vec![]);
        p.pivot = Some("x".into());
        let o = run(&p, Stage::Asympt).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(o.succeeded(), "{}: {:?}", text, o.failure);
        let ax = o.expansion.unwrap();
        prop_assert!(ax.constants[0].is_zero(), "a0 = {:?}", ax.constants[0]);
        prop_assert_eq!(ax.leading, 1);
        let gw = o.numerator_at_minimal.unwrap();
        prop_assert!(gw.is_zero() || to_f64(&gw.abs()) < 1e-20);
        Ok(())
    })
}

/// `f = 1 + x (a f + b f^2)` embedded by constant-term subtraction and by
/// the multiplicative shift: identical asymptotics.
pub fn route_independence(cases: u32) -> Result<(), String> {
    drive(cases, (0i64..=4, 1i64..=5), |(a, b)| {
        let text = format!("{b}*x*Y^2 + ({a}*x - 1)*Y + 1");
        let route = |steps: Vec<PreprocStep>| {
            let mut p = problem_from_text("route", "Y", &["x"], &text, &[Rational::ONE]).unwrap();
            p.origin = Rational::ONE;
            p.pivot = Some("x".into());
            p.preprocessing = Preprocessing::Steps(steps);
            let o = run(&p, Stage::Asympt).unwrap();
            (o.failure.clone(), o.asymptotics)
        };
        let f0 = MultiPoly::constant(&ring(&["Y", "x"]), Rational::ONE);
        let (fa, f1) = route(vec![PreprocStep::AdditiveShift { f0 }]);
        let (fb, f2) = route(vec![PreprocStep::MultiplicativeShift { var: "x".into() }]);
        prop_assert!(fa.is_none() && fb.is_none(), "{}: {:?} / {:?}", text, fa, fb);
        let (f1, f2) = (f1.unwrap(), f2.unwrap());
        prop_assert_eq!(&f1.alpha, &f2.alpha);
        let rel = |x: &algcoef_core::numeric::Float, y: &algcoef_core::numeric::Float| {
            to_f64(&((x - y) / y)).abs()
        };
        prop_assert!(rel(&f1.rho, &f2.rho) < 1e-10, "rho {} vs {}", to_f64(&f1.rho), to_f64(&f2.rho));
        prop_assert!(rel(&f1.constant, &f2.constant) < 1e-10, "C {} vs {}", to_f64(&f1.constant), to_f64(&f2.constant));
        Ok(())
    })
}
