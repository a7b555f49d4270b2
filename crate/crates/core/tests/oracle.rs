//! Exact-series oracles on small, independently known tables.

use algcoef_core::numeric::{rational_from_ints, Rational};
use algcoef_core::pipeline::{empirical_coefficients, problem_from_text};
use algcoef_core::poly::{parse_polynomial, MultiPoly, VarList};
use algcoef_core::series::{branch_expand, elementary_diagonal, rational_expand, TruncatedSeries};
use algcoef_core::Error;

fn ints(v: &[(u64, Rational)]) -> Vec<i64> {
    v.iter().map(|(_, c)| c.to_string().parse().unwrap()).collect()
}

#[test]
fn catalan_numbers() {
    let mut p = problem_from_text("catalan", "Y", &["x"], "x*Y^2 - Y + 1", &[Rational::ONE]).unwrap();
    p.origin = Rational::ONE;
    let got = empirical_coefficients(&p, &[0, 1, 2, 3, 4, 5, 10]).unwrap();
    assert_eq!(ints(&got), [1, 1, 2, 5, 14, 42, 16796]);
}

#[test]
fn central_binomials_from_diagonal() {
    let r = VarList::new(["Y", "x"]).unwrap();
    let g = MultiPoly::one(&r);
    let h = parse_polynomial("1 - Y - x", &r).unwrap();
    let d = elementary_diagonal(&rational_expand(&g, &h, 20).unwrap(), 0, 1).unwrap();
    let want = [1, 2, 6, 20, 70, 252, 924, 3432, 12870, 48620, 184756];
    for (n, w) in want.iter().enumerate() {
        assert_eq!(d.coeff(&[n as u32]), Rational::from(*w));
    }
}

/// Schröder trees by fixed-point iteration of `V = xy + y V^2 / (1 - V)`,
/// compared with the Newton branch of the cleared polynomial.
#[test]
fn schroeder_trees_fixed_point() {
    const N: u32 = 10;
    let r = VarList::new(["x", "y"]).unwrap();
    let xy = TruncatedSeries::from_poly(&parse_polynomial("x*y", &r).unwrap(), N);
    let y = TruncatedSeries::from_poly(&parse_polynomial("y", &r).unwrap(), N);
    let one = TruncatedSeries::from_poly(&MultiPoly::one(&r), N);
    let mut v = TruncatedSeries::zero(&r, N);
    for _ in 0..=N {
        let quotient = v.mul(&v).mul(&one.sub(&v).inverse().unwrap());
        v = xy.add(&y.mul(&quotient));
    }
    let ring = VarList::new(["Y", "x", "y"]).unwrap();
    let p = parse_polynomial("(Y - x*y)*(1 - Y) - y*Y^2", &ring).unwrap();
    assert_eq!(branch_expand(&p, N).unwrap(), v);
    // One leaf: the single tree; two leaves: the binary root.
    assert_eq!(v.coeff(&[1, 1]), Rational::ONE);
    assert_eq!(v.coeff(&[2, 3]), Rational::ONE);
}

#[test]
fn dissections_need_integral_indices() {
    let dir = [rational_from_ints(2, 5), rational_from_ints(3, 5)];
    let p = problem_from_text("d", "Y", &["x", "y"], "x*y^2*(1 + Y)^2 + x*y*(1 + Y)*Y - Y", &dir).unwrap();
    assert_eq!(empirical_coefficients(&p, &[7]), Err(Error::NonIntegralIndex(7)));
    let got = empirical_coefficients(&p, &[0, 5]).unwrap();
    assert_eq!(got[0].1, Rational::ZERO);
    assert!(got[1].1 > Rational::ZERO);
}
