//! Multivariate gcd over Q by recursive primitive polynomial remainder
//! sequences. Inputs here are small (a few variables, low degree), so the
//! classical algorithm is plenty.

use alloc::vec::Vec;

use super::{Monomial, MultiPoly};

/// Normalized gcd: integer-primitive with positive leading coefficient.
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let order: Vec<usize> = (0..a.nvars()).collect();
    gcd_rec(a, b, &order).primitive_integer()
}

fn gcd_rec(a: &MultiPoly, b: &MultiPoly, order: &[usize]) -> MultiPoly {
    if a.is_zero() {
        return b.primitive_integer();
    }
    if b.is_zero() {
        return a.primitive_integer();
    }
    let Some(pos) = order.iter().position(|&v| a.depends_on(v) || b.depends_on(v)) else {
        return MultiPoly::one(a.vars());
    };
    let v = order[pos];
    let rest = &order[pos + 1..];

    let ca = content_rec(a, v, rest);
    let cb = content_rec(b, v, rest);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g_content = gcd_rec(&ca, &cb, rest);

    let (mut f, mut g) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        if g.degree_in(v) == 0 {
            // Primitive and constant in v: the primitive gcd is trivial.
            return g_content;
        }
        let r = pseudo_remainder(&f, &g, v);
        if r.is_zero() {
            break;
        }
        f = g;
        let cr = content_rec(&r, v, rest);
        g = r.div_exact(&cr).expect("content divides");
    }
    (&g * &g_content).primitive_integer()
}

fn content_rec(p: &MultiPoly, v: usize, rest: &[usize]) -> MultiPoly {
    let mut acc = MultiPoly::zero(p.vars());
    for c in p.coefficients_in(v) {
        if c.is_zero() {
            continue;
        }
        acc = gcd_rec(&acc, &c, rest);
        if acc.is_constant() {
            return MultiPoly::one(p.vars());
        }
    }
    acc
}

fn pseudo_remainder(f: &MultiPoly, g: &MultiPoly, v: usize) -> MultiPoly {
    let dg = g.degree_in(v);
    let lc = g.leading_coefficient_in(v);
    let mut r = f.clone();
    debug_assert!(dg > 0);
    while !r.is_zero() && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let mut shift = Monomial::one(f.nvars());
        shift.0[v] = dr - dg;
        let s = r.leading_coefficient_in(v).mul_monomial(&shift);
        r = &(&r * &lc) - &(&s * g);
    }
    r
}

/// Gcd of the coefficients of `p` viewed as a polynomial in variable `v`.
pub fn content_in(p: &MultiPoly, v: usize) -> MultiPoly {
    let rest: Vec<usize> = (0..p.nvars()).filter(|&i| i != v).collect();
    content_rec(p, v, &rest).primitive_integer()
}

pub fn primitive_part_in(p: &MultiPoly, v: usize) -> MultiPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").primitive_integer()
}

/// `p / gcd(p, dp/dv)`, the product of the distinct irreducible factors
/// of `p` that involve `v`, up to content in `v`.
pub fn squarefree_part_in(p: &MultiPoly, v: usize) -> MultiPoly {
    let pp = primitive_part_in(p, v);
    if !pp.depends_on(v) {
        return pp;
    }
    let g = gcd(&pp, &pp.derivative(v));
    pp.div_exact(&g).expect("gcd divides").primitive_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, VarList};

    fn p(s: &str) -> MultiPoly {
        let v = VarList::new(["Y", "x", "y"]).unwrap();
        parse_polynomial(s, &v).unwrap()
    }

    #[test]
    fn gcd_basic() {
        assert_eq!(gcd(&p("(Y - x)*(Y + y)"), &p("(Y - x)*(Y - y)")), p("Y - x"));
        assert_eq!(gcd(&p("6*x*y"), &p("4*x^2")), p("x"));
        assert_eq!(gcd(&p("Y + 1"), &p("Y - 1")), p("1"));
        assert_eq!(gcd(&p("0"), &p("-2*Y + 4")), p("Y - 2"));
        let f = p("(x*Y^2 - Y + 1)*(Y*y - x)^2");
        let g = p("(x*Y^2 - Y + 1)*(Y*y - x)*(Y + x + y)");
        assert_eq!(gcd(&f, &g), p("(x*Y^2 - Y + 1)*(Y*y - x)").primitive_integer());
    }

    #[test]
    fn content_and_squarefree() {
        let f = p("x*(x + y)*Y^2 - (x + y)*Y");
        assert_eq!(content_in(&f, 0), p("x + y"));
        assert_eq!(primitive_part_in(&f, 0), p("x*Y^2 - Y"));
        let g = p("(Y - x)^3*(Y + 1)*y^2");
        assert_eq!(squarefree_part_in(&g, 0), p("(Y - x)*(Y + 1)").primitive_integer());
    }
}
