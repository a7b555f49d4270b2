//! Combinatoriality and aperiodicity certificates for `1/H`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::numeric::{rational_is_negative, Rational};
use crate::poly::MultiPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertStatus {
    Certified,
    Unknown,
}

/// `H = c * (1 - K)`; certified when every coefficient of `K` is nonnegative.
#[derive(Clone, Debug, PartialEq)]
pub struct CombCertificate {
    pub status: CertStatus,
    pub k: Option<MultiPoly>,
    pub c: Rational,
    /// `K` even when uncertified, for diagnostics.
    pub candidate: MultiPoly,
}

impl CombCertificate {
    pub fn is_certified(&self) -> bool {
        self.status == CertStatus::Certified
    }
}

pub fn combinatorial_certificate(h: &MultiPoly) -> Result<CombCertificate> {
    let c = h.constant_term();
    if c.is_zero() {
        return Err(Error::SingularDenominator);
    }
    let k = &MultiPoly::one(h.vars()) - &h.scale(&(Rational::ONE / &c));
    let ok = k.terms().all(|(_, v)| !rational_is_negative(v));
    Ok(CombCertificate {
        status: if ok { CertStatus::Certified } else { CertStatus::Unknown },
        k: ok.then(|| k.clone()),
        c,
        candidate: k,
    })
}

/// Lattice generated by a set of exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeInfo {
    pub rank: usize,
    pub dimension: usize,
    /// Index in the full lattice; only meaningful at full rank.
    pub index: u128,
    /// Hermite normal form rows (upper triangular, positive pivots).
    pub hnf: Vec<Vec<i128>>,
}

impl LatticeInfo {
    pub fn is_full(&self) -> bool {
        self.rank == self.dimension && self.index == 1
    }

    pub fn describe(&self) -> String {
        if self.rank < self.dimension {
            format!(
                "support spans a rank-{} sublattice of Z^{} (basis {:?})",
                self.rank, self.dimension, self.hnf
            )
        } else {
            format!(
                "support generates a sublattice of index {} (basis {:?})",
                self.index, self.hnf
            )
        }
    }
}

/// Hermite normal form of the row lattice spanned by `rows`.
pub fn hermite_normal_form(rows: &[Vec<i64>], dimension: usize) -> LatticeInfo {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..dimension {
        loop {
            // Smallest nonzero entry at or below the current rank row.
            let pick = (rank..m.len())
                .filter(|&i| m[i][col] != 0)
                .min_by_key(|&i| m[i][col].unsigned_abs());
            let Some(p) = pick else { break };
            m.swap(rank, p);
            let mut done = true;
            for i in rank + 1..m.len() {
                if m[i][col] != 0 {
                    let q = m[i][col].div_euclid(m[rank][col]);
                    for j in 0..dimension {
                        let v = m[rank][j];
                        m[i][j] -= q * v;
                    }
                    if m[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if rank < m.len() && m[rank][col] != 0 {
            if m[rank][col] < 0 {
                for v in m[rank].iter_mut() {
                    *v = -*v;
                }
            }
            // Reduce the rows above modulo the new pivot.
            for i in 0..rank {
                let q = m[i][col].div_euclid(m[rank][col]);
                for j in 0..dimension {
                    let v = m[rank][j];
                    m[i][j] -= q * v;
                }
            }
            rank += 1;
        }
    }
    m.truncate(rank);
    let index = if rank == dimension {
        (0..rank).map(|i| m[i][i].unsigned_abs()).product()
    } else {
        0
    };
    LatticeInfo {
        rank,
        dimension,
        index,
        hnf: m,
    }
}

/// Lattice generated by the support of `k`.
pub fn support_lattice(k: &MultiPoly) -> LatticeInfo {
    let rows: Vec<Vec<i64>> = k
        .terms()
        .map(|(m, _)| m.0.iter().map(|&e| i64::from(e)).collect())
        .collect();
    hermite_normal_form(&rows, k.nvars())
}

/// The support of `K` generates all of `Z^d`.
pub fn aperiodicity_check(k: &MultiPoly) -> bool {
    !k.is_zero() && support_lattice(k).is_full()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, VarList};
    use alloc::vec;

    fn p(text: &str) -> MultiPoly {
        let v = VarList::new(["Y", "x"]).unwrap();
        parse_polynomial(text, &v).unwrap()
    }

    #[test]
    fn certificates() {
        let c = combinatorial_certificate(&p("1 - Y - x")).unwrap();
        assert!(c.is_certified());
        assert_eq!(c.k, Some(p("Y + x")));
        let callan = p("1 - (Y^3*4*x^2 + 2*Y^2*4*x^2 + Y*4*x^2 + Y*x + x)");
        assert!(combinatorial_certificate(&callan).unwrap().is_certified());
        let bad = combinatorial_certificate(&p("1 - x + x^2")).unwrap();
        assert_eq!(bad.status, CertStatus::Unknown);
        assert!(bad.k.is_none());
        let scaled = combinatorial_certificate(&p("2 - 2*Y - x")).unwrap();
        assert_eq!(scaled.c, Rational::from(2));
        assert!(combinatorial_certificate(&p("Y + x")).is_err());
    }

    #[test]
    fn aperiodicity() {
        assert!(aperiodicity_check(&p("Y + x")));
        assert!(!aperiodicity_check(&p("Y^2 + x^2")));
        assert_eq!(support_lattice(&p("Y^2 + x^2")).index, 4);
        let callan_k = p("Y^3*4*x^2 + 2*Y^2*4*x^2 + Y*4*x^2 + Y*x + x");
        assert!(aperiodicity_check(&callan_k));
        assert!(!aperiodicity_check(&p("Y*x")));
        assert_eq!(support_lattice(&p("Y*x + Y^2*x^2")).rank, 1);
    }

    #[test]
    fn hnf_shape() {
        let info = hermite_normal_form(&[vec![4, 6], vec![6, 4]], 2);
        assert_eq!(info.index, 20);
        assert_eq!(info.hnf[1][0], 0);
        assert!(info.hnf[0][0] > 0 && info.hnf[1][1] > 0);
        assert!((0..info.hnf[1][1]).contains(&info.hnf[0][1]));
    }
}
