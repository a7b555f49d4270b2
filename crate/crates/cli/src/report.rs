//! Machine-readable run reports. Every number is a decimal string with
//! [`DIGITS`] significant digits (or an exact rational), so the JSON is
//! deterministic and round-trips.

use algcoef_core::critical::{CriticalPoint, Tri};
use algcoef_core::error::Error;
use algcoef_core::numeric::{rational_to_string, to_decimal_string, Complex, Float};
use algcoef_core::pipeline::Outcome;
use algcoef_core::structure::CertStatus;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;
pub const DIGITS: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub problem: String,
    pub stage: String,
    pub status: String,
    pub completed: Vec<String>,
    pub failure: Option<Failure>,
    pub embedding: Option<EmbeddingSection>,
    pub certificates: Option<CertificateSection>,
    pub critical: Option<CriticalSection>,
    pub asymptotics: Option<AsymptoticsSection>,
    pub validation: Option<ValidationSection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub stage: String,
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRow {
    pub shift_degree: u32,
    pub pivot: String,
    pub result: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexMapJson {
    pub matrix: Vec<Vec<i64>>,
    pub offset: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingSection {
    pub variables: Vec<String>,
    pub numerator: String,
    pub denominator: String,
    pub pivot: String,
    pub multiplicity: u32,
    pub trail: Vec<String>,
    pub index_map: IndexMapJson,
    pub verified: Option<bool>,
    pub warnings: Vec<String>,
    pub search: Vec<SearchRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateSection {
    pub combinatorial: String,
    pub k: String,
    pub aperiodic: Option<bool>,
    pub lattice: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: String,
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub coordinates: Vec<ComplexJson>,
    pub residual: String,
    pub precision_bits: usize,
    pub smooth: String,
    pub positive: bool,
    pub minimal: String,
    pub largest_partial: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalSection {
    pub direction: Vec<String>,
    pub embedded_direction: Vec<String>,
    pub points: Vec<PointJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsymptoticsSection {
    /// Coefficient index per unit of `n`, original variables.
    pub index_step: Vec<String>,
    pub rho: String,
    pub rho_radical: Option<String>,
    pub alpha: String,
    pub constant: String,
    pub constant_radical: Option<String>,
    pub minimal_point: Vec<ComplexJson>,
    pub numerator_at_point: Option<ComplexJson>,
    /// Embedded-indexing expansion: `rho_embedded^n n^{-(D-1)/2} Σ a_k n^{-k}`.
    pub rho_embedded: String,
    pub expansion_constants: Vec<ComplexJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationRowJson {
    pub n: u64,
    pub exact: String,
    pub predicted: String,
    pub relative_error: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationSection {
    pub rows: Vec<ValidationRowJson>,
    pub monotone: bool,
    pub limit_ratio: Option<String>,
}

fn dec(x: &Float) -> String {
    to_decimal_string(x, DIGITS)
}

fn cplx(z: &Complex) -> ComplexJson {
    ComplexJson {
        re: dec(&z.re),
        im: dec(&z.im),
    }
}

fn tri(t: Tri) -> String {
    match t {
        Tri::Yes => "yes",
        Tri::No => "no",
        Tri::Unknown => "unknown",
    }
    .into()
}

/// Stable snake-case name of a failure.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Syntax { .. } => "syntax",
        Error::UndeclaredVariable { .. } => "undeclared_variable",
        Error::UnknownVariable(_) => "unknown_variable",
        Error::InvalidVarList(_) => "invalid_variables",
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::ConstantInVariable(_) => "constant_in_variable",
        Error::InvalidArgument(_) => "invalid_argument",
        Error::NoBranchThroughOrigin(_) => "no_branch_through_origin",
        Error::DegenerateBranch => "h2_failure",
        Error::SingularDenominator => "singular_denominator",
        Error::H1Failure(_) => "h1_failure",
        Error::NoPivot => "no_pivot",
        Error::BranchSelection(_) => "branch_selection",
        Error::InvalidEmbedding(_) => "invalid_embedding",
        Error::NotCombinatorial(_) => "not_combinatorial",
        Error::Periodic(_) => "periodic",
        Error::NoAffineCriticalPoints => "no_affine_critical_points",
        Error::PositiveDimensional => "positive_dimensional",
        Error::NoPositiveCriticalPoint => "no_positive_critical_point",
        Error::AmbiguousMinimality(_) => "ambiguous_minimality",
        Error::NotSmooth => "not_smooth",
        Error::PrecisionExhausted(_) => "precision_exhausted",
        Error::DegenerateDirection => "degenerate_direction",
        Error::NoDistinguishedVariable => "no_distinguished_variable",
        Error::ExpansionVanishes => "expansion_vanishes",
        Error::InsufficientOrder => "insufficient_order",
        Error::NonInvertibleRescaling(_) => "non_invertible_rescaling",
        Error::NonIntegralIndex(_) => "non_integral_index",
        Error::InvalidDirection(_) => "invalid_direction",
        Error::Validation(_) => "validation",
    }
}

fn point(p: &CriticalPoint, names: &[String]) -> PointJson {
    PointJson {
        coordinates: p.coords.iter().map(cplx).collect(),
        residual: dec(&p.residual),
        precision_bits: p.precision,
        smooth: tri(p.smooth),
        positive: p.positive,
        minimal: tri(p.minimal),
        largest_partial: p.largest_partial.map(|i| names[i].clone()),
    }
}

impl Report {
    pub fn from_outcome(o: &Outcome) -> Report {
        let embedding = o.embedding.as_ref().map(|e| EmbeddingSection {
            variables: e.vars().names().to_vec(),
            numerator: e.g.to_string(),
            denominator: e.h.to_string(),
            pivot: e.pivot.clone(),
            multiplicity: e.multiplicity,
            trail: e.trail.iter().map(ToString::to_string).collect(),
            index_map: IndexMapJson {
                matrix: e.map.matrix.clone(),
                offset: e.map.offset.clone(),
            },
            verified: o.embedding_verified,
            warnings: e.warnings.clone(),
            search: o
                .search
                .iter()
                .map(|s| SearchRow {
                    shift_degree: s.shift_degree,
                    pivot: s.pivot.clone(),
                    result: s.result.clone(),
                })
                .collect(),
        });
        let names: Vec<String> = o
            .embedding
            .as_ref()
            .map(|e| e.vars().names().to_vec())
            .unwrap_or_default();
        let certificates = o.certificate.as_ref().map(|c| CertificateSection {
            combinatorial: match c.status {
                CertStatus::Certified => "certified",
                CertStatus::Unknown => "unknown",
            }
            .into(),
            k: c.candidate.to_string(),
            aperiodic: o.aperiodic,
            lattice: o.lattice.as_ref().map(|l| l.describe()),
        });
        let critical = o.direction.as_ref().map(|d| CriticalSection {
            direction: d.original.iter().map(rational_to_string).collect(),
            embedded_direction: d.embedded.iter().map(rational_to_string).collect(),
            points: o.critical_points.iter().map(|p| point(p, &names)).collect(),
        });
        let asymptotics = match (&o.asymptotics, &o.expansion, &o.minimal) {
            (Some(a), Some(x), Some(w)) => Some(AsymptoticsSection {
                index_step: a.direction.iter().map(rational_to_string).collect(),
                rho: dec(&a.rho),
                rho_radical: a.rho_radical.clone(),
                alpha: rational_to_string(&a.alpha),
                constant: dec(&a.constant),
                constant_radical: a.constant_radical.clone(),
                minimal_point: w.coords.iter().map(cplx).collect(),
                numerator_at_point: o.numerator_at_minimal.as_ref().map(cplx),
                rho_embedded: dec(&x.rho),
                expansion_constants: x.constants.iter().map(cplx).collect(),
            }),
            _ => None,
        };
        let validation = o.validation.as_ref().map(|v| ValidationSection {
            rows: v
                .rows
                .iter()
                .map(|r| ValidationRowJson {
                    n: r.n,
                    exact: rational_to_string(&r.exact),
                    predicted: dec(&r.predicted),
                    relative_error: to_decimal_string(&r.relative_error, 12),
                })
                .collect(),
            monotone: v.monotone,
            limit_ratio: v.limit_ratio.as_ref().map(|x| to_decimal_string(x, 12)),
        });
        Report {
            schema_version: SCHEMA_VERSION,
            problem: o.problem.clone(),
            stage: o.requested.name().into(),
            status: if o.failure.is_some() { "failure" } else { "ok" }.into(),
            completed: o.completed.iter().map(|s| s.name().to_string()).collect(),
            failure: o.failure.as_ref().map(|(s, e)| Failure {
                stage: s.name().into(),
                kind: error_kind(e).into(),
                message: e.to_string(),
            }),
            embedding,
            certificates,
            critical,
            asymptotics,
            validation,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
