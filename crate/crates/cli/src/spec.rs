//! Problem files: JSON documents describing one series and the coefficient
//! direction to study. Rationals are strings (`"2/5"`).

use std::fs;
use std::path::{Path, PathBuf};

use algcoef_core::embed::PreprocStep;
use algcoef_core::numeric::{parse_rational, Rational, DEFAULT_PRECISION_BITS, MAX_PRECISION_BITS};
use algcoef_core::pipeline::{Preprocessing, Problem};
use algcoef_core::poly::{parse_polynomial, VarList};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepSpec {
    AdditiveShift { f0: String },
    MonomialSub { source: String, carrier: String },
    MultiplicativeShift { var: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PreprocSpec {
    /// Only `"auto"` is accepted.
    Keyword(String),
    Steps(Vec<StepSpec>),
}

impl Default for PreprocSpec {
    fn default() -> Self {
        PreprocSpec::Keyword("auto".into())
    }
}

fn default_unknown() -> String {
    "Y".into()
}
fn default_pivot() -> String {
    "auto".into()
}
fn default_one() -> u32 {
    1
}
fn default_scale() -> String {
    "1".into()
}
fn default_order() -> u32 {
    12
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub name: String,
    /// Series variables, in order.
    pub variables: Vec<String>,
    /// Name of the unknown in `minimal_polynomial`.
    #[serde(default = "default_unknown")]
    pub unknown: String,
    pub minimal_polynomial: String,
    /// `f(0)`, selecting the branch; zero when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin_value: Option<String>,
    #[serde(default)]
    pub preprocessing: PreprocSpec,
    #[serde(default = "default_pivot")]
    pub pivot: String,
    #[serde(default = "default_one")]
    pub multiplicity: u32,
    pub direction: Vec<String>,
    /// Report `[x^{m s r}] f` against `m`.
    #[serde(default = "default_scale")]
    pub scale: String,
    /// Order of the exact embedding-identity check.
    #[serde(default = "default_order")]
    pub oracle_order: u32,
    #[serde(default = "default_one")]
    pub k_max: u32,
    /// Validation grid for the verify stage.
    #[serde(default)]
    pub n_grid: Vec<u64>,
}

/// Command-line overrides applied on top of a problem file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub direction: Option<Vec<String>>,
    pub order: Option<u32>,
    pub k_max: Option<u32>,
    pub precision: Option<usize>,
}

impl ProblemSpec {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text, path)
    }

    pub fn from_json(text: &str, path: &Path) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Json {
            path: path.to_path_buf(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_problem(&self, path: &Path, o: &Overrides) -> Result<Problem, CliError> {
        let bad = |message: String| CliError::Spec {
            path: PathBuf::from(path),
            message,
        };
        let names: Vec<&str> = std::iter::once(self.unknown.as_str())
            .chain(self.variables.iter().map(String::as_str))
            .collect();
        let ring = VarList::new(names).map_err(|e| bad(format!("variables: {e}")))?;
        let parse = |what: &str, text: &str| {
            parse_polynomial(text, &ring).map_err(|e| bad(format!("{what}: {e}")))
        };
        let rational = |what: &str, text: &str| {
            parse_rational(text).ok_or_else(|| bad(format!("{what}: `{text}` is not a rational")))
        };
        let polynomial = parse("minimal_polynomial", &self.minimal_polynomial)?;
        let origin = match &self.origin_value {
            Some(t) => rational("origin_value", t)?,
            None => Rational::ZERO,
        };
        let preprocessing = match &self.preprocessing {
            PreprocSpec::Keyword(k) if k == "auto" => Preprocessing::Auto,
            PreprocSpec::Keyword(k) => return Err(bad(format!("preprocessing: unknown keyword `{k}`"))),
            PreprocSpec::Steps(steps) => Preprocessing::Steps(
                steps
                    .iter()
                    .map(|s| {
                        Ok(match s {
                            StepSpec::AdditiveShift { f0 } => PreprocStep::AdditiveShift {
                                f0: parse("preprocessing f0", f0)?,
                            },
                            StepSpec::MonomialSub { source, carrier } => PreprocStep::MonomialSub {
                                source: source.clone(),
                                carrier: carrier.clone(),
                            },
                            StepSpec::MultiplicativeShift { var } => {
                                PreprocStep::MultiplicativeShift { var: var.clone() }
                            }
                        })
                    })
                    .collect::<Result<_, CliError>>()?,
            ),
        };
        let direction_text = o.direction.as_ref().unwrap_or(&self.direction);
        let direction = direction_text
            .iter()
            .map(|t| rational("direction", t))
            .collect::<Result<Vec<_>, _>>()?;
        if direction.len() != self.variables.len() {
            return Err(bad(format!(
                "direction has {} entries but there are {} variables",
                direction.len(),
                self.variables.len()
            )));
        }
        let k_max = o.k_max.unwrap_or(self.k_max);
        if k_max > 1 {
            return Err(bad(format!("k_max must be 0 or 1, got {k_max}")));
        }
        let precision = o.precision.unwrap_or(DEFAULT_PRECISION_BITS);
        if !(128..=MAX_PRECISION_BITS).contains(&precision) {
            return Err(bad(format!("precision must be between 128 and {MAX_PRECISION_BITS} bits")));
        }

        let mut p = Problem::new(&self.name, polynomial, direction);
        p.origin = origin;
        p.preprocessing = preprocessing;
        p.pivot = (self.pivot != "auto").then(|| self.pivot.clone());
        p.multiplicity = self.multiplicity;
        p.scale = rational("scale", &self.scale)?;
        p.oracle_order = o.order.unwrap_or(self.oracle_order);
        p.k_max = k_max;
        p.n_grid = self.n_grid.clone();
        p.precision = precision;
        p.validate_input().map_err(|e| bad(e.to_string()))?;
        Ok(p)
    }
}

/// Split `"p1,p2,..."`.
pub fn parse_direction_flag(s: &str) -> Vec<String> {
    s.split(',').map(|t| t.trim().to_string()).collect()
}
