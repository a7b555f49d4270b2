use alloc::string::String;

/// Everything that can go wrong in the core library.
///
/// Variants split into two classes: structured mathematical outcomes
/// (a certificate failed, no critical point qualifies, ...) and input or
/// usage errors. [`Error::is_mathematical`] tells them apart.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("undeclared variable `{name}` at offset {offset}")]
    UndeclaredVariable { name: String, offset: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid variable list: {0}")]
    InvalidVarList(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("both polynomials are constant in `{0}`")]
    ConstantInVariable(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no branch through the origin: P(0,0) = {0}")]
    NoBranchThroughOrigin(String),
    #[error("multiple/degenerate branch: dP/dY vanishes at the origin (H2 fails)")]
    DegenerateBranch,
    #[error("denominator vanishes at the origin")]
    SingularDenominator,
    #[error("the branch is not divisible by `{0}` (H1 fails)")]
    H1Failure(String),
    #[error("no pivot variable satisfies H1 after constant-term removal up to degree 3")]
    NoPivot,
    #[error("branch selection failed: {0}")]
    BranchSelection(String),
    #[error("embedding invalid: {0}")]
    InvalidEmbedding(String),

    #[error("not certified combinatorial: {0}")]
    NotCombinatorial(String),
    #[error("support is periodic: {0}")]
    Periodic(String),
    #[error("no affine critical points")]
    NoAffineCriticalPoints,
    #[error("critical set is not zero-dimensional")]
    PositiveDimensional,
    #[error("no positive critical point in this direction")]
    NoPositiveCriticalPoint,
    #[error("ambiguous minimality: {0} positive critical points")]
    AmbiguousMinimality(usize),
    #[error("critical point is not smooth")]
    NotSmooth,
    #[error("precision exhausted at {0} bits while polishing critical points")]
    PrecisionExhausted(usize),
    #[error("degenerate direction: singular Hessian")]
    DegenerateDirection,
    #[error("no admissible distinguished variable")]
    NoDistinguishedVariable,
    #[error("expansion vanishes to requested depth")]
    ExpansionVanishes,
    #[error("insufficient series order for requested depth")]
    InsufficientOrder,
    #[error("non-invertible rescaling: {0}")]
    NonInvertibleRescaling(String),

    #[error("index n = {0} gives a non-integral coefficient index")]
    NonIntegralIndex(u64),
    #[error("invalid direction: {0}")]
    InvalidDirection(String),
    #[error("validation error: {0}")]
    Validation(String),
}

impl Error {
    /// True for structured mathematical outcomes, false for bad input or misuse.
    pub fn is_mathematical(&self) -> bool {
        matches!(
            self,
            Error::NoBranchThroughOrigin(_)
                | Error::DegenerateBranch
                | Error::SingularDenominator
                | Error::H1Failure(_)
                | Error::NoPivot
                | Error::BranchSelection(_)
                | Error::InvalidEmbedding(_)
                | Error::NotCombinatorial(_)
                | Error::Periodic(_)
                | Error::NoAffineCriticalPoints
                | Error::PositiveDimensional
                | Error::NoPositiveCriticalPoint
                | Error::AmbiguousMinimality(_)
                | Error::NotSmooth
                | Error::PrecisionExhausted(_)
                | Error::DegenerateDirection
                | Error::NoDistinguishedVariable
                | Error::ExpansionVanishes
        )
    }
}

pub type Result<T> = core::result::Result<T, Error>;
