//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("algebra dimension {0} exceeds the default cap {1}; construct with an explicit cap to allow it")]
    DimensionTooLarge(usize, usize),

    #[error("zero vector has no inverse")]
    ZeroVector,

    #[error("operand is not a pure vector")]
    NotAVector,

    #[error("reflection direction must be nonzero")]
    ZeroRoot,

    #[error("internal consistency failure in {context}: {detail}")]
    Internal { context: String, detail: String },

    #[error("polynomial is not a radial multiple of the given monogenic: {0}")]
    DecompositionFailed(String),

    #[error("unknown reflection group family: {0}")]
    UnknownFamily(String),

    #[error("dihedral order {0} has no rational realization; supported orders are 1, 2, 4 (order 3 is realized by family A in dimension 3)")]
    IrrationalDihedral(usize),

    #[error("multiplicity values must be nonnegative")]
    NegativeKappa,

    #[error("the multiplicity sum over positive roots must be positive")]
    ZeroGammaKappa,

    #[error("expected {expected} multiplicity values (one per root orbit), got {got}")]
    KappaCount { expected: usize, got: usize },

    #[error("multiplicity function is not invariant under the group")]
    KappaNotInvariant,

    #[error("polynomial is not Dunkl-monogenic (nonzero Dunkl-Dirac image)")]
    NotMonogenic,

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("operation requires a hyperoctahedral (Z2^d) group; got {0}")]
    UnsupportedGroup(String),

    #[error("gamma function pole or nonpositive argument: {0}")]
    GammaPole(String),

    #[error("symbolic division failed: divisor is {0}")]
    GammaDivision(String),

    #[error("Laguerre parameter must exceed -1, got {0}")]
    LaguerreParameter(String),

    #[error("the lowering constant is undefined at s = 0")]
    CoefficientAtZero,

    #[error("quadrature order {0} is out of range (1..=64); use a smaller order")]
    QuadOrder(usize),

    #[error("Monte Carlo estimation needs at least two samples, got {0}")]
    McSamples(usize),

    #[error("integrand degree {degree} exceeds the exactness of a {order}-point rule")]
    DegreeExceedsRule { degree: usize, order: usize },

    #[error("invalid rational literal {0:?}")]
    ParseRational(String),

    #[error("invalid JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn internal(context: &str, detail: impl Into<String>) -> Self {
        Error::Internal {
            context: context.to_string(),
            detail: detail.into(),
        }
    }
}
