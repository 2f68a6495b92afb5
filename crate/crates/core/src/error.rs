use thiserror::Error;

/// Errors raised by every module of the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable sets differ: {left} vs {right}")]
    VariableMismatch { left: String, right: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable name `{0}` is already in use")]
    NameCollision(String),

    #[error("the distinguished variable `{0}` cannot be bound")]
    DistinguishedBinding(String),

    #[error("result leaves the truncation window: {0}")]
    WindowOverflow(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("degenerate degrees: {0}")]
    DegenerateDegree(String),

    #[error("polynomial is not simple in `{0}`")]
    NotSimple(String),

    #[error("the two pairing variables must differ (got `{0}` twice)")]
    SameVariable(String),

    #[error("polynomial does not vanish at the origin")]
    NotVanishingAtOrigin,

    #[error("leaf `{label}` depends on `{var}`")]
    LeafDependsOn { label: String, var: String },

    #[error("leaf `{0}` vanishes identically after binding")]
    IdenticallyZeroLeaf(String),

    #[error("need at least {needed} nonzero coefficients, found {found}")]
    TooFewCoefficients { needed: usize, found: usize },

    #[error("coefficient tail is identically zero")]
    AllZeroTail,

    #[error("{nodes} quadrature nodes alias Fourier modes up to {highest}")]
    Aliasing { nodes: usize, highest: usize },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
