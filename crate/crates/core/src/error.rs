use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("non-associative at ({i},{j},{l})")]
    NonAssociative { i: usize, j: usize, l: usize },

    #[error("unit law fails at {0}")]
    UnitLaw(usize),

    #[error("{0}")]
    Shape(String),

    #[error("B not commutative at ({0},{1})")]
    NotCommutative(usize, usize),

    #[error("ε not multiplicative at ({0},{1})")]
    EpsNotMultiplicative(usize, usize),

    #[error("ε not unital")]
    EpsNotUnital,

    #[error("image not central: ε(b{b}) does not commute with a{a}")]
    ImageNotCentral { b: usize, a: usize },

    #[error("bimodule axiom fails: {0}")]
    BimoduleAxiom(String),

    #[error("not a subspace: sub-basis vector {0} lies outside the total space")]
    NotSubspace(usize),

    #[error("size cap exceeded: C^{degree} needs {requested} basis elements, cap is {cap}")]
    SizeCap { degree: usize, requested: u128, cap: usize },

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("degree out of range: {0}")]
    DegreeOutOfRange(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("not a cocycle")]
    NotCocycle,

    #[error("not a derivation{0}")]
    NotDerivation(String),

    #[error("coefficients must be A")]
    CoefficientsMustBeA,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SizeCap { .. } => 3,
            Error::Precondition(_)
            | Error::CoefficientsMustBeA
            | Error::NotCocycle
            | Error::NotDerivation(_)
            | Error::DegreeOutOfRange(_)
            | Error::IndexOutOfRange(_)
            | Error::Mismatch(_) => 4,
            Error::Invariant(_) => 1,
            _ => 2,
        }
    }
}
