use scalar_expr::CalculusError;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormError {
    #[error("operands live on different coframes")]
    MixedCoframes,
    #[error("degree {0} exceeds the supported cap of 4")]
    DegreeCap(u8),
    #[error("unknown basis symbol {0:?}")]
    UnknownSymbol(String),
    #[error("basis symbol {0:?} has no conjugate partner")]
    MissingConjugate(String),
    #[error("conjugation pairing of {0:?} and {1:?} is not symmetric")]
    AsymmetricPairing(String, String),
    #[error("duplicate basis symbol {0:?}")]
    DuplicateSymbol(String),
    #[error("coframe is not bound to a coordinate chart")]
    NotAChartCoframe,
    #[error("no structure equation declared for {0:?}")]
    MissingStructureEquation(String),
    #[error("coefficient depends on {0:?}, which has no declared differential")]
    UndeclaredDifferential(String),
    #[error("differential of {0:?} is an unknown placeholder")]
    PlaceholderDifferential(String),
    #[error("substitution dictionary has no entry for {0:?}")]
    MissingSubstitution(String),
    #[error("substitution entries must be one-forms")]
    NonLinearSubstitution,
    #[error("matrix dimensions do not match")]
    DimensionMismatch,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error(transparent)]
    Calculus(#[from] CalculusError),
}
