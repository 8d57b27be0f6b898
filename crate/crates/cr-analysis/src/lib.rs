//! CR analysis of tube hypersurfaces z4 + conj(z4) = f(x1, x2, x3).
//!
//! Everything is driven by the defining function f: the contact form, the
//! Levi matrix of second partials, a degeneracy certificate, and a coframe
//! that diagonalizes the Levi form with a one-dimensional kernel. On the
//! degenerate (but 2-nondegenerate) hypersurfaces the coframe carries a
//! residual cubic tensor, stored as a 2x2 matrix u against the Levi 2x2
//! block l. The remaining operations classify the pair (l, u) up to the
//! first-stage structure group and produce the group element normalizing it
//! to the model value.

mod coframe;
mod cubic;
mod defining;
mod normalize;
mod report;

use exterior_forms::FormError;
use scalar_expr::{CalculusError, EvalError, ParseError, ZeroTestError};
use thiserror::Error;

pub use coframe::{
    diagonalizing_coframe, restrict_to_hypersurface, Sign, SignPair,
};
pub use cubic::{
    conformal_unitary_check, cubic_matrix, isotropy_class, CubicData, IsotropyClass,
};
pub use defining::{
    contact_form, degeneracy_residual, degeneracy_split_residuals, levi_matrix, DefiningFunction,
};
pub use normalize::{
    classify_triple, normalize_cubic, transport_triple, CubicTriple, FiberMove, NormalizedCubic,
};
pub use report::{analyze, analysis_config, AnalysisRecord, CubicRecord};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("defining function must be real: conjugation changes it")]
    NotReal,
    #[error("defining function may only use x1, x2, x3; found `{0}`")]
    UnknownCoordinate(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("coframe is not Levi-diagonalizing: residual term {0}")]
    NotDiagonalizing(String),
    #[error("coframe does not have the adapted shape: {0}")]
    ShapeViolation(String),
    #[error("coframe matrix is not invertible")]
    SingularCoframe,
    #[error("cubic tensor vanishes: hypersurface is not 2-nondegenerate")]
    NotTwoNondegenerate,
    #[error("cubic data violates the conformal-unitary relations: {0}")]
    ConstraintViolation(String),
    #[error("isotropy-preserving cubic: normalization not supported")]
    UnsupportedClass,
    #[error("degenerate cubic: |U| = |U1| admits no normalization")]
    DegenerateCubic,
    #[error("normalization failed: {0}")]
    Unnormalizable(String),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    ZeroTest(#[from] ZeroTestError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
}
