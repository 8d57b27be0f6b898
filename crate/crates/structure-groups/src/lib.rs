//! Matrix groups of the coframe adaptation tower and the associated
//! Cartan-type connection.
//!
//! The tower starts from a block-triangular subgroup of GL(4, C) and cuts it
//! down in stages until only a one-parameter prolongation variable remains.
//! Elements are stored symbolically, so group identities can be checked
//! exactly on rational data and numerically otherwise. The final stage
//! packages the fifteen connection one-forms into a trace-free matrix that is
//! skew-adjoint for the invariant hermitian pairing, together with its
//! structure equations and the curvature they produce.

mod group;
mod hermitian;
mod membership;
mod parallelism;
mod pstar;

use scalar_expr::{is_zero, ScalarExpr, ZeroTestConfig, ZeroTestError};
use thiserror::Error;

pub use group::{matrix_of, G0Params, G2Params, G3Params, G4Params, GroupElement, ProlongationParams};
pub use hermitian::{is_hermitian_frame, HermitianForm};
pub use membership::{in_g0, in_g1, in_g2, in_g3, in_g4, in_su_star, in_su_star_form};
pub use parallelism::{
    adjoint, assemble_omega, basis_omega, connection_core, connection_core_with,
    connection_curvature, equivariance_residual, mc_coframe, mc_report, mc_structure_equations,
    prolong_pullback, se_coframe, se_structure_equations, verify_maurer_cartan, McReport,
    ParallelismLayout, CONNECTION_SLOTS,
};
pub use pstar::{pstar_decompose, pstar_matrix, PStarParams};

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("parameter `{0}` must be nonzero")]
    ZeroParameter(&'static str),
    #[error("upper-left 2x2 block is singular")]
    SingularBlock,
    #[error("matrix is singular")]
    Singular,
    #[error("epsilon must be +1 or -1, got {0}")]
    BadEpsilon(i8),
    #[error("missing connection slot `{0}`")]
    MissingSlot(String),
    #[error("slot `{0}` must be filled by a one-form")]
    NotAOneForm(String),
    #[error("expected a {expected}x{expected} matrix, got {got}x{got}")]
    WrongDimension { expected: usize, got: usize },
    #[error(transparent)]
    Form(#[from] exterior_forms::FormError),
    #[error(transparent)]
    ZeroTest(#[from] ZeroTestError),
}

/// Zero-test settings used by the membership predicates when a residual
/// cannot be certified exactly.
pub fn membership_config() -> ZeroTestConfig {
    ZeroTestConfig {
        tol: 1e-12,
        ..ZeroTestConfig::default()
    }
}

fn vanishes(e: &ScalarExpr, cfg: &ZeroTestConfig) -> Result<bool, ZeroTestError> {
    is_zero(e, cfg)
}
