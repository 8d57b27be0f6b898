use exterior_forms::ScalarMatrix;
use scalar_expr::{ScalarExpr, ZeroTestConfig};

use crate::{vanishes, GroupError};

/// Hermitian pairing preserved by the adapted frames, in the frame where its
/// Gram matrix is anti-diagonal on the first and last slots:
/// h(z, w) = z1 conj(w4) + z4 conj(w1) - eps z2 conj(w2) + z3 conj(w3).
///
/// eps = +1 gives split signature (2,2), eps = -1 gives signature (3,1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HermitianForm {
    epsilon: i8,
}

impl HermitianForm {
    pub fn new(epsilon: i8) -> Result<Self, GroupError> {
        match epsilon {
            1 | -1 => Ok(HermitianForm { epsilon }),
            other => Err(GroupError::BadEpsilon(other)),
        }
    }

    pub fn epsilon(&self) -> i8 {
        self.epsilon
    }

    /// Signs of the eigenvalues: (positive count, negative count).
    pub fn signature(&self) -> (u8, u8) {
        if self.epsilon == 1 {
            (2, 2)
        } else {
            (3, 1)
        }
    }

    /// eps as a scalar expression.
    pub fn eps(&self) -> ScalarExpr {
        ScalarExpr::int(i64::from(self.epsilon))
    }

    /// Gram matrix of the pairing.
    pub fn matrix(&self) -> ScalarMatrix {
        let z = ScalarExpr::zero;
        ScalarMatrix::from_rows(vec![
            vec![z(), z(), z(), ScalarExpr::one()],
            vec![z(), ScalarExpr::int(-i64::from(self.epsilon)), z(), z()],
            vec![z(), z(), ScalarExpr::one(), z()],
            vec![ScalarExpr::one(), z(), z(), z()],
        ])
        .expect("gram matrix rows are square")
    }

    /// Gram matrix in the sign convention under which the assembled connection
    /// matrix (and hence its curvature) is skew-adjoint. Differs from
    /// `matrix()` in the signs of the two middle diagonal entries; the two
    /// conventions are exchanged by conjugating with diag(-1, 1, 1, 1) and an
    /// overall sign, so they cut out conjugate copies of the same Lie algebra.
    pub fn connection_matrix(&self) -> ScalarMatrix {
        let z = ScalarExpr::zero;
        ScalarMatrix::from_rows(vec![
            vec![z(), z(), z(), ScalarExpr::one()],
            vec![z(), ScalarExpr::int(i64::from(self.epsilon)), z(), z()],
            vec![z(), z(), ScalarExpr::int(-1), z()],
            vec![ScalarExpr::one(), z(), z(), z()],
        ])
        .expect("gram matrix rows are square")
    }
}

/// Whether `m` maps the adapted frame to another frame of the same pairing:
/// conj(m)^T h m = h and det m = 1. Residuals are certified exactly where
/// possible and sampled against `cfg` otherwise.
pub fn is_hermitian_frame(
    m: &ScalarMatrix,
    h: &HermitianForm,
    cfg: &ZeroTestConfig,
) -> Result<bool, GroupError> {
    if m.dim() != 4 {
        return Err(GroupError::WrongDimension {
            expected: 4,
            got: m.dim(),
        });
    }
    let gram = h.matrix();
    let pushed = m.conj_transpose().mul(&gram)?.mul(m)?;
    let residual = pushed.sub(&gram)?;
    for i in 0..4 {
        for j in 0..4 {
            if !vanishes(residual.entry(i, j), cfg)? {
                return Ok(false);
            }
        }
    }
    let det_residual = m.det() - ScalarExpr::one();
    Ok(vanishes(&det_residual, cfg)?)
}
