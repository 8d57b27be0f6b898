use exterior_forms::{MatrixForm, ScalarMatrix};
use scalar_expr::{conj, ScalarExpr, ZeroTestConfig};

use crate::{vanishes, GroupError, HermitianForm};

fn check_dim(m: &ScalarMatrix) -> Result<(), GroupError> {
    if m.dim() != 4 {
        return Err(GroupError::WrongDimension {
            expected: 4,
            got: m.dim(),
        });
    }
    Ok(())
}

fn zero(m: &ScalarMatrix, i: usize, j: usize, cfg: &ZeroTestConfig) -> Result<bool, GroupError> {
    Ok(vanishes(m.entry(i, j), cfg)?)
}

fn nonzero(e: &ScalarExpr, cfg: &ZeroTestConfig) -> Result<bool, GroupError> {
    Ok(!vanishes(e, cfg)?)
}

/// Membership in the ambient block-triangular group: zeros above the two
/// diagonal blocks, real nonzero scale, nonzero corner, invertible a-block.
pub fn in_g0(m: &ScalarMatrix, cfg: &ZeroTestConfig) -> Result<bool, GroupError> {
    check_dim(m)?;
    for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)] {
        if !zero(m, i, j, cfg)? {
            return Ok(false);
        }
    }
    let t = m.entry(0, 0);
    if !vanishes(&(conj(t) - t.clone()), cfg)? || !nonzero(t, cfg)? {
        return Ok(false);
    }
    if !nonzero(m.entry(3, 3), cfg)? {
        return Ok(false);
    }
    let det_a = m.entry(1, 1).clone() * m.entry(2, 2).clone()
        - m.entry(1, 2).clone() * m.entry(2, 1).clone();
    nonzero(&det_a, cfg)
}

/// First cut of the tower: the a-block scales the pairing on the contact
/// directions by the same real factor t that scales the base direction.
pub fn in_g1(
    m: &ScalarMatrix,
    h: &HermitianForm,
    cfg: &ZeroTestConfig,
) -> Result<bool, GroupError> {
    if !in_g0(m, cfg)? {
        return Ok(false);
    }
    let eps = h.eps();
    let t = m.entry(0, 0).clone();
    let col1 = m.entry(1, 1).clone() * conj(m.entry(1, 1))
        + eps.clone() * m.entry(2, 1).clone() * conj(m.entry(2, 1));
    let col2 = eps.clone() * m.entry(1, 2).clone() * conj(m.entry(1, 2))
        + m.entry(2, 2).clone() * conj(m.entry(2, 2));
    let cross = m.entry(1, 1).clone() * conj(m.entry(1, 2))
        + eps * m.entry(2, 1).clone() * conj(m.entry(2, 2));
    Ok(vanishes(&(t.clone() - col1), cfg)?
        && vanishes(&(t - col2), cfg)?
        && vanishes(&cross, cfg)?)
}

/// Second cut: diagonal a-block and corner entry locked to the product of
/// the two diagonal phases.
pub fn in_g2(
    m: &ScalarMatrix,
    h: &HermitianForm,
    cfg: &ZeroTestConfig,
) -> Result<bool, GroupError> {
    if !in_g1(m, h, cfg)? {
        return Ok(false);
    }
    if !zero(m, 1, 2, cfg)? || !zero(m, 2, 1, cfg)? {
        return Ok(false);
    }
    let locked = m.entry(1, 1).clone() * m.entry(2, 2).clone()
        - m.entry(0, 0).clone() * m.entry(3, 3).clone();
    Ok(vanishes(&locked, cfg)?)
}

/// Third cut: the two remaining b-entries are determined by the
/// translations, b1 = i m11 m20 / m00 and b2 = i m22 m10 / m00.
pub fn in_g3(
    m: &ScalarMatrix,
    h: &HermitianForm,
    cfg: &ZeroTestConfig,
) -> Result<bool, GroupError> {
    if !in_g2(m, h, cfg)? {
        return Ok(false);
    }
    let i = ScalarExpr::i;
    let r1 = m.entry(0, 0).clone() * m.entry(3, 1).clone()
        - i() * m.entry(1, 1).clone() * m.entry(2, 0).clone();
    let r2 = m.entry(0, 0).clone() * m.entry(3, 2).clone()
        - i() * m.entry(2, 2).clone() * m.entry(1, 0).clone();
    Ok(vanishes(&r1, cfg)? && vanishes(&r2, cfg)?)
}

/// Final cut: the last translation entry is locked, c3 = i m10 m20 / m00.
pub fn in_g4(
    m: &ScalarMatrix,
    h: &HermitianForm,
    cfg: &ZeroTestConfig,
) -> Result<bool, GroupError> {
    if !in_g3(m, h, cfg)? {
        return Ok(false);
    }
    let r = m.entry(0, 0).clone() * m.entry(3, 0).clone()
        - ScalarExpr::i() * m.entry(1, 0).clone() * m.entry(2, 0).clone();
    Ok(vanishes(&r, cfg)?)
}

/// Lie-algebra membership of a scalar matrix: trace zero and skew-adjoint
/// for the pairing in the connection sign convention,
/// conj(X)^T g + g X = 0 with g = `HermitianForm::connection_matrix`.
pub fn in_su_star(
    x: &ScalarMatrix,
    h: &HermitianForm,
    cfg: &ZeroTestConfig,
) -> Result<bool, GroupError> {
    check_dim(x)?;
    if !vanishes(&x.trace(), cfg)? {
        return Ok(false);
    }
    let gram = h.connection_matrix();
    let residual = x.conj_transpose().mul(&gram)?.add(&gram.mul(x)?)?;
    for i in 0..4 {
        for j in 0..4 {
            if !vanishes(residual.entry(i, j), cfg)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lie-algebra membership for a matrix of forms, checked structurally: the
/// trace form and every entry of conj(X)^T g + g X must collect to zero
/// in the exterior algebra, with g = `HermitianForm::connection_matrix`.
pub fn in_su_star_form(x: &MatrixForm, h: &HermitianForm) -> Result<bool, GroupError> {
    if x.dim() != 4 {
        return Err(GroupError::WrongDimension {
            expected: 4,
            got: x.dim(),
        });
    }
    if !x.trace().is_zero_form() {
        return Ok(false);
    }
    let gram = h.connection_matrix();
    let residual = x
        .conjugate()
        .transpose()
        .mul_scalar(&gram)?
        .add(&gram.mul_form(x)?)?;
    Ok(residual.is_zero_matrix())
}
