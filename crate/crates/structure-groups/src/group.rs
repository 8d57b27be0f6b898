use exterior_forms::ScalarMatrix;
use scalar_expr::{certify_zero, ScalarExpr};

use crate::pstar::{pstar_matrix, PStarParams};
use crate::{GroupError, HermitianForm};

/// Parameters of the ambient block-triangular group
///
/// ```text
///     [ t    0    0    0  ]
///     [ c1  a11  a12   0  ]
///     [ c2  a21  a22   0  ]
///     [ c3  b1   b2   b3  ]
/// ```
///
/// with t real nonzero, b3 nonzero and the a-block invertible. Parameters
/// are scalar expressions taken literally: a bare coordinate symbol counts
/// as real under conjugation, so complex symbolic parameters should be
/// supplied as re + i*im.
#[derive(Debug, Clone)]
pub struct G0Params {
    pub t: ScalarExpr,
    pub c: [ScalarExpr; 3],
    pub a: [[ScalarExpr; 2]; 2],
    pub b: [ScalarExpr; 3],
}

/// Second-stage parameters. The a-block collapses to diag(t e^{ir}, t e^{is}),
/// the frame scale becomes t^2 and the corner entry locks to e^{i(r+s)}.
/// Phases are stored as the unit complex numbers themselves, not the angles.
#[derive(Debug, Clone)]
pub struct G2Params {
    pub t: ScalarExpr,
    pub phase_r: ScalarExpr,
    pub phase_s: ScalarExpr,
    pub c: [ScalarExpr; 3],
    pub b1: ScalarExpr,
    pub b2: ScalarExpr,
}

impl G2Params {
    pub fn with_angles(
        t: ScalarExpr,
        r: ScalarExpr,
        s: ScalarExpr,
        c: [ScalarExpr; 3],
        b1: ScalarExpr,
        b2: ScalarExpr,
    ) -> Self {
        G2Params {
            t,
            phase_r: unit_phase(r),
            phase_s: unit_phase(s),
            c,
            b1,
            b2,
        }
    }
}

/// Third-stage parameters: b1 and b2 are no longer free.
#[derive(Debug, Clone)]
pub struct G3Params {
    pub t: ScalarExpr,
    pub phase_r: ScalarExpr,
    pub phase_s: ScalarExpr,
    pub c: [ScalarExpr; 3],
}

impl G3Params {
    pub fn with_angles(t: ScalarExpr, r: ScalarExpr, s: ScalarExpr, c: [ScalarExpr; 3]) -> Self {
        G3Params {
            t,
            phase_r: unit_phase(r),
            phase_s: unit_phase(s),
            c,
        }
    }
}

/// Fourth-stage parameters: c3 is locked to (i/t^2) c1 c2.
#[derive(Debug, Clone)]
pub struct G4Params {
    pub t: ScalarExpr,
    pub phase_r: ScalarExpr,
    pub phase_s: ScalarExpr,
    pub c1: ScalarExpr,
    pub c2: ScalarExpr,
}

impl G4Params {
    pub fn with_angles(
        t: ScalarExpr,
        r: ScalarExpr,
        s: ScalarExpr,
        c1: ScalarExpr,
        c2: ScalarExpr,
    ) -> Self {
        G4Params {
            t,
            phase_r: unit_phase(r),
            phase_s: unit_phase(s),
            c1,
            c2,
        }
    }
}

/// One-parameter prolongation acting on the nine-dimensional coframe
/// ordered eta0, eta1, eta2, eta3, rho, sig, tau, gam1, gam2.
#[derive(Debug, Clone)]
pub struct ProlongationParams {
    pub y: ScalarExpr,
}

/// An element of one stage of the adaptation tower, or of the final frame
/// family that carries the prolongation variable alongside the group data.
#[derive(Debug, Clone)]
pub enum GroupElement {
    G0(G0Params),
    G2(G2Params),
    G3(G3Params),
    G4(G4Params),
    Prolongation(ProlongationParams),
    PStar(PStarParams),
}

impl GroupElement {
    /// Ambient-group parameters realizing this element. The 4x4 stages all
    /// embed; the 9x9 prolongation and the frame family do not.
    pub fn g0_params(&self) -> Option<G0Params> {
        match self {
            GroupElement::G0(p) => Some(p.clone()),
            GroupElement::G2(p) => Some(g2_embedding(p)),
            GroupElement::G3(p) => Some(g2_embedding(&g3_as_g2(p))),
            GroupElement::G4(p) => Some(g2_embedding(&g3_as_g2(&g4_as_g3(p)))),
            GroupElement::Prolongation(_) | GroupElement::PStar(_) => None,
        }
    }
}

fn unit_phase(angle: ScalarExpr) -> ScalarExpr {
    ScalarExpr::exp(ScalarExpr::i() * angle)
}

fn g4_as_g3(p: &G4Params) -> G3Params {
    let c3 = ScalarExpr::quotient(
        ScalarExpr::i() * p.c1.clone() * p.c2.clone(),
        p.t.clone() * p.t.clone(),
    );
    G3Params {
        t: p.t.clone(),
        phase_r: p.phase_r.clone(),
        phase_s: p.phase_s.clone(),
        c: [p.c1.clone(), p.c2.clone(), c3],
    }
}

fn g3_as_g2(p: &G3Params) -> G2Params {
    let b1 = ScalarExpr::quotient(
        ScalarExpr::i() * p.phase_r.clone() * p.c[1].clone(),
        p.t.clone(),
    );
    let b2 = ScalarExpr::quotient(
        ScalarExpr::i() * p.phase_s.clone() * p.c[0].clone(),
        p.t.clone(),
    );
    G2Params {
        t: p.t.clone(),
        phase_r: p.phase_r.clone(),
        phase_s: p.phase_s.clone(),
        c: p.c.clone(),
        b1,
        b2,
    }
}

fn g2_embedding(p: &G2Params) -> G0Params {
    G0Params {
        t: p.t.clone() * p.t.clone(),
        c: p.c.clone(),
        a: [
            [p.t.clone() * p.phase_r.clone(), ScalarExpr::zero()],
            [ScalarExpr::zero(), p.t.clone() * p.phase_s.clone()],
        ],
        b: [
            p.b1.clone(),
            p.b2.clone(),
            p.phase_r.clone() * p.phase_s.clone(),
        ],
    }
}

fn structurally_zero(e: &ScalarExpr) -> bool {
    certify_zero(e) == Some(true)
}

fn g0_matrix(p: &G0Params) -> Result<ScalarMatrix, GroupError> {
    if structurally_zero(&p.t) {
        return Err(GroupError::ZeroParameter("t"));
    }
    if structurally_zero(&p.b[2]) {
        return Err(GroupError::ZeroParameter("b3"));
    }
    let det_a = p.a[0][0].clone() * p.a[1][1].clone() - p.a[0][1].clone() * p.a[1][0].clone();
    if structurally_zero(&det_a) {
        return Err(GroupError::SingularBlock);
    }
    let z = ScalarExpr::zero;
    Ok(ScalarMatrix::from_rows(vec![
        vec![p.t.clone(), z(), z(), z()],
        vec![p.c[0].clone(), p.a[0][0].clone(), p.a[0][1].clone(), z()],
        vec![p.c[1].clone(), p.a[1][0].clone(), p.a[1][1].clone(), z()],
        vec![p.c[2].clone(), p.b[0].clone(), p.b[1].clone(), p.b[2].clone()],
    ])?)
}

fn prolongation_matrix(p: &ProlongationParams) -> ScalarMatrix {
    let mut m = ScalarMatrix::identity(9);
    m.set_entry(6, 0, p.y.clone());
    m.set_entry(7, 1, p.y.clone());
    m.set_entry(8, 2, p.y.clone());
    m
}

/// Matrix realization of a tower element. Rejects parameters that are
/// provably degenerate (t = 0, b3 = 0, singular a-block); symbolic
/// parameters that cannot be certified are accepted as written.
pub fn matrix_of(g: &GroupElement, h: &HermitianForm) -> Result<ScalarMatrix, GroupError> {
    match g {
        GroupElement::Prolongation(p) => Ok(prolongation_matrix(p)),
        GroupElement::PStar(p) => pstar_matrix(p, h),
        other => g0_matrix(&other.g0_params().expect("4x4 stages embed")),
    }
}
