use exterior_forms::ScalarMatrix;
use scalar_expr::{certify_zero, conj, ScalarExpr};

use crate::{GroupError, HermitianForm};

/// Parameters of the adapted frame family carrying the residual group data:
/// scale t (real, nonzero), two unit phases stored as quarter-angle
/// exponentials p = e^{ir/4} and q = e^{is/4}, the prolongation variable y
/// (real) and two complex translations c1, c2.
///
/// Like the group parameter structs, entries are taken literally and bare
/// coordinate symbols conjugate as real quantities.
#[derive(Debug, Clone)]
pub struct PStarParams {
    pub t: ScalarExpr,
    pub quarter_r: ScalarExpr,
    pub quarter_s: ScalarExpr,
    pub y: ScalarExpr,
    pub c1: ScalarExpr,
    pub c2: ScalarExpr,
}

impl PStarParams {
    pub fn with_angles(
        t: ScalarExpr,
        r: ScalarExpr,
        s: ScalarExpr,
        y: ScalarExpr,
        c1: ScalarExpr,
        c2: ScalarExpr,
    ) -> Self {
        let quarter = |a: ScalarExpr| ScalarExpr::exp(ScalarExpr::i() * ScalarExpr::rat(1, 4) * a);
        PStarParams {
            t,
            quarter_r: quarter(r),
            quarter_s: quarter(s),
            y,
            c1,
            c2,
        }
    }

    /// Identity element.
    pub fn neutral() -> Self {
        PStarParams {
            t: ScalarExpr::one(),
            quarter_r: ScalarExpr::one(),
            quarter_s: ScalarExpr::one(),
            y: ScalarExpr::zero(),
            c1: ScalarExpr::zero(),
            c2: ScalarExpr::zero(),
        }
    }
}

/// Upper-triangular matrix of the frame family member with the given
/// parameters. Its columns are a frame of the pairing `h` whenever the
/// phases are unimodular.
pub fn pstar_matrix(p: &PStarParams, h: &HermitianForm) -> Result<ScalarMatrix, GroupError> {
    if certify_zero(&p.t) == Some(true) {
        return Err(GroupError::ZeroParameter("t"));
    }
    let eps = h.eps();
    let i = ScalarExpr::i();
    let pb = conj(&p.quarter_r);
    let qb = conj(&p.quarter_s);
    let p3 = ScalarExpr::power_i64(p.quarter_r.clone(), 3, 1);
    let qb3 = ScalarExpr::power_i64(qb.clone(), 3, 1);
    let c1b = conj(&p.c1);
    let c2b = conj(&p.c2);
    // Shared diagonal factor conj(p) q and the scalar i y - (|c1|^2 - eps |c2|^2)/2.
    let pbq = pb.clone() * p.quarter_s.clone();
    let norm_half = ScalarExpr::rat(1, 2)
        * (p.c1.clone() * c1b.clone() - eps.clone() * p.c2.clone() * c2b.clone());
    let corner = i.clone() * p.y.clone() - norm_half;
    let z = ScalarExpr::zero;

    Ok(ScalarMatrix::from_rows(vec![
        vec![
            ScalarExpr::quotient(pbq.clone(), p.t.clone()),
            p.c2.clone() * pb.clone() * qb3.clone(),
            (p3.clone() * p.quarter_s.clone() * c1b).neg(),
            p.t.clone() * pbq.clone() * corner,
        ],
        vec![
            z(),
            pb * qb3,
            z(),
            eps * c2b * p.t.clone() * pbq.clone(),
        ],
        vec![
            z(),
            z(),
            p3 * p.quarter_s.clone(),
            p.c1.clone() * p.t.clone() * pbq.clone(),
        ],
        vec![z(), z(), z(), p.t.clone() * pbq],
    ])?)
}

/// Split a frame family member into its three factors: the prolongation
/// translation (y only), the unipotent translation (c1, c2 only) and the
/// diagonal torus part (t and the phases). The matrix of the original
/// element is exactly the product of the three factor matrices.
pub fn pstar_decompose(p: &PStarParams) -> (PStarParams, PStarParams, PStarParams) {
    let translation = PStarParams {
        y: p.y.clone(),
        ..PStarParams::neutral()
    };
    let unipotent = PStarParams {
        c1: p.c1.clone(),
        c2: p.c2.clone(),
        ..PStarParams::neutral()
    };
    let torus = PStarParams {
        t: p.t.clone(),
        quarter_r: p.quarter_r.clone(),
        quarter_s: p.quarter_s.clone(),
        ..PStarParams::neutral()
    };
    (translation, unipotent, torus)
}
