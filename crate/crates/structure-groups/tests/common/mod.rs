#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scalar_expr::{BigInt, BigRational, GaussianRational, ScalarExpr};
use structure_groups::{G0Params, G2Params, G3Params, G4Params, PStarParams};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rational(r: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(
        BigInt::from(r.gen_range(-9i64..=9)),
        BigInt::from(r.gen_range(1i64..=9)),
    )
}

pub fn nonzero_rational(r: &mut ChaCha8Rng) -> BigRational {
    loop {
        let q = rational(r);
        if q != BigRational::new(BigInt::from(0), BigInt::from(1)) {
            return q;
        }
    }
}

pub fn gauss(r: &mut ChaCha8Rng) -> GaussianRational {
    GaussianRational::new(rational(r), rational(r))
}

pub fn nonzero_gauss(r: &mut ChaCha8Rng) -> GaussianRational {
    loop {
        let g = gauss(r);
        if !g.is_zero() {
            return g;
        }
    }
}

/// Exact point on the unit circle: (1 - u^2 + 2iu) / (1 + u^2) for random
/// rational u, so every draw stays inside exact arithmetic.
pub fn circle(r: &mut ChaCha8Rng) -> GaussianRational {
    let u = rational(r);
    let one = BigRational::new(BigInt::from(1), BigInt::from(1));
    let u2 = &u * &u;
    let den = &one + &u2;
    GaussianRational::new(
        (&one - &u2) / &den,
        (BigRational::new(BigInt::from(2), BigInt::from(1)) * &u) / &den,
    )
}

pub fn expr(g: &GaussianRational) -> ScalarExpr {
    (ScalarExpr::Rational(g.re.clone()) + ScalarExpr::i() * ScalarExpr::Rational(g.im.clone()))
        .canonical()
}

pub fn real_expr(q: &BigRational) -> ScalarExpr {
    ScalarExpr::Rational(q.clone()).canonical()
}

pub fn g0_draw(r: &mut ChaCha8Rng) -> G0Params {
    loop {
        let a = [[gauss(r), gauss(r)], [gauss(r), gauss(r)]];
        let det = a[0][0].mul(&a[1][1]).sub(&a[0][1].mul(&a[1][0]));
        if det.is_zero() {
            continue;
        }
        return G0Params {
            t: real_expr(&nonzero_rational(r)),
            c: [expr(&gauss(r)), expr(&gauss(r)), expr(&gauss(r))],
            a: [
                [expr(&a[0][0]), expr(&a[0][1])],
                [expr(&a[1][0]), expr(&a[1][1])],
            ],
            b: [expr(&gauss(r)), expr(&gauss(r)), expr(&nonzero_gauss(r))],
        };
    }
}

/// Draw satisfying the first-stage relations exactly: the second column of
/// the a-block is a unimodular multiple of the reflected first column and
/// the scale matches the weighted column norm.
pub fn g1_draw(r: &mut ChaCha8Rng, eps: i8) -> G0Params {
    let e = BigRational::new(BigInt::from(i64::from(eps)), BigInt::from(1));
    loop {
        let a11 = gauss(r);
        let a21 = gauss(r);
        let t = a11.mul(&a11.conj()).re.clone() + &e * &a21.mul(&a21.conj()).re;
        if t == BigRational::new(BigInt::from(0), BigInt::from(1)) {
            continue;
        }
        let mu = circle(r);
        let a12 = mu
            .mul(&a21.conj())
            .mul_rational(&-e.clone());
        let a22 = mu.mul(&a11.conj());
        return G0Params {
            t: real_expr(&t),
            c: [expr(&gauss(r)), expr(&gauss(r)), expr(&gauss(r))],
            a: [[expr(&a11), expr(&a12)], [expr(&a21), expr(&a22)]],
            b: [expr(&gauss(r)), expr(&gauss(r)), expr(&nonzero_gauss(r))],
        };
    }
}

pub fn g2_draw(r: &mut ChaCha8Rng) -> G2Params {
    G2Params {
        t: real_expr(&nonzero_rational(r)),
        phase_r: expr(&circle(r)),
        phase_s: expr(&circle(r)),
        c: [expr(&gauss(r)), expr(&gauss(r)), expr(&gauss(r))],
        b1: expr(&gauss(r)),
        b2: expr(&gauss(r)),
    }
}

pub fn g3_draw(r: &mut ChaCha8Rng) -> G3Params {
    G3Params {
        t: real_expr(&nonzero_rational(r)),
        phase_r: expr(&circle(r)),
        phase_s: expr(&circle(r)),
        c: [expr(&gauss(r)), expr(&gauss(r)), expr(&gauss(r))],
    }
}

pub fn g4_draw(r: &mut ChaCha8Rng) -> G4Params {
    G4Params {
        t: real_expr(&nonzero_rational(r)),
        phase_r: expr(&circle(r)),
        phase_s: expr(&circle(r)),
        c1: expr(&gauss(r)),
        c2: expr(&gauss(r)),
    }
}

pub fn pstar_draw(r: &mut ChaCha8Rng) -> PStarParams {
    PStarParams {
        t: real_expr(&nonzero_rational(r)),
        quarter_r: expr(&circle(r)),
        quarter_s: expr(&circle(r)),
        y: real_expr(&rational(r)),
        c1: expr(&gauss(r)),
        c2: expr(&gauss(r)),
    }
}
