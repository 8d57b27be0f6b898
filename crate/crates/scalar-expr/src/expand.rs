//! Rational normal form over generalized monomials.
//!
//! An expression is flattened into a quotient of two polynomials whose
//! monomials are products of powers of atoms. Atoms are coordinates together
//! with opaque subexpressions (sums under a root, logarithms, exponentials).
//! Equal atoms merge by adding exponents, which is valid on the positive
//! domains where the roots are defined.
//!
//! An empty numerator certifies the expression is zero wherever it is
//! defined. A nonempty numerator whose atoms are all plain coordinates
//! certifies the expression is not identically zero: distinct rational-power
//! monomials are linearly independent on any open box of positive points.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::expr::ScalarExpr;
use crate::gauss::GaussianRational;

/// Product of atom powers: atom expression -> rational exponent.
pub type Mono = BTreeMap<ScalarExpr, BigRational>;

/// Polynomial in generalized monomials with Gaussian rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(pub BTreeMap<Mono, GaussianRational>);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SplitError {
    #[error("cannot split real and imaginary parts along complex-valued atom {0}")]
    ComplexAtom(ScalarExpr),
}

impl Poly {
    pub fn zero() -> Self {
        Poly(BTreeMap::new())
    }

    pub fn constant(c: GaussianRational) -> Self {
        let mut p = Poly::zero();
        p.add_term(Mono::new(), c);
        p
    }

    pub fn one() -> Self {
        Poly::constant(GaussianRational::one())
    }

    pub fn atom(a: ScalarExpr, exp: BigRational) -> Self {
        if exp.is_zero() {
            return Poly::one();
        }
        if let ScalarExpr::Rational(q) = &a {
            if exp.is_integer() {
                let n = exp.numer();
                if let Some(k) = to_small(n) {
                    return Poly::constant(GaussianRational::from_rational(q.clone()).pow_i64(k));
                }
            }
        }
        let mut m = Mono::new();
        m.insert(a, exp);
        let mut p = Poly::zero();
        p.add_term(m, GaussianRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_term(&mut self, m: Mono, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = o.get().add(&c);
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.0 {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(m, c)| (m.clone(), c.neg())).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &o.0 {
                let (m, extra) = mul_monos(m1, m2);
                out.add_term(m, c1.mul(c2).mul(&extra));
            }
        }
        out
    }

    pub fn pow_usize(&self, n: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Conjugate coefficients; valid when every atom is real-valued.
    fn conj_coeffs(&self) -> Poly {
        Poly(self.0.iter().map(|(m, c)| (m.clone(), c.conj())).collect())
    }

    pub fn atoms(&self) -> impl Iterator<Item = &ScalarExpr> {
        self.0.keys().flat_map(|m| m.keys())
    }

    /// Largest exponent of the given atom across monomials, zero if absent.
    pub fn degree_in(&self, atom: &ScalarExpr) -> BigRational {
        self.0
            .keys()
            .filter_map(|m| m.get(atom))
            .max()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }
}

fn to_small(n: &num_bigint::BigInt) -> Option<i64> {
    use num_traits::ToPrimitive;
    n.to_i64()
}

/// Merge two monomials, folding rational atoms with integer exponents back
/// into a coefficient factor.
fn mul_monos(a: &Mono, b: &Mono) -> (Mono, GaussianRational) {
    let mut out = a.clone();
    let mut coeff = GaussianRational::one();
    for (atom, exp) in b {
        let e = out.entry(atom.clone()).or_insert_with(BigRational::zero);
        *e = e.clone() + exp;
        if e.is_zero() {
            out.remove(atom);
        }
    }
    let folds: Vec<(ScalarExpr, BigRational)> = out
        .iter()
        .filter(|(atom, exp)| matches!(atom, ScalarExpr::Rational(_)) && exp.is_integer())
        .map(|(atom, exp)| (atom.clone(), exp.clone()))
        .collect();
    for (atom, exp) in folds {
        out.remove(&atom);
        if let ScalarExpr::Rational(q) = &atom {
            if let Some(k) = to_small(exp.numer()) {
                coeff = coeff.mul(&GaussianRational::from_rational(q.clone()).pow_i64(k));
            } else {
                out.insert(atom, exp);
            }
        }
    }
    (out, coeff)
}

/// Flatten into a (numerator, denominator) pair of polynomials.
pub fn rational_normal_form(e: &ScalarExpr) -> (Poly, Poly) {
    match e {
        ScalarExpr::Rational(q) => (
            Poly::constant(GaussianRational::from_rational(q.clone())),
            Poly::one(),
        ),
        ScalarExpr::I => (Poly::constant(GaussianRational::i()), Poly::one()),
        ScalarExpr::Coord(_) => (Poly::atom(e.clone(), BigRational::one()), Poly::one()),
        ScalarExpr::Sum(ts) => {
            let mut num = Poly::zero();
            let mut den = Poly::one();
            for t in ts {
                let (tn, td) = rational_normal_form(t);
                num = num.mul(&td).add(&tn.mul(&den));
                den = den.mul(&td);
            }
            (num, den)
        }
        ScalarExpr::Product(fs) => {
            let mut num = Poly::one();
            let mut den = Poly::one();
            for f in fs {
                let (fn_, fd) = rational_normal_form(f);
                num = num.mul(&fn_);
                den = den.mul(&fd);
            }
            (num, den)
        }
        ScalarExpr::Quotient(n, d) => {
            let (nn, nd) = rational_normal_form(n);
            let (dn, dd) = rational_normal_form(d);
            (nn.mul(&dd), nd.mul(&dn))
        }
        ScalarExpr::Power(b, q) => power_form(b, q),
        ScalarExpr::Sqrt(u) => {
            power_form(u, &BigRational::new(1.into(), 2.into()))
        }
        ScalarExpr::Ln(_) | ScalarExpr::Exp(_) => {
            (Poly::atom(e.clone(), BigRational::one()), Poly::one())
        }
    }
}

fn power_form(base: &ScalarExpr, q: &BigRational) -> (Poly, Poly) {
    let (bn, bd) = rational_normal_form(base);
    if q.is_integer() {
        if let Some(k) = to_small(q.numer()) {
            let n = k.unsigned_abs() as usize;
            return if k >= 0 {
                (bn.pow_usize(n), bd.pow_usize(n))
            } else {
                (bd.pow_usize(n), bn.pow_usize(n))
            };
        }
    }
    let scale = |p: &Poly| -> Option<Poly> {
        if p.0.len() != 1 {
            return None;
        }
        let (m, c) = p.0.iter().next().unwrap();
        if !c.is_one() {
            return None;
        }
        let mut out = Mono::new();
        for (atom, exp) in m {
            out.insert(atom.clone(), exp * q);
        }
        let mut poly = Poly::zero();
        poly.add_term(out, GaussianRational::one());
        Some(poly)
    };
    match (scale(&bn), scale(&bd)) {
        // exponents already carry the sign of q, no numerator/denominator swap
        (Some(n), Some(d)) => (n, d),
        _ => (Poly::atom(base.clone(), q.clone()), Poly::one()),
    }
}

fn contains_i(e: &ScalarExpr) -> bool {
    match e {
        ScalarExpr::Rational(_) | ScalarExpr::Coord(_) => false,
        ScalarExpr::I => true,
        ScalarExpr::Sum(ts) => ts.iter().any(contains_i),
        ScalarExpr::Product(fs) => fs.iter().any(contains_i),
        ScalarExpr::Quotient(n, d) => contains_i(n) || contains_i(d),
        ScalarExpr::Power(b, _) => contains_i(b),
        ScalarExpr::Sqrt(u) | ScalarExpr::Ln(u) | ScalarExpr::Exp(u) => contains_i(u),
    }
}

/// Exact zero test.
///
/// `Some(true)` means the expression simplifies to zero. `Some(false)` is
/// only returned when all atoms are plain coordinates, where nonvanishing is
/// guaranteed. `None` means the normal form cannot decide.
pub fn certify_zero(e: &ScalarExpr) -> Option<bool> {
    let (num, den) = rational_normal_form(e);
    if den.is_zero() {
        return None;
    }
    if num.is_zero() {
        return Some(true);
    }
    let coords_only = num
        .atoms()
        .chain(den.atoms())
        .all(|a| matches!(a, ScalarExpr::Coord(_)));
    if coords_only {
        Some(false)
    } else {
        None
    }
}

fn poly_to_expr(p: &Poly, part: fn(&GaussianRational) -> BigRational) -> ScalarExpr {
    let mut terms = Vec::new();
    for (m, c) in &p.0 {
        let v = part(c);
        if v.is_zero() {
            continue;
        }
        let mut factors = vec![ScalarExpr::Rational(v)];
        for (atom, exp) in m {
            factors.push(ScalarExpr::power(atom.clone(), exp.clone()));
        }
        terms.push(ScalarExpr::product(factors));
    }
    ScalarExpr::sum(terms)
}

/// Decompose into `(re, im)` with `e = re + i*im`, both parts real-valued
/// expressions. Fails if an atom (a root, logarithm, or exponential
/// subexpression, or a coordinate power) is itself complex-valued.
pub fn split_real_imag(e: &ScalarExpr) -> Result<(ScalarExpr, ScalarExpr), SplitError> {
    let (num, den) = rational_normal_form(e);
    for a in num.atoms().chain(den.atoms()) {
        if contains_i(a) {
            return Err(SplitError::ComplexAtom(a.clone()));
        }
    }
    let den_real = den.mul(&den.conj_coeffs());
    let num_adj = num.mul(&den.conj_coeffs());
    debug_assert!(den_real.0.values().all(|c| c.im.is_zero()));
    let d = poly_to_expr(&den_real, |c| c.re.clone());
    let re = ScalarExpr::quotient(poly_to_expr(&num_adj, |c| c.re.clone()), d.clone());
    let im = ScalarExpr::quotient(poly_to_expr(&num_adj, |c| c.im.clone()), d);
    Ok((re, im))
}
