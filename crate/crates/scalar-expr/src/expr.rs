use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::canonical::canonicalize;

/// Immutable symbolic expression over real coordinates.
///
/// Constants are exact rationals plus the imaginary unit; the only functions
/// are `ln`, `sqrt`, `exp` and rational powers. Instances built through the
/// constructors and operators below are always canonical.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ScalarExpr {
    Rational(BigRational),
    I,
    Coord(String),
    Sum(Vec<ScalarExpr>),
    Product(Vec<ScalarExpr>),
    Quotient(Box<ScalarExpr>, Box<ScalarExpr>),
    Power(Box<ScalarExpr>, BigRational),
    Sqrt(Box<ScalarExpr>),
    Ln(Box<ScalarExpr>),
    Exp(Box<ScalarExpr>),
}

impl ScalarExpr {
    pub fn int(n: i64) -> Self {
        ScalarExpr::Rational(BigRational::from(BigInt::from(n)))
    }

    /// Rational constant p/q. Panics on q = 0.
    pub fn rat(p: i64, q: i64) -> Self {
        ScalarExpr::Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn coord(name: &str) -> Self {
        ScalarExpr::Coord(name.to_string())
    }

    pub fn i() -> Self {
        ScalarExpr::I
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn sum(terms: Vec<ScalarExpr>) -> Self {
        canonicalize(&ScalarExpr::Sum(terms))
    }

    pub fn product(factors: Vec<ScalarExpr>) -> Self {
        canonicalize(&ScalarExpr::Product(factors))
    }

    pub fn quotient(num: ScalarExpr, den: ScalarExpr) -> Self {
        canonicalize(&ScalarExpr::Quotient(Box::new(num), Box::new(den)))
    }

    pub fn power(base: ScalarExpr, exp: BigRational) -> Self {
        canonicalize(&ScalarExpr::Power(Box::new(base), exp))
    }

    pub fn power_i64(base: ScalarExpr, p: i64, q: i64) -> Self {
        Self::power(base, BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn sqrt(arg: ScalarExpr) -> Self {
        canonicalize(&ScalarExpr::Sqrt(Box::new(arg)))
    }

    pub fn ln(arg: ScalarExpr) -> Self {
        canonicalize(&ScalarExpr::Ln(Box::new(arg)))
    }

    pub fn exp(arg: ScalarExpr) -> Self {
        canonicalize(&ScalarExpr::Exp(Box::new(arg)))
    }

    pub fn canonical(&self) -> ScalarExpr {
        canonicalize(self)
    }

    pub fn is_structural_zero(&self) -> bool {
        matches!(self, ScalarExpr::Rational(r) if r.is_zero())
    }

    pub fn is_structural_one(&self) -> bool {
        matches!(self, ScalarExpr::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ScalarExpr::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// a - b, canonicalized.
    pub fn minus(&self, other: &ScalarExpr) -> ScalarExpr {
        ScalarExpr::sum(vec![
            self.clone(),
            ScalarExpr::product(vec![ScalarExpr::int(-1), other.clone()]),
        ])
    }

    pub fn neg(&self) -> ScalarExpr {
        ScalarExpr::product(vec![ScalarExpr::int(-1), self.clone()])
    }

    pub fn scale(&self, k: &ScalarExpr) -> ScalarExpr {
        ScalarExpr::product(vec![k.clone(), self.clone()])
    }
}

impl std::ops::Add for ScalarExpr {
    type Output = ScalarExpr;
    fn add(self, rhs: ScalarExpr) -> ScalarExpr {
        ScalarExpr::sum(vec![self, rhs])
    }
}

impl std::ops::Sub for ScalarExpr {
    type Output = ScalarExpr;
    fn sub(self, rhs: ScalarExpr) -> ScalarExpr {
        self.minus(&rhs)
    }
}

impl std::ops::Mul for ScalarExpr {
    type Output = ScalarExpr;
    fn mul(self, rhs: ScalarExpr) -> ScalarExpr {
        ScalarExpr::product(vec![self, rhs])
    }
}

impl std::ops::Div for ScalarExpr {
    type Output = ScalarExpr;
    fn div(self, rhs: ScalarExpr) -> ScalarExpr {
        ScalarExpr::quotient(self, rhs)
    }
}

impl std::ops::Neg for ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr::neg(&self)
    }
}

impl std::fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&crate::print::print(self))
    }
}
