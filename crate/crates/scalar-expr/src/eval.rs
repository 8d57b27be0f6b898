//! Floating-point evaluation at real points.

use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::expr::ScalarExpr;

/// Assignment of `f64` values to real coordinate names.
pub type Point = BTreeMap<String, f64>;

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("coordinate {0:?} has no value at this point")]
    UnboundCoordinate(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain violation: {0}")]
    DomainViolation(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl ComplexValue {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexValue { re, im }
    }

    pub fn zero() -> Self {
        ComplexValue::new(0.0, 0.0)
    }

    pub fn one() -> Self {
        ComplexValue::new(1.0, 0.0)
    }

    pub fn i() -> Self {
        ComplexValue::new(0.0, 1.0)
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn conj(self) -> Self {
        ComplexValue::new(self.re, -self.im)
    }

    pub fn add(self, o: Self) -> Self {
        ComplexValue::new(self.re + o.re, self.im + o.im)
    }

    pub fn sub(self, o: Self) -> Self {
        ComplexValue::new(self.re - o.re, self.im - o.im)
    }

    pub fn mul(self, o: Self) -> Self {
        ComplexValue::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }

    pub fn div(self, o: Self) -> Result<Self, EvalError> {
        let d = o.re * o.re + o.im * o.im;
        if d < 1e-290 {
            return Err(EvalError::DivisionByZero);
        }
        Ok(ComplexValue::new(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        ))
    }

    pub fn exp(self) -> Self {
        let m = self.re.exp();
        ComplexValue::new(m * self.im.cos(), m * self.im.sin())
    }

    pub fn powi(self, n: i64) -> Result<Self, EvalError> {
        let mut base = if n < 0 {
            ComplexValue::one().div(self)?
        } else {
            self
        };
        let mut k = n.unsigned_abs();
        let mut acc = ComplexValue::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            k >>= 1;
        }
        Ok(acc)
    }

    fn as_positive_real(self, what: &str) -> Result<f64, EvalError> {
        if self.im.abs() > 1e-10 * (1.0 + self.re.abs()) {
            return Err(EvalError::DomainViolation(format!(
                "{what} of a non-real value"
            )));
        }
        if self.re <= 0.0 {
            return Err(EvalError::DomainViolation(format!(
                "{what} of a non-positive value"
            )));
        }
        Ok(self.re)
    }
}

pub fn eval(e: &ScalarExpr, point: &Point) -> Result<ComplexValue, EvalError> {
    match e {
        ScalarExpr::Rational(q) => {
            let num = q.numer().to_f64().unwrap_or(f64::NAN);
            let den = q.denom().to_f64().unwrap_or(f64::NAN);
            Ok(ComplexValue::new(num / den, 0.0))
        }
        ScalarExpr::I => Ok(ComplexValue::i()),
        ScalarExpr::Coord(c) => point
            .get(c)
            .map(|v| ComplexValue::new(*v, 0.0))
            .ok_or_else(|| EvalError::UnboundCoordinate(c.clone())),
        ScalarExpr::Sum(ts) => {
            let mut acc = ComplexValue::zero();
            for t in ts {
                acc = acc.add(eval(t, point)?);
            }
            Ok(acc)
        }
        ScalarExpr::Product(fs) => {
            let mut acc = ComplexValue::one();
            for f in fs {
                acc = acc.mul(eval(f, point)?);
            }
            Ok(acc)
        }
        ScalarExpr::Quotient(n, d) => eval(n, point)?.div(eval(d, point)?),
        ScalarExpr::Power(b, q) => {
            let bv = eval(b, point)?;
            if q.denom().is_one() {
                let n = q.numer().to_i64().ok_or_else(|| {
                    EvalError::DomainViolation("exponent overflows i64".into())
                })?;
                bv.powi(n)
            } else {
                let x = bv.as_positive_real("fractional power")?;
                let qf = q.to_f64().ok_or_else(|| {
                    EvalError::DomainViolation("exponent overflows f64".into())
                })?;
                Ok(ComplexValue::new(x.powf(qf), 0.0))
            }
        }
        ScalarExpr::Sqrt(u) => {
            let x = eval(u, point)?.as_positive_real("square root")?;
            Ok(ComplexValue::new(x.sqrt(), 0.0))
        }
        ScalarExpr::Ln(u) => {
            let x = eval(u, point)?.as_positive_real("logarithm")?;
            Ok(ComplexValue::new(x.ln(), 0.0))
        }
        ScalarExpr::Exp(u) => Ok(eval(u, point)?.exp()),
    }
}
