//! Symbolic scalar expressions over named real coordinates with exact rational
//! and imaginary constants.
//!
//! The expression tree is immutable; every operation returns a canonicalized
//! value (flattened n-ary sums and products, folded rational constants, sorted
//! terms). On top of the tree the crate provides a small calculus layer
//! (partial derivatives, Wirtinger derivatives through a chart, conjugation),
//! numeric evaluation at points, and a zero test that combines an exact
//! normal-form check with seeded random sampling.

mod canonical;
mod chart;
mod calculus;
mod eval;
mod expand;
mod expr;
mod gauss;
mod parse;
mod print;
mod zero;

pub use calculus::{conj, conj_with, diff, free_coords, wirtinger, CalculusError};
pub use chart::{Chart, ChartError, ComplexCoord};
pub use eval::{eval, ComplexValue, EvalError, Point};
pub use expand::{certify_zero, rational_normal_form, split_real_imag, Mono, Poly, SplitError};
pub use expr::ScalarExpr;
pub use gauss::GaussianRational;
pub use parse::{parse, ParseError};
pub use zero::{is_zero, is_zero_sampled, sample_points, Domain, ZeroTestConfig, ZeroTestError};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
