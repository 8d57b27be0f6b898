//! Exterior algebra of differential forms over symbolic scalar
//! coefficients, on either coordinate coframes (differentials of chart
//! coordinates) or abstract coframes with declared structure equations.

mod abstract_cf;
mod basis;
mod chart_d;
mod error;
mod form;
mod matrix;

pub use abstract_cf::{AbstractCoframe, FunctionDifferential};
pub use basis::{BasisOneForm, Coframe, CoordDifferential, Reality};
pub use chart_d::d_chart;
pub use error::FormError;
pub use form::{Form, MAX_DEGREE};
pub use matrix::{curvature_abstract, curvature_chart, MatrixForm, ScalarMatrix};
