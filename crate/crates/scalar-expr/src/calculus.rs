//! Symbolic differentiation and conjugation.

use std::collections::BTreeSet;

use num_traits::One;
use thiserror::Error;

use crate::chart::Chart;
use crate::expr::ScalarExpr;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CalculusError {
    #[error("unknown complex coordinate {0:?}")]
    UnknownComplexCoordinate(String),
}

/// Partial derivative with respect to the real coordinate `coord`.
pub fn diff(e: &ScalarExpr, coord: &str) -> ScalarExpr {
    diff_raw(e, coord).canonical()
}

fn diff_raw(e: &ScalarExpr, coord: &str) -> ScalarExpr {
    match e {
        ScalarExpr::Rational(_) | ScalarExpr::I => ScalarExpr::zero(),
        ScalarExpr::Coord(c) => {
            if c == coord {
                ScalarExpr::one()
            } else {
                ScalarExpr::zero()
            }
        }
        ScalarExpr::Sum(ts) => {
            ScalarExpr::Sum(ts.iter().map(|t| diff_raw(t, coord)).collect())
        }
        ScalarExpr::Product(fs) => {
            let mut terms = Vec::with_capacity(fs.len());
            for (k, f) in fs.iter().enumerate() {
                let mut parts: Vec<ScalarExpr> = Vec::with_capacity(fs.len());
                for (j, g) in fs.iter().enumerate() {
                    parts.push(if j == k { diff_raw(f, coord) } else { g.clone() });
                }
                terms.push(ScalarExpr::Product(parts));
            }
            ScalarExpr::Sum(terms)
        }
        ScalarExpr::Quotient(n, d) => {
            let num = ScalarExpr::Sum(vec![
                ScalarExpr::Product(vec![diff_raw(n, coord), (**d).clone()]),
                ScalarExpr::Product(vec![
                    ScalarExpr::int(-1),
                    (**n).clone(),
                    diff_raw(d, coord),
                ]),
            ]);
            let den = ScalarExpr::Product(vec![(**d).clone(), (**d).clone()]);
            ScalarExpr::Quotient(Box::new(num), Box::new(den))
        }
        ScalarExpr::Power(b, q) => {
            let down = ScalarExpr::Power(b.clone(), q - num_rational::BigRational::one());
            ScalarExpr::Product(vec![
                ScalarExpr::Rational(q.clone()),
                down,
                diff_raw(b, coord),
            ])
        }
        ScalarExpr::Sqrt(u) => ScalarExpr::Quotient(
            Box::new(diff_raw(u, coord)),
            Box::new(ScalarExpr::Product(vec![
                ScalarExpr::int(2),
                ScalarExpr::Sqrt(u.clone()),
            ])),
        ),
        ScalarExpr::Ln(u) => {
            ScalarExpr::Quotient(Box::new(diff_raw(u, coord)), u.clone())
        }
        ScalarExpr::Exp(u) => {
            ScalarExpr::Product(vec![diff_raw(u, coord), ScalarExpr::Exp(u.clone())])
        }
    }
}

/// Holomorphic derivative with respect to the complex coordinate `name`.
///
/// Expressions here depend on a complex coordinate only through its trace
/// `z + conj(z)` (if bound), so the derivative is the real partial with
/// respect to the trace coordinate. Unbound complex coordinates give zero.
pub fn wirtinger(
    e: &ScalarExpr,
    chart: &Chart,
    name: &str,
) -> Result<ScalarExpr, CalculusError> {
    let c = chart
        .complex(name)
        .ok_or_else(|| CalculusError::UnknownComplexCoordinate(name.to_string()))?;
    Ok(match &c.trace {
        Some(t) => diff(e, t),
        None => ScalarExpr::zero(),
    })
}

/// Complex conjugate. Real coordinates are fixed; `i` maps to `-i`.
pub fn conj(e: &ScalarExpr) -> ScalarExpr {
    conj_with(e, &|_| None)
}

/// Complex conjugate with a symbol swap: `swap(name)` returns the conjugate
/// coordinate's name, or `None` if the coordinate is real.
pub fn conj_with(e: &ScalarExpr, swap: &dyn Fn(&str) -> Option<String>) -> ScalarExpr {
    conj_raw(e, swap).canonical()
}

fn conj_raw(e: &ScalarExpr, swap: &dyn Fn(&str) -> Option<String>) -> ScalarExpr {
    match e {
        ScalarExpr::Rational(_) => e.clone(),
        ScalarExpr::I => ScalarExpr::Product(vec![ScalarExpr::int(-1), ScalarExpr::I]),
        ScalarExpr::Coord(c) => match swap(c) {
            Some(other) => ScalarExpr::Coord(other),
            None => e.clone(),
        },
        ScalarExpr::Sum(ts) => {
            ScalarExpr::Sum(ts.iter().map(|t| conj_raw(t, swap)).collect())
        }
        ScalarExpr::Product(fs) => {
            ScalarExpr::Product(fs.iter().map(|f| conj_raw(f, swap)).collect())
        }
        ScalarExpr::Quotient(n, d) => ScalarExpr::Quotient(
            Box::new(conj_raw(n, swap)),
            Box::new(conj_raw(d, swap)),
        ),
        ScalarExpr::Power(b, q) => {
            ScalarExpr::Power(Box::new(conj_raw(b, swap)), q.clone())
        }
        ScalarExpr::Sqrt(u) => ScalarExpr::Sqrt(Box::new(conj_raw(u, swap))),
        ScalarExpr::Ln(u) => ScalarExpr::Ln(Box::new(conj_raw(u, swap))),
        ScalarExpr::Exp(u) => ScalarExpr::Exp(Box::new(conj_raw(u, swap))),
    }
}

/// Set of coordinate names appearing in the expression.
pub fn free_coords(e: &ScalarExpr) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect_coords(e, &mut out);
    out
}

fn collect_coords(e: &ScalarExpr, out: &mut BTreeSet<String>) {
    match e {
        ScalarExpr::Rational(_) | ScalarExpr::I => {}
        ScalarExpr::Coord(c) => {
            out.insert(c.clone());
        }
        ScalarExpr::Sum(ts) => ts.iter().for_each(|t| collect_coords(t, out)),
        ScalarExpr::Product(fs) => fs.iter().for_each(|f| collect_coords(f, out)),
        ScalarExpr::Quotient(n, d) => {
            collect_coords(n, out);
            collect_coords(d, out);
        }
        ScalarExpr::Power(b, _) => collect_coords(b, out),
        ScalarExpr::Sqrt(u) | ScalarExpr::Ln(u) | ScalarExpr::Exp(u) => {
            collect_coords(u, out)
        }
    }
}
