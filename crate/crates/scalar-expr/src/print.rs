//! Text form of expressions. Output re-parses to the same canonical tree and
//! uses the minimal parenthesization the grammar allows.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::canonical::decompose_term;
use crate::expr::ScalarExpr;

pub fn print(e: &ScalarExpr) -> String {
    let mut s = String::new();
    write_expr(e, Prec::Sum, &mut s);
    s
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Sum = 0,
    Term = 1,
    Factor = 2,
    Atom = 3,
}

fn node_prec(e: &ScalarExpr) -> Prec {
    match e {
        ScalarExpr::Sum(_) => Prec::Sum,
        ScalarExpr::Product(_) | ScalarExpr::Quotient(_, _) => Prec::Term,
        ScalarExpr::Power(_, _) => Prec::Factor,
        ScalarExpr::Rational(r) => {
            if r.is_negative() {
                // Negative constants print with a sign, which only the
                // sum/leading position accepts without parentheses.
                Prec::Sum
            } else {
                Prec::Atom
            }
        }
        _ => Prec::Atom,
    }
}

fn write_expr(e: &ScalarExpr, ctx: Prec, out: &mut String) {
    let parens = node_prec(e) < ctx;
    if parens {
        out.push('(');
    }
    match e {
        ScalarExpr::Rational(r) => write_rational(r, out),
        ScalarExpr::I => out.push('i'),
        ScalarExpr::Coord(name) => out.push_str(name),
        ScalarExpr::Sum(ts) => {
            for (k, t) in ts.iter().enumerate() {
                let (neg, abs) = strip_sign(t);
                if k == 0 {
                    if neg {
                        out.push('-');
                    }
                } else if neg {
                    out.push('-');
                } else {
                    out.push('+');
                }
                write_expr(&abs, Prec::Term, out);
            }
        }
        ScalarExpr::Product(fs) => {
            let (neg, factors) = product_sign(fs);
            if neg {
                out.push('-');
            }
            for (k, f) in factors.iter().enumerate() {
                if k > 0 {
                    out.push('*');
                }
                // Quotients re-associate left, so they are safe unwrapped in
                // any position of a product chain except after '/'.
                write_expr(f, Prec::Term, out);
            }
        }
        ScalarExpr::Quotient(n, d) => {
            // An integer exponent right before '/' would reparse as a
            // fractional exponent, so guard the numerator with parentheses.
            if ends_in_integer_exponent(n) {
                out.push('(');
                write_expr(n, Prec::Sum, out);
                out.push(')');
            } else {
                write_expr(n, Prec::Term, out);
            }
            out.push('/');
            write_expr(d, Prec::Factor, out);
        }
        ScalarExpr::Power(b, q) => {
            write_expr(b, Prec::Atom, out);
            out.push('^');
            write_exponent(q, out);
        }
        ScalarExpr::Sqrt(a) => {
            out.push_str("sqrt(");
            write_expr(a, Prec::Sum, out);
            out.push(')');
        }
        ScalarExpr::Ln(a) => {
            out.push_str("ln(");
            write_expr(a, Prec::Sum, out);
            out.push(')');
        }
        ScalarExpr::Exp(a) => {
            out.push_str("exp(");
            write_expr(a, Prec::Sum, out);
            out.push(')');
        }
    }
    if parens {
        out.push(')');
    }
}

fn ends_in_integer_exponent(e: &ScalarExpr) -> bool {
    match e {
        ScalarExpr::Power(_, q) => q.is_integer(),
        ScalarExpr::Product(fs) => fs.last().is_some_and(ends_in_integer_exponent),
        _ => false,
    }
}

/// Splits a canonical term into (is negative, absolute value) for signed
/// rendering inside sums.
fn strip_sign(t: &ScalarExpr) -> (bool, ScalarExpr) {
    let (coeff, _key) = decompose_term(t);
    let negative = if !coeff.re.is_zero() {
        coeff.re.is_negative()
    } else {
        coeff.im.is_negative()
    };
    if !negative {
        return (false, t.clone());
    }
    (true, t.clone().neg())
}

fn product_sign(fs: &[ScalarExpr]) -> (bool, Vec<ScalarExpr>) {
    if let Some(ScalarExpr::Rational(r)) = fs.first() {
        if r.is_negative() {
            let mut rest = fs[1..].to_vec();
            let pos = -r.clone();
            if !pos.is_one() {
                rest.insert(0, ScalarExpr::Rational(pos));
            }
            if rest.is_empty() {
                rest.push(ScalarExpr::one());
            }
            return (true, rest);
        }
    }
    (false, fs.to_vec())
}

fn write_rational(r: &BigRational, out: &mut String) {
    out.push_str(&r.numer().to_string());
    if !r.is_integer() {
        out.push('/');
        out.push_str(&r.denom().to_string());
    }
}

fn write_exponent(q: &BigRational, out: &mut String) {
    out.push_str(&q.numer().to_string());
    if !q.is_integer() {
        out.push('/');
        out.push_str(&q.denom().to_string());
    }
}
