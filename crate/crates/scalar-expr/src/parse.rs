//! Expression text parser.
//!
//! Accepted shape, with `rational := integer ('/' positive-integer)?`:
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ('^' rational)?
//! atom   := ident | integer | 'i' | '(' expr ')'
//!         | ('ln'|'sqrt'|'exp') '(' expr ')'
//! ```
//!
//! Identifiers must name coordinates of the supplied chart. Exponents are
//! consumed greedily, so `x^1/2` is `x^(1/2)` while `x/2` at term level is a
//! quotient. Results are canonical; printing and reparsing is the identity on
//! canonical expressions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::chart::Chart;
use crate::expr::ScalarExpr;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {found:?} at byte {offset}")]
    UnexpectedChar { offset: usize, found: char },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {expected} at byte {offset}, found {found:?}")]
    Unexpected {
        offset: usize,
        found: String,
        expected: &'static str,
    },
    #[error("unknown coordinate name {name:?} at byte {offset}")]
    UnknownCoordinate { offset: usize, name: String },
    #[error("trailing input at byte {offset}")]
    TrailingInput { offset: usize },
    #[error("exponent denominator must be a positive integer at byte {offset}")]
    BadExponent { offset: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

fn lex(text: &str) -> Result<Lexer, ParseError> {
    let mut toks = Vec::new();
    let bytes = text.as_bytes();
    let mut k = 0;
    while k < bytes.len() {
        let c = bytes[k] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                k += 1;
            }
            '+' => {
                toks.push((k, Tok::Plus));
                k += 1;
            }
            '-' => {
                toks.push((k, Tok::Minus));
                k += 1;
            }
            '*' => {
                toks.push((k, Tok::Star));
                k += 1;
            }
            '/' => {
                toks.push((k, Tok::Slash));
                k += 1;
            }
            '^' => {
                toks.push((k, Tok::Caret));
                k += 1;
            }
            '(' => {
                toks.push((k, Tok::LParen));
                k += 1;
            }
            ')' => {
                toks.push((k, Tok::RParen));
                k += 1;
            }
            '0'..='9' => {
                let start = k;
                while k < bytes.len() && bytes[k].is_ascii_digit() {
                    k += 1;
                }
                toks.push((start, Tok::Number(text[start..k].to_string())));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = k;
                while k < bytes.len()
                    && (bytes[k].is_ascii_alphanumeric() || bytes[k] == b'_')
                {
                    k += 1;
                }
                toks.push((start, Tok::Ident(text[start..k].to_string())));
            }
            _ => return Err(ParseError::UnexpectedChar { offset: k, found: c }),
        }
    }
    Ok(Lexer {
        toks,
        pos: 0,
        end: text.len(),
    })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, want: &Tok, expected: &'static str) -> Result<(), ParseError> {
        match self.next() {
            Some(t) if &t == want => Ok(()),
            Some(t) => Err(ParseError::Unexpected {
                offset: self.toks[self.pos - 1].0,
                found: format!("{t:?}"),
                expected,
            }),
            None => Err(ParseError::UnexpectedEnd),
        }
    }
}

pub fn parse(text: &str, chart: &Chart) -> Result<ScalarExpr, ParseError> {
    let mut lx = lex(text)?;
    let e = parse_expr(&mut lx, chart)?;
    if lx.peek().is_some() {
        return Err(ParseError::TrailingInput { offset: lx.offset() });
    }
    Ok(e.canonical())
}

fn parse_expr(lx: &mut Lexer, chart: &Chart) -> Result<ScalarExpr, ParseError> {
    let mut terms: Vec<ScalarExpr> = Vec::new();
    let leading_neg = match lx.peek() {
        Some(Tok::Minus) => {
            lx.next();
            true
        }
        Some(Tok::Plus) => {
            lx.next();
            false
        }
        _ => false,
    };
    let first = parse_term(lx, chart)?;
    terms.push(if leading_neg { negate(first) } else { first });
    loop {
        match lx.peek() {
            Some(Tok::Plus) => {
                lx.next();
                terms.push(parse_term(lx, chart)?);
            }
            Some(Tok::Minus) => {
                lx.next();
                terms.push(negate(parse_term(lx, chart)?));
            }
            _ => break,
        }
    }
    Ok(if terms.len() == 1 {
        terms.into_iter().next().unwrap()
    } else {
        ScalarExpr::Sum(terms)
    })
}

fn negate(e: ScalarExpr) -> ScalarExpr {
    ScalarExpr::Product(vec![ScalarExpr::int(-1), e])
}

fn parse_term(lx: &mut Lexer, chart: &Chart) -> Result<ScalarExpr, ParseError> {
    let mut acc = parse_factor(lx, chart)?;
    loop {
        match lx.peek() {
            Some(Tok::Star) => {
                lx.next();
                let rhs = parse_factor(lx, chart)?;
                acc = ScalarExpr::Product(vec![acc, rhs]);
            }
            Some(Tok::Slash) => {
                lx.next();
                let rhs = parse_factor(lx, chart)?;
                acc = ScalarExpr::Quotient(Box::new(acc), Box::new(rhs));
            }
            _ => break,
        }
    }
    Ok(acc)
}

fn parse_factor(lx: &mut Lexer, chart: &Chart) -> Result<ScalarExpr, ParseError> {
    let base = parse_atom(lx, chart)?;
    if let Some(Tok::Caret) = lx.peek() {
        lx.next();
        let exp = parse_exponent(lx)?;
        return Ok(ScalarExpr::Power(Box::new(base), exp));
    }
    Ok(base)
}

fn parse_exponent(lx: &mut Lexer) -> Result<BigRational, ParseError> {
    let neg = matches!(lx.peek(), Some(Tok::Minus));
    if neg {
        lx.next();
    }
    let offset = lx.offset();
    let numer = match lx.next() {
        Some(Tok::Number(n)) => n,
        Some(t) => {
            return Err(ParseError::Unexpected {
                offset,
                found: format!("{t:?}"),
                expected: "integer exponent",
            })
        }
        None => return Err(ParseError::UnexpectedEnd),
    };
    let mut num: BigInt = numer.parse().expect("digits");
    if neg {
        num = -num;
    }
    if let Some(Tok::Slash) = lx.peek() {
        lx.next();
        let offset = lx.offset();
        match lx.next() {
            Some(Tok::Number(d)) => {
                let den: BigInt = d.parse().expect("digits");
                if den.is_zero() {
                    return Err(ParseError::BadExponent { offset });
                }
                return Ok(BigRational::new(num, den));
            }
            _ => return Err(ParseError::BadExponent { offset }),
        }
    }
    Ok(BigRational::from(num))
}

fn parse_atom(lx: &mut Lexer, chart: &Chart) -> Result<ScalarExpr, ParseError> {
    let offset = lx.offset();
    match lx.next() {
        Some(Tok::Number(n)) => {
            let v: BigInt = n.parse().expect("digits");
            Ok(ScalarExpr::Rational(BigRational::from(v)))
        }
        Some(Tok::Ident(name)) => {
            if name == "i" {
                return Ok(ScalarExpr::I);
            }
            let is_call = matches!(lx.peek(), Some(Tok::LParen));
            if is_call && (name == "ln" || name == "sqrt" || name == "exp") {
                lx.eat(&Tok::LParen, "'('")?;
                let arg = parse_expr(lx, chart)?;
                lx.eat(&Tok::RParen, "')'")?;
                return Ok(match name.as_str() {
                    "ln" => ScalarExpr::Ln(Box::new(arg)),
                    "sqrt" => ScalarExpr::Sqrt(Box::new(arg)),
                    _ => ScalarExpr::Exp(Box::new(arg)),
                });
            }
            if !chart.has_real(&name) {
                return Err(ParseError::UnknownCoordinate { offset, name });
            }
            Ok(ScalarExpr::Coord(name))
        }
        Some(Tok::LParen) => {
            let e = parse_expr(lx, chart)?;
            lx.eat(&Tok::RParen, "')'")?;
            Ok(e)
        }
        Some(t) => Err(ParseError::Unexpected {
            offset,
            found: format!("{t:?}"),
            expected: "atom",
        }),
        None => Err(ParseError::UnexpectedEnd),
    }
}
