//! Canonical form: flattened n-ary sums and products, folded rational and
//! imaginary constants, merged repeated factors, like terms collected, stable
//! lexicographic ordering. No function rewriting beyond ln(1), exp(0) and
//! rational powers of rational constants.
//!
//! Shape invariants of canonical expressions:
//! - a Product never contains Sum-free nested Products, Quotients, or more
//!   than one leading rational and one imaginary-unit factor;
//! - a Quotient has constant-free numerator and denominator and never nests;
//! - exponent 1/2 is always presented as Sqrt.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

use crate::expr::ScalarExpr;
use crate::gauss::GaussianRational;

pub fn canonicalize(e: &ScalarExpr) -> ScalarExpr {
    match e {
        ScalarExpr::Rational(_) | ScalarExpr::I | ScalarExpr::Coord(_) => e.clone(),
        ScalarExpr::Sum(ts) => can_sum(ts.iter().map(canonicalize).collect()),
        ScalarExpr::Product(fs) => can_product(fs.iter().map(canonicalize).collect()),
        ScalarExpr::Quotient(n, d) => can_quotient(canonicalize(n), canonicalize(d)),
        ScalarExpr::Power(b, q) => can_power(canonicalize(b), q.clone()),
        ScalarExpr::Sqrt(a) => can_sqrt(canonicalize(a)),
        ScalarExpr::Ln(a) => {
            let a = canonicalize(a);
            if a.is_structural_one() {
                ScalarExpr::zero()
            } else {
                ScalarExpr::Ln(Box::new(a))
            }
        }
        ScalarExpr::Exp(a) => {
            let a = canonicalize(a);
            if a.is_structural_zero() {
                ScalarExpr::one()
            } else {
                ScalarExpr::Exp(Box::new(a))
            }
        }
    }
}

/// Gaussian-rational value of a constant expression, if it is one.
pub(crate) fn as_gaussian_const(e: &ScalarExpr) -> Option<GaussianRational> {
    match e {
        ScalarExpr::Rational(r) => Some(GaussianRational::from_rational(r.clone())),
        ScalarExpr::I => Some(GaussianRational::i()),
        ScalarExpr::Sum(ts) => {
            let mut acc = GaussianRational::zero();
            for t in ts {
                acc = acc.add(&as_gaussian_const(t)?);
            }
            Some(acc)
        }
        ScalarExpr::Product(fs) => {
            let mut acc = GaussianRational::one();
            for f in fs {
                acc = acc.mul(&as_gaussian_const(f)?);
            }
            Some(acc)
        }
        ScalarExpr::Quotient(n, d) => {
            let dv = as_gaussian_const(d)?;
            if dv.is_zero() {
                return None;
            }
            Some(as_gaussian_const(n)?.div(&dv))
        }
        _ => None,
    }
}

/// Splits a canonical term into its Gaussian-rational coefficient and the
/// coefficient-free remainder ("monomial key"; 1 for pure constants).
pub(crate) fn decompose_term(t: &ScalarExpr) -> (GaussianRational, ScalarExpr) {
    if let Some(g) = as_gaussian_const(t) {
        return (g, ScalarExpr::one());
    }
    match t {
        ScalarExpr::Rational(r) => (GaussianRational::from_rational(r.clone()), ScalarExpr::one()),
        ScalarExpr::I => (GaussianRational::i(), ScalarExpr::one()),
        ScalarExpr::Product(fs) => {
            let mut coeff = GaussianRational::one();
            let mut rest: Vec<ScalarExpr> = Vec::new();
            for f in fs {
                match f {
                    ScalarExpr::Rational(r) => {
                        coeff = coeff.mul_rational(r);
                    }
                    ScalarExpr::I => coeff = coeff.mul(&GaussianRational::i()),
                    _ => rest.push(f.clone()),
                }
            }
            let key = match rest.len() {
                0 => ScalarExpr::one(),
                1 => rest.into_iter().next().unwrap(),
                _ => ScalarExpr::Product(rest),
            };
            (coeff, key)
        }
        ScalarExpr::Sum(ts) => {
            // Content of a sum: the combined coefficient at its minimal
            // monomial key. Pulling it out keeps quotient and product
            // interiors scale-normalized, so value-equal terms share keys.
            let mut keyed: BTreeMap<ScalarExpr, GaussianRational> = BTreeMap::new();
            for u in ts {
                let (c, k) = decompose_term(u);
                let entry = keyed.entry(k).or_insert_with(GaussianRational::zero);
                *entry = entry.add(&c);
            }
            let content = match keyed.values().next() {
                Some(c) if !c.is_zero() => c.clone(),
                _ => return (GaussianRational::one(), t.clone()),
            };
            if content.is_one() {
                return (GaussianRational::one(), t.clone());
            }
            let inv = GaussianRational::one().div(&content);
            let mut out: Vec<ScalarExpr> = Vec::new();
            for (k, c) in &keyed {
                let scaled = c.mul(&inv);
                if !scaled.is_zero() {
                    recompose_terms(&scaled, k, &mut out);
                }
            }
            out.sort();
            let key = match out.len() {
                0 => ScalarExpr::one(),
                1 => out.into_iter().next().unwrap(),
                _ => ScalarExpr::Sum(out),
            };
            (content, key)
        }
        ScalarExpr::Quotient(n, d) => {
            let (cn, kn) = decompose_term(n);
            let (cd, kd) = decompose_term(d);
            if cd.is_zero() {
                return (GaussianRational::one(), t.clone());
            }
            let key = if kd.is_structural_one() {
                kn
            } else {
                ScalarExpr::Quotient(Box::new(kn), Box::new(kd))
            };
            (cn.div(&cd), key)
        }
        _ => (GaussianRational::one(), t.clone()),
    }
}

/// Rebuilds coeff * key as a canonical term list (one term for real or
/// imaginary coefficients, two when both parts are present).
fn recompose_terms(coeff: &GaussianRational, key: &ScalarExpr, out: &mut Vec<ScalarExpr>) {
    if !coeff.re.is_zero() {
        out.push(make_term(&coeff.re, false, key));
    }
    if !coeff.im.is_zero() {
        out.push(make_term(&coeff.im, true, key));
    }
}

/// coeff * key as a canonical expression. Distributes over sums so scaled
/// and negated sums stay flat for like-term cancellation.
fn scale_key(coeff: &GaussianRational, key: &ScalarExpr) -> ScalarExpr {
    if coeff.is_zero() {
        return ScalarExpr::zero();
    }
    if let ScalarExpr::Sum(ts) = key {
        if !coeff.is_one() {
            let mut scaled: Vec<ScalarExpr> = Vec::new();
            for t in ts {
                let (ct, k) = decompose_term(t);
                recompose_terms(&ct.mul(coeff), &k, &mut scaled);
            }
            return can_sum(scaled);
        }
    }
    let mut out = Vec::new();
    recompose_terms(coeff, key, &mut out);
    out.sort();
    match out.len() {
        0 => ScalarExpr::zero(),
        1 => out.into_iter().next().unwrap(),
        _ => ScalarExpr::Sum(out),
    }
}

fn make_term(r: &BigRational, with_i: bool, key: &ScalarExpr) -> ScalarExpr {
    let mut factors: Vec<ScalarExpr> = Vec::new();
    if !r.is_one() {
        factors.push(ScalarExpr::Rational(r.clone()));
    }
    if with_i {
        factors.push(ScalarExpr::I);
    }
    if !key.is_structural_one() {
        match key {
            ScalarExpr::Product(fs) => factors.extend(fs.iter().cloned()),
            _ => factors.push(key.clone()),
        }
    }
    match factors.len() {
        0 => ScalarExpr::one(),
        1 => factors.into_iter().next().unwrap(),
        _ => ScalarExpr::Product(factors),
    }
}

fn can_sum(terms: Vec<ScalarExpr>) -> ScalarExpr {
    let mut flat: Vec<ScalarExpr> = Vec::new();
    for t in terms {
        match t {
            ScalarExpr::Sum(inner) => flat.extend(inner),
            _ => flat.push(t),
        }
    }
    let mut collected: BTreeMap<ScalarExpr, GaussianRational> = BTreeMap::new();
    for t in &flat {
        let (coeff, key) = decompose_term(t);
        let entry = collected
            .entry(key)
            .or_insert_with(GaussianRational::zero);
        *entry = entry.add(&coeff);
    }
    let mut out: Vec<ScalarExpr> = Vec::new();
    for (key, coeff) in &collected {
        if !coeff.is_zero() {
            recompose_terms(coeff, key, &mut out);
        }
    }
    out.sort();
    match out.len() {
        0 => ScalarExpr::zero(),
        1 => out.into_iter().next().unwrap(),
        _ => ScalarExpr::Sum(out),
    }
}

fn can_product(factors: Vec<ScalarExpr>) -> ScalarExpr {
    // Flatten and lift quotients so a product never contains one.
    let mut nums: Vec<ScalarExpr> = Vec::new();
    let mut dens: Vec<ScalarExpr> = Vec::new();
    let mut pulled = GaussianRational::one();
    let mut stack = factors;
    stack.reverse();
    while let Some(f) = stack.pop() {
        match f {
            ScalarExpr::Product(inner) => {
                for g in inner.into_iter().rev() {
                    stack.push(g);
                }
            }
            ScalarExpr::Quotient(n, d) => {
                stack.push(*n);
                dens.push(*d);
            }
            // A sum whose terms share one key collapses to content times
            // key; the key may be a quotient, so it goes back through the
            // flattener instead of straight into the factor list.
            sum @ ScalarExpr::Sum(_) => {
                let (c, k) = decompose_term(&sum);
                if c.is_one() {
                    nums.push(sum);
                } else {
                    pulled = pulled.mul(&c);
                    stack.push(k);
                }
            }
            _ => nums.push(f),
        }
    }
    if !dens.is_empty() {
        let q = can_quotient(can_product(nums), can_product(dens));
        if pulled.is_one() {
            return q;
        }
        let (c, k) = decompose_term(&q);
        return scale_key(&c.mul(&pulled), &k);
    }

    let mut coeff = pulled;
    let mut bases: BTreeMap<ScalarExpr, BigRational> = BTreeMap::new();
    for f in nums {
        if let Some(g) = as_gaussian_const(&f) {
            if g.is_zero() {
                return ScalarExpr::zero();
            }
            coeff = coeff.mul(&g);
            continue;
        }
        match f {
            ScalarExpr::Power(b, q) => {
                *bases.entry(*b).or_insert_with(BigRational::zero) += q;
            }
            ScalarExpr::Sqrt(b) => {
                *bases.entry(*b).or_insert_with(BigRational::zero) +=
                    BigRational::new(BigInt::from(1), BigInt::from(2));
            }
            other => {
                *bases.entry(other).or_insert_with(BigRational::zero) += BigRational::one();
            }
        }
    }

    let mut rest: Vec<ScalarExpr> = Vec::new();
    let mut below: Vec<ScalarExpr> = Vec::new();
    for (b, q) in bases {
        if q.is_zero() {
            continue;
        }
        // Net negative exponents turn into denominator factors so reciprocal
        // powers and written-out quotients share one shape.
        let negative = q.is_negative();
        let p = can_power(b.clone(), if negative { -q.clone() } else { q.clone() });
        if let Some(g) = as_gaussian_const(&p) {
            if g.is_zero() {
                if negative {
                    // A vanished denominator base: keep the undefined power
                    // for evaluation to reject.
                    rest.push(ScalarExpr::Power(Box::new(b), q));
                    continue;
                }
                return ScalarExpr::zero();
            }
            coeff = if negative { coeff.div(&g) } else { coeff.mul(&g) };
            continue;
        }
        let (c2, key) = match p {
            // Power of a product redistributes; refold instead of nesting.
            refold @ (ScalarExpr::Product(_) | ScalarExpr::Quotient(_, _)) => {
                decompose_term(&can_product(vec![refold]))
            }
            sum @ ScalarExpr::Sum(_) => decompose_term(&sum),
            other => (GaussianRational::one(), other),
        };
        coeff = if negative {
            coeff.div(&c2)
        } else {
            coeff.mul(&c2)
        };
        let side = if negative { &mut below } else { &mut rest };
        match key {
            ScalarExpr::Product(fs) => side.extend(fs),
            k if !k.is_structural_one() => side.push(k),
            _ => {}
        }
    }
    rest.sort();
    below.sort();

    if coeff.is_zero() {
        return ScalarExpr::zero();
    }
    if !below.is_empty() {
        let num_key = match rest.len() {
            0 => ScalarExpr::one(),
            1 => rest.into_iter().next().unwrap(),
            _ => ScalarExpr::Product(rest),
        };
        let den_key = match below.len() {
            1 => below.into_iter().next().unwrap(),
            _ => ScalarExpr::Product(below),
        };
        return can_quotient(scale_key(&coeff, &num_key), den_key);
    }
    // Content extraction can surface a factor that repeats an existing one;
    // refold once so repeats merge as powers.
    if rest.windows(2).any(|w| w[0] == w[1]) {
        let folded = can_product(rest);
        let (c2, key) = decompose_term(&folded);
        return scale_key(&coeff.mul(&c2), &key);
    }
    // A properly complex coefficient splits the product into a two-term sum,
    // so canonical products carry at most a rational and an i factor.
    let key = match rest.len() {
        0 => ScalarExpr::one(),
        1 => rest.into_iter().next().unwrap(),
        _ => ScalarExpr::Product(rest),
    };
    scale_key(&coeff, &key)
}

/// Split `e` as `top / bottom` with both sides free of top-level quotients.
/// Returns `None` when there is nothing to lift.
fn lift_quotient(e: &ScalarExpr) -> Option<(ScalarExpr, ScalarExpr)> {
    match e {
        ScalarExpr::Quotient(n, d) => Some(((**n).clone(), (**d).clone())),
        ScalarExpr::Product(fs) if fs.iter().any(|f| matches!(f, ScalarExpr::Quotient(_, _))) => {
            let mut nums = Vec::new();
            let mut dens = Vec::new();
            for f in fs {
                match f {
                    ScalarExpr::Quotient(n, d) => {
                        nums.push((**n).clone());
                        dens.push((**d).clone());
                    }
                    other => nums.push(other.clone()),
                }
            }
            Some((can_product(nums), can_product(dens)))
        }
        _ => None,
    }
}

fn can_quotient(num: ScalarExpr, den: ScalarExpr) -> ScalarExpr {
    if num.is_structural_zero() && !den.is_structural_zero() {
        return ScalarExpr::zero();
    }
    if let Some(g) = as_gaussian_const(&den) {
        if g.is_zero() {
            // Undefined; preserved so evaluation reports division by zero.
            return ScalarExpr::Quotient(Box::new(num), Box::new(den));
        }
        let inv = GaussianRational::one().div(&g);
        let (cn, kn) = decompose_term(&num);
        return scale_key(&cn.mul(&inv), &kn);
    }
    if den.is_structural_one() {
        return num;
    }
    // Merge quotients nested on either side into a single one.
    let lifted_n = lift_quotient(&num);
    let lifted_d = lift_quotient(&den);
    if lifted_n.is_some() || lifted_d.is_some() {
        let (n1, d1) = lifted_n.unwrap_or((num, ScalarExpr::one()));
        let (n2, d2) = lifted_d.unwrap_or((den, ScalarExpr::one()));
        return can_quotient(can_product(vec![n1, d2]), can_product(vec![d1, n2]));
    }
    if num == den {
        return ScalarExpr::one();
    }
    // Cancel shared base powers and pull constants out of both sides so
    // equal values share one shape, e.g. sqrt(x)/x becomes 1/sqrt(x).
    let (cn, mut net) = factor_exponents(&num);
    let (cd, dmap) = factor_exponents(&den);
    for (b, q) in dmap {
        *net.entry(b).or_insert_with(BigRational::zero) -= q;
    }
    let mut coeff = cn.div(&cd);
    let mut top: Vec<ScalarExpr> = Vec::new();
    let mut bottom: Vec<ScalarExpr> = Vec::new();
    for (b, q) in net {
        if q.is_zero() {
            continue;
        }
        let negative = q.is_negative();
        let p = can_power(b.clone(), if negative { -q.clone() } else { q.clone() });
        if let Some(g) = as_gaussian_const(&p) {
            if g.is_zero() {
                // A vanished base means an undefined power; keep it opaque.
                top.push(ScalarExpr::Power(Box::new(b), q));
                continue;
            }
            coeff = if negative { coeff.div(&g) } else { coeff.mul(&g) };
            continue;
        }
        if negative {
            bottom.push(p);
        } else {
            top.push(p);
        }
    }
    top.sort();
    bottom.sort();
    let top_key = match top.len() {
        0 => ScalarExpr::one(),
        1 => top.into_iter().next().unwrap(),
        _ => ScalarExpr::Product(top),
    };
    if bottom.is_empty() {
        return scale_key(&coeff, &top_key);
    }
    let bottom_key = match bottom.len() {
        1 => bottom.into_iter().next().unwrap(),
        _ => ScalarExpr::Product(bottom),
    };
    scale_key(
        &coeff,
        &ScalarExpr::Quotient(Box::new(top_key), Box::new(bottom_key)),
    )
}

/// Base-to-exponent map of a canonical term, separated from its scalar
/// content. Multi-term sums stay opaque single bases; quotients contribute
/// their denominator bases with negated exponents.
fn factor_exponents(e: &ScalarExpr) -> (GaussianRational, BTreeMap<ScalarExpr, BigRational>) {
    let (c, key) = decompose_term(e);
    let mut map: BTreeMap<ScalarExpr, BigRational> = BTreeMap::new();
    accumulate_bases(&key, false, &mut map);
    (c, map)
}

fn accumulate_bases(f: &ScalarExpr, invert: bool, map: &mut BTreeMap<ScalarExpr, BigRational>) {
    let signed = |q: BigRational| if invert { -q } else { q };
    match f {
        k if k.is_structural_one() => {}
        ScalarExpr::Product(fs) => {
            for g in fs {
                accumulate_bases(g, invert, map);
            }
        }
        ScalarExpr::Quotient(n, d) => {
            accumulate_bases(n, invert, map);
            accumulate_bases(d, !invert, map);
        }
        ScalarExpr::Power(b, q) => {
            *map.entry((**b).clone()).or_insert_with(BigRational::zero) += signed(q.clone());
        }
        ScalarExpr::Sqrt(b) => {
            *map.entry((**b).clone()).or_insert_with(BigRational::zero) +=
                signed(BigRational::new(BigInt::from(1), BigInt::from(2)));
        }
        other => {
            *map.entry(other.clone()).or_insert_with(BigRational::zero) +=
                signed(BigRational::one());
        }
    }
}

fn can_sqrt(arg: ScalarExpr) -> ScalarExpr {
    can_power(arg, BigRational::new(BigInt::from(1), BigInt::from(2)))
}

fn can_power(base: ScalarExpr, exp: BigRational) -> ScalarExpr {
    if exp.is_zero() {
        return ScalarExpr::one();
    }
    if exp.is_one() {
        return base;
    }
    match base {
        ScalarExpr::Rational(r) => {
            if r.is_zero() && exp.is_negative() {
                // Undefined; keep for evaluation to reject.
                return ScalarExpr::Power(Box::new(ScalarExpr::Rational(r)), exp);
            }
            if exp.is_integer() {
                if let Some(k) = to_i64(&exp) {
                    return ScalarExpr::Rational(rational_pow(&r, k));
                }
            } else if let Some(root) = rational_root(&r, exp.denom()) {
                if let Some(p) = numer_i64(&exp) {
                    return ScalarExpr::Rational(rational_pow(&root, p));
                }
            }
            present_power(ScalarExpr::Rational(r), exp)
        }
        ScalarExpr::I => {
            if exp.is_integer() {
                if let Some(k) = to_i64(&exp) {
                    return match k.rem_euclid(4) {
                        0 => ScalarExpr::one(),
                        1 => ScalarExpr::I,
                        2 => ScalarExpr::int(-1),
                        _ => ScalarExpr::Product(vec![ScalarExpr::int(-1), ScalarExpr::I]),
                    };
                }
            }
            present_power(ScalarExpr::I, exp)
        }
        ScalarExpr::Power(b2, q2) => can_power(*b2, exp * q2),
        ScalarExpr::Sqrt(b2) => {
            can_power(*b2, exp / BigRational::from(BigInt::from(2)))
        }
        ScalarExpr::Product(fs) => {
            can_product(fs.into_iter().map(|f| can_power(f, exp.clone())).collect())
        }
        ScalarExpr::Quotient(n, d) => {
            can_quotient(can_power(*n, exp.clone()), can_power(*d, exp))
        }
        sum @ ScalarExpr::Sum(_) => {
            // A sum keeps no scalar content under a power: the content comes
            // out as content^exp whenever that stays exact.
            let (c, k) = decompose_term(&sum);
            if !c.is_one() && !k.is_structural_one() {
                if let Some(n) = to_i64(&exp).filter(|_| exp.is_integer()) {
                    return scale_key(&c.pow_i64(n), &present_power(k, exp));
                }
                if c.im.is_zero() && c.re.is_positive() && !c.re.is_one() {
                    return can_product(vec![
                        can_power(ScalarExpr::Rational(c.re.clone()), exp.clone()),
                        present_power(k, exp),
                    ]);
                }
            }
            present_power(sum, exp)
        }
        other => present_power(other, exp),
    }
}

fn present_power(base: ScalarExpr, exp: BigRational) -> ScalarExpr {
    // Negative exponents present as reciprocals so the derivative of a root
    // and the quotient rule land on the same tree.
    if exp.is_negative() {
        return ScalarExpr::Quotient(
            Box::new(ScalarExpr::one()),
            Box::new(present_power(base, -exp)),
        );
    }
    if exp == BigRational::new(BigInt::from(1), BigInt::from(2)) {
        ScalarExpr::Sqrt(Box::new(base))
    } else {
        ScalarExpr::Power(Box::new(base), exp)
    }
}

fn to_i64(r: &BigRational) -> Option<i64> {
    use num_traits::ToPrimitive;
    r.to_integer().to_i64()
}

fn numer_i64(r: &BigRational) -> Option<i64> {
    use num_traits::ToPrimitive;
    r.numer().to_i64()
}

/// Exact q-th root of a rational, when it exists.
fn rational_root(r: &BigRational, q: &BigInt) -> Option<BigRational> {
    use num_traits::ToPrimitive;
    let k = q.to_u32()?;
    if k == 0 {
        return None;
    }
    if r.is_negative() && k % 2 == 0 {
        return None;
    }
    let root_of = |n: &BigInt| -> Option<BigInt> {
        let (sign, mag) = if n.is_negative() {
            (-1, -n)
        } else {
            (1, n.clone())
        };
        let root = mag.nth_root(k);
        let mut check = BigInt::one();
        for _ in 0..k {
            check *= &root;
        }
        if check == mag {
            Some(BigInt::from(sign) * root)
        } else {
            None
        }
    };
    let n = root_of(r.numer())?;
    let d = root_of(r.denom())?;
    Some(BigRational::new(n, d))
}

fn rational_pow(r: &BigRational, k: i64) -> BigRational {
    let mut acc = BigRational::one();
    let base = if k < 0 { r.recip() } else { r.clone() };
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}
