//! Exterior forms with symbolic coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use scalar_expr::{conj_with, ScalarExpr};

use crate::basis::Coframe;
use crate::error::FormError;

pub const MAX_DEGREE: u8 = 4;

/// Exterior form of homogeneous degree. Terms map strictly increasing index
/// tuples to nonzero canonical coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    core: Arc<Coframe>,
    degree: u8,
    terms: BTreeMap<Vec<u8>, ScalarExpr>,
}

/// Sorts indices, returning the permutation sign, or `None` when an index
/// repeats (the term vanishes).
fn sort_sign(indices: &mut Vec<u8>) -> Option<bool> {
    let mut negative = false;
    // insertion sort with inversion parity; tuples are tiny
    for k in 1..indices.len() {
        let mut j = k;
        while j > 0 && indices[j - 1] > indices[j] {
            indices.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    for w in indices.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some(negative)
}

impl Form {
    pub fn zero(core: Arc<Coframe>, degree: u8) -> Self {
        Form {
            core,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Degree-0 form holding a scalar coefficient.
    pub fn scalar(core: Arc<Coframe>, value: ScalarExpr) -> Self {
        let mut f = Form::zero(core, 0);
        f.accumulate(Vec::new(), value);
        f
    }

    /// The basis one-form with the given symbol.
    pub fn basis(core: Arc<Coframe>, symbol: &str) -> Result<Self, FormError> {
        let idx = core.index_of(symbol)?;
        let mut f = Form::zero(core, 1);
        f.accumulate(vec![idx], ScalarExpr::one());
        Ok(f)
    }

    /// Build a form from (symbol tuple, coefficient) components. Tuples may
    /// be unordered; signs are adjusted.
    pub fn from_components(
        core: Arc<Coframe>,
        degree: u8,
        components: &[(&[&str], ScalarExpr)],
    ) -> Result<Self, FormError> {
        if degree > MAX_DEGREE {
            return Err(FormError::DegreeCap(degree));
        }
        let mut f = Form::zero(core.clone(), degree);
        for (syms, coeff) in components {
            assert_eq!(syms.len(), degree as usize, "component arity");
            let mut idx = Vec::with_capacity(syms.len());
            for s in *syms {
                idx.push(core.index_of(s)?);
            }
            match sort_sign(&mut idx) {
                None => continue,
                Some(neg) => {
                    let c = if neg { coeff.neg() } else { coeff.clone() };
                    f.accumulate(idx, c);
                }
            }
        }
        Ok(f)
    }

    /// Insert a possibly unsorted wedge term, adjusting the sign.
    pub(crate) fn add_term_unsorted(&mut self, mut indices: Vec<u8>, coeff: ScalarExpr) {
        match sort_sign(&mut indices) {
            None => {}
            Some(true) => self.accumulate(indices, coeff.neg()),
            Some(false) => self.accumulate(indices, coeff),
        }
    }

    fn accumulate(&mut self, indices: Vec<u8>, coeff: ScalarExpr) {
        let c = coeff.canonical();
        if c.is_structural_zero() {
            return;
        }
        match self.terms.entry(indices) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let merged = (o.get().clone() + c).canonical();
                if merged.is_structural_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = merged;
                }
            }
        }
    }

    pub fn core(&self) -> &Arc<Coframe> {
        &self.core
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn is_zero_form(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &ScalarExpr)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    fn assert_compatible(&self, other: &Form) {
        assert!(
            Arc::ptr_eq(&self.core, &other.core) || *self.core == *other.core,
            "forms live on different coframes"
        );
        assert_eq!(self.degree, other.degree, "form degrees differ");
    }

    pub fn add(&self, other: &Form) -> Form {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.accumulate(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        self.map_coefficients(|c| c.neg())
    }

    pub fn scale(&self, k: &ScalarExpr) -> Form {
        self.map_coefficients(|c| (c.clone() * k.clone()).canonical())
    }

    pub fn map_coefficients(&self, f: impl Fn(&ScalarExpr) -> ScalarExpr) -> Form {
        let mut out = Form::zero(self.core.clone(), self.degree);
        for (k, v) in &self.terms {
            out.accumulate(k.clone(), f(v));
        }
        out
    }

    pub fn wedge(&self, other: &Form) -> Result<Form, FormError> {
        if !(Arc::ptr_eq(&self.core, &other.core) || *self.core == *other.core) {
            return Err(FormError::MixedCoframes);
        }
        let degree = self.degree + other.degree;
        if degree > MAX_DEGREE {
            return Err(FormError::DegreeCap(degree));
        }
        let mut out = Form::zero(self.core.clone(), degree);
        for (ik, ic) in &self.terms {
            for (jk, jc) in &other.terms {
                let mut merged: Vec<u8> = ik.iter().chain(jk.iter()).copied().collect();
                let Some(neg) = sort_sign(&mut merged) else {
                    continue;
                };
                let mut c = (ic.clone() * jc.clone()).canonical();
                if neg {
                    c = c.neg();
                }
                out.accumulate(merged, c);
            }
        }
        Ok(out)
    }

    /// Complex conjugate: basis indices swap with their partners, scalar
    /// coefficients conjugate through the coframe's symbol pairing.
    pub fn conjugate(&self) -> Form {
        let core = self.core.clone();
        let swap = |name: &str| core.scalar_conjugate(name);
        let mut out = Form::zero(self.core.clone(), self.degree);
        for (k, v) in &self.terms {
            let mut mapped: Vec<u8> = k.iter().map(|i| self.core.conjugate_index(*i)).collect();
            let neg = sort_sign(&mut mapped).expect("conjugation is a basis bijection");
            let mut c = conj_with(v, &swap);
            if neg {
                c = c.neg();
            }
            out.accumulate(mapped, c);
        }
        out
    }

    /// Coefficient of the given wedge monomial, sign-adjusted for ordering.
    /// Zero for monomials not present or with repeated symbols.
    pub fn coefficient(&self, symbols: &[&str]) -> Result<ScalarExpr, FormError> {
        assert_eq!(symbols.len(), self.degree as usize, "monomial arity");
        let mut idx = Vec::with_capacity(symbols.len());
        for s in symbols {
            idx.push(self.core.index_of(s)?);
        }
        match sort_sign(&mut idx) {
            None => Ok(ScalarExpr::zero()),
            Some(neg) => Ok(match self.terms.get(&idx) {
                None => ScalarExpr::zero(),
                Some(c) => {
                    if neg {
                        c.neg()
                    } else {
                        c.clone()
                    }
                }
            }),
        }
    }

    /// Drops every term containing one of the generator symbols.
    pub fn reduce_mod(&self, generators: &[&str]) -> Result<Form, FormError> {
        let mut gen_idx = Vec::with_capacity(generators.len());
        for g in generators {
            gen_idx.push(self.core.index_of(g)?);
        }
        let mut out = Form::zero(self.core.clone(), self.degree);
        for (k, v) in &self.terms {
            if k.iter().any(|i| gen_idx.contains(i)) {
                continue;
            }
            out.accumulate(k.clone(), v.clone());
        }
        Ok(out)
    }

    /// Rewrite along a basis dictionary: each basis symbol is replaced by the
    /// dictionary's one-form, coefficients carried through unchanged. All
    /// dictionary values must share one (possibly different) coframe.
    pub fn substitute(&self, dictionary: &BTreeMap<String, Form>) -> Result<Form, FormError> {
        let target = match dictionary.values().next() {
            Some(f) => f.core.clone(),
            None => self.core.clone(),
        };
        for f in dictionary.values() {
            if f.degree != 1 {
                return Err(FormError::NonLinearSubstitution);
            }
            if !(Arc::ptr_eq(&f.core, &target) || *f.core == *target) {
                return Err(FormError::MixedCoframes);
            }
        }
        let mut out = Form::zero(target.clone(), self.degree);
        for (k, v) in &self.terms {
            let mut acc = Form::scalar(target.clone(), v.clone());
            for i in k {
                let sym = self.core.symbol(*i);
                let img = dictionary
                    .get(sym)
                    .ok_or_else(|| FormError::MissingSubstitution(sym.to_string()))?;
                acc = acc.wedge(img)?;
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// JSON document `{degree, terms: [{indices, coeff}]}` with symbolic
    /// indices and grammar-conformant coefficient strings.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(k, v)| {
                serde_json::json!({
                    "indices": k.iter().map(|i| self.core.symbol(*i)).collect::<Vec<_>>(),
                    "coeff": v.to_string(),
                })
            })
            .collect();
        serde_json::json!({ "degree": self.degree, "terms": terms })
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k.is_empty() {
                write!(f, "{v}")?;
            } else {
                let mono = k
                    .iter()
                    .map(|i| self.core.symbol(*i))
                    .collect::<Vec<_>>()
                    .join("^");
                write!(f, "({v})*{mono}")?;
            }
        }
        Ok(())
    }
}
