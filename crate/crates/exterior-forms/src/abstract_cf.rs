//! Abstract coframes: declared structure equations and function
//! differentials, with a purely algebraic exterior derivative.

use std::collections::BTreeMap;
use std::sync::Arc;

use scalar_expr::{diff, free_coords, ScalarExpr};

use crate::basis::{Coframe, Reality};
use crate::error::FormError;
use crate::form::{Form, MAX_DEGREE};

/// Declared differential of an auxiliary scalar function.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionDifferential {
    Known(Form),
    /// Present in the table but with no usable value; taking d through it
    /// is an error.
    Placeholder,
}

#[derive(Debug, Clone)]
pub struct AbstractCoframe {
    core: Arc<Coframe>,
    d_table: BTreeMap<String, Form>,
    fn_table: BTreeMap<String, FunctionDifferential>,
}

impl AbstractCoframe {
    /// Build a coframe from structure equations. Entries for conjugate
    /// partners may be omitted; they are filled in by conjugation. The
    /// function table is extended the same way.
    pub fn new(
        core: Arc<Coframe>,
        d_entries: BTreeMap<String, Form>,
        fn_entries: BTreeMap<String, FunctionDifferential>,
    ) -> Result<Self, FormError> {
        let mut d_table = BTreeMap::new();
        for (sym, form) in d_entries {
            core.index_of(&sym)?;
            assert_eq!(form.degree(), 2, "structure equation degree");
            d_table.insert(sym, form);
        }
        for b in core.basis() {
            if d_table.contains_key(&b.symbol) {
                continue;
            }
            if let Reality::PairedWith(p) = &b.reality {
                if let Some(partner_eq) = d_table.get(p) {
                    let conj = partner_eq.conjugate();
                    d_table.insert(b.symbol.clone(), conj);
                    continue;
                }
            }
            return Err(FormError::MissingStructureEquation(b.symbol.clone()));
        }
        let mut fn_table = fn_entries;
        let names: Vec<String> = fn_table.keys().cloned().collect();
        for name in names {
            if let Some(partner) = core.scalar_conjugate(&name) {
                if !fn_table.contains_key(&partner) {
                    let mirrored = match &fn_table[&name] {
                        FunctionDifferential::Known(f) => {
                            FunctionDifferential::Known(f.conjugate())
                        }
                        FunctionDifferential::Placeholder => FunctionDifferential::Placeholder,
                    };
                    fn_table.insert(partner, mirrored);
                }
            }
        }
        Ok(AbstractCoframe {
            core,
            d_table,
            fn_table,
        })
    }

    pub fn core(&self) -> &Arc<Coframe> {
        &self.core
    }

    pub fn structure_equation(&self, symbol: &str) -> Result<&Form, FormError> {
        self.d_table
            .get(symbol)
            .ok_or_else(|| FormError::MissingStructureEquation(symbol.to_string()))
    }

    /// Differential of a scalar coefficient through the function table.
    fn d_scalar(&self, c: &ScalarExpr) -> Result<Form, FormError> {
        let mut out = Form::zero(self.core.clone(), 1);
        for name in free_coords(c) {
            match self.fn_table.get(&name) {
                None => return Err(FormError::UndeclaredDifferential(name)),
                Some(FunctionDifferential::Placeholder) => {
                    return Err(FormError::PlaceholderDifferential(name))
                }
                Some(FunctionDifferential::Known(ds)) => {
                    let partial = diff(c, &name);
                    if !partial.is_structural_zero() {
                        out = out.add(&ds.scale(&partial));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Algebraic exterior derivative: Leibniz rule over the declared
    /// structure equations and function differentials.
    pub fn d(&self, a: &Form) -> Result<Form, FormError> {
        assert!(
            Arc::ptr_eq(a.core(), &self.core) || **a.core() == *self.core,
            "form is not on this coframe"
        );
        let out_degree = a.degree() + 1;
        if out_degree > MAX_DEGREE {
            return Err(FormError::DegreeCap(out_degree));
        }
        let mut out = Form::zero(self.core.clone(), out_degree);
        for (indices, coeff) in a.terms() {
            // dc ∧ basis monomial
            let dc = self.d_scalar(coeff)?;
            for (dci, dcc) in dc.terms() {
                let mut term = Vec::with_capacity(indices.len() + 1);
                term.extend_from_slice(dci);
                term.extend_from_slice(indices);
                out.add_term_unsorted(term, dcc.clone());
            }
            // c times d applied to each slot, with alternating sign
            for (k, ik) in indices.iter().enumerate() {
                let dk = self.structure_equation(self.core.symbol(*ik))?;
                let slot_sign = k % 2 == 1;
                for (di, dcoeff) in dk.terms() {
                    let mut term = Vec::with_capacity(indices.len() + 1);
                    term.extend_from_slice(&indices[..k]);
                    term.extend_from_slice(di);
                    term.extend_from_slice(&indices[k + 1..]);
                    let mut c = (coeff.clone() * dcoeff.clone()).canonical();
                    if slot_sign {
                        c = c.neg();
                    }
                    out.add_term_unsorted(term, c);
                }
            }
        }
        Ok(out)
    }

    /// d of each structure equation; all zero certifies d∘d = 0 for the
    /// declared table.
    pub fn d_squared_residuals(&self) -> Result<BTreeMap<String, Form>, FormError> {
        let mut out = BTreeMap::new();
        for b in self.core.basis() {
            let eq = self.structure_equation(&b.symbol)?;
            out.insert(b.symbol.clone(), self.d(eq)?);
        }
        Ok(out)
    }
}
