//! Square matrices of scalars and of forms, with the products needed for
//! connection matrices and their curvature.

use std::collections::BTreeMap;
use std::sync::Arc;

use scalar_expr::{conj, ScalarExpr};
use serde_json::{json, Value};

use crate::abstract_cf::AbstractCoframe;
use crate::basis::Coframe;
use crate::chart_d::d_chart;
use crate::error::FormError;
use crate::form::Form;

/// Square matrix of scalar expressions.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarMatrix {
    dim: usize,
    entries: Vec<ScalarExpr>,
}

impl ScalarMatrix {
    pub fn from_rows(rows: Vec<Vec<ScalarExpr>>) -> Result<Self, FormError> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(FormError::DimensionMismatch);
        }
        Ok(ScalarMatrix {
            dim,
            entries: rows.into_iter().flatten().map(|e| e.canonical()).collect(),
        })
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![ScalarExpr::zero(); dim * dim];
        for k in 0..dim {
            entries[k * dim + k] = ScalarExpr::one();
        }
        ScalarMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &ScalarExpr {
        &self.entries[i * self.dim + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: ScalarExpr) {
        self.entries[i * self.dim + j] = v.canonical();
    }

    pub fn mul(&self, other: &ScalarMatrix) -> Result<ScalarMatrix, FormError> {
        if self.dim != other.dim {
            return Err(FormError::DimensionMismatch);
        }
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let terms: Vec<ScalarExpr> = (0..n)
                    .map(|k| self.entry(i, k).clone() * other.entry(k, j).clone())
                    .collect();
                entries.push(ScalarExpr::sum(terms));
            }
        }
        Ok(ScalarMatrix { dim: n, entries })
    }

    pub fn add(&self, other: &ScalarMatrix) -> Result<ScalarMatrix, FormError> {
        if self.dim != other.dim {
            return Err(FormError::DimensionMismatch);
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(ScalarMatrix {
            dim: self.dim,
            entries,
        })
    }

    pub fn sub(&self, other: &ScalarMatrix) -> Result<ScalarMatrix, FormError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ScalarMatrix {
        ScalarMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e.clone().neg()).collect(),
        }
    }

    pub fn scale(&self, c: &ScalarExpr) -> ScalarMatrix {
        ScalarMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|e| (e.clone() * c.clone()).canonical())
                .collect(),
        }
    }

    pub fn transpose(&self) -> ScalarMatrix {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.entry(j, i).clone());
            }
        }
        ScalarMatrix { dim: n, entries }
    }

    pub fn conj(&self) -> ScalarMatrix {
        ScalarMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(conj).collect(),
        }
    }

    pub fn conj_transpose(&self) -> ScalarMatrix {
        self.conj().transpose()
    }

    pub fn trace(&self) -> ScalarExpr {
        ScalarExpr::sum((0..self.dim).map(|k| self.entry(k, k).clone()).collect())
    }

    /// Laplace expansion along the first row; fine at the sizes used here.
    pub fn det(&self) -> ScalarExpr {
        match self.dim {
            0 => ScalarExpr::one(),
            1 => self.entry(0, 0).clone(),
            _ => {
                let mut terms = Vec::with_capacity(self.dim);
                for j in 0..self.dim {
                    let c = self.entry(0, j);
                    if c.is_structural_zero() {
                        continue;
                    }
                    let mut t = c.clone() * self.minor(0, j).det();
                    if j % 2 == 1 {
                        t = t.neg();
                    }
                    terms.push(t);
                }
                ScalarExpr::sum(terms)
            }
        }
    }

    fn minor(&self, row: usize, col: usize) -> ScalarMatrix {
        let n = self.dim;
        let mut entries = Vec::with_capacity((n - 1) * (n - 1));
        for i in 0..n {
            if i == row {
                continue;
            }
            for j in 0..n {
                if j == col {
                    continue;
                }
                entries.push(self.entry(i, j).clone());
            }
        }
        ScalarMatrix {
            dim: n - 1,
            entries,
        }
    }

    /// Adjugate-over-determinant inverse. Fails when the determinant
    /// simplifies to zero.
    pub fn inverse(&self) -> Result<ScalarMatrix, FormError> {
        let det = self.det();
        if det.is_structural_zero() {
            return Err(FormError::SingularMatrix);
        }
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                // adjugate: cofactor of (j, i)
                let mut c = self.minor(j, i).det();
                if (i + j) % 2 == 1 {
                    c = c.neg();
                }
                entries.push(ScalarExpr::quotient(c, det.clone()));
            }
        }
        Ok(ScalarMatrix { dim: n, entries })
    }

    /// Left multiplication of a matrix of forms by this scalar matrix.
    pub fn mul_form(&self, m: &MatrixForm) -> Result<MatrixForm, FormError> {
        if self.dim != m.dim {
            return Err(FormError::DimensionMismatch);
        }
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Form::zero(m.core().clone(), m.degree());
                for k in 0..n {
                    acc = acc.add(&m.entry(k, j).scale(self.entry(i, k)));
                }
                entries.push(acc);
            }
        }
        MatrixForm::from_flat(n, entries)
    }
}

/// Square matrix whose entries are forms of a single degree on a shared
/// coframe.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixForm {
    dim: usize,
    entries: Vec<Form>,
}

impl MatrixForm {
    pub fn from_rows(rows: Vec<Vec<Form>>) -> Result<Self, FormError> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(FormError::DimensionMismatch);
        }
        Self::from_flat(dim, rows.into_iter().flatten().collect())
    }

    fn from_flat(dim: usize, entries: Vec<Form>) -> Result<Self, FormError> {
        assert_eq!(entries.len(), dim * dim);
        if dim == 0 {
            return Ok(MatrixForm { dim, entries });
        }
        let core = entries[0].core().clone();
        let degree = entries[0].degree();
        for e in &entries {
            if e.degree() != degree {
                return Err(FormError::DimensionMismatch);
            }
            if !(Arc::ptr_eq(e.core(), &core) || **e.core() == *core) {
                return Err(FormError::MixedCoframes);
            }
        }
        Ok(MatrixForm { dim, entries })
    }

    pub fn zero(core: Arc<Coframe>, dim: usize, degree: u8) -> Self {
        MatrixForm {
            dim,
            entries: vec![Form::zero(core, degree); dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u8 {
        self.entries[0].degree()
    }

    pub fn core(&self) -> &Arc<Coframe> {
        self.entries[0].core()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Form {
        &self.entries[i * self.dim + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, f: Form) {
        assert_eq!(f.degree(), self.degree(), "matrix entry degree");
        self.entries[i * self.dim + j] = f;
    }

    pub fn add(&self, other: &MatrixForm) -> Result<MatrixForm, FormError> {
        if self.dim != other.dim {
            return Err(FormError::DimensionMismatch);
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(MatrixForm {
            dim: self.dim,
            entries,
        })
    }

    pub fn sub(&self, other: &MatrixForm) -> Result<MatrixForm, FormError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MatrixForm {
        MatrixForm {
            dim: self.dim,
            entries: self.entries.iter().map(Form::neg).collect(),
        }
    }

    pub fn map<F: Fn(&Form) -> Form>(&self, f: F) -> MatrixForm {
        MatrixForm {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<F: Fn(&Form) -> Result<Form, FormError>>(
        &self,
        f: F,
    ) -> Result<MatrixForm, FormError> {
        let entries = self
            .entries
            .iter()
            .map(f)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MatrixForm {
            dim: self.dim,
            entries,
        })
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(Form::is_zero_form)
    }

    /// Entrywise wedge product contraction: (M ∧ N)_ij = Σ_k M_ik ∧ N_kj.
    pub fn wedge(&self, other: &MatrixForm) -> Result<MatrixForm, FormError> {
        if self.dim != other.dim {
            return Err(FormError::DimensionMismatch);
        }
        let n = self.dim;
        let out_degree = self.degree() + other.degree();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Form::zero(self.core().clone(), out_degree);
                for k in 0..n {
                    acc = acc.add(&self.entry(i, k).wedge(other.entry(k, j))?);
                }
                entries.push(acc);
            }
        }
        Ok(MatrixForm { dim: n, entries })
    }

    /// Right multiplication by a scalar matrix.
    pub fn mul_scalar(&self, s: &ScalarMatrix) -> Result<MatrixForm, FormError> {
        if self.dim != s.dim {
            return Err(FormError::DimensionMismatch);
        }
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Form::zero(self.core().clone(), self.degree());
                for k in 0..n {
                    acc = acc.add(&self.entry(i, k).scale(s.entry(k, j)));
                }
                entries.push(acc);
            }
        }
        Ok(MatrixForm { dim: n, entries })
    }

    pub fn trace(&self) -> Form {
        let mut acc = Form::zero(self.core().clone(), self.degree());
        for k in 0..self.dim {
            acc = acc.add(self.entry(k, k));
        }
        acc
    }

    pub fn transpose(&self) -> MatrixForm {
        let mut out = self.clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set_entry(i, j, self.entry(j, i).clone());
            }
        }
        out
    }

    pub fn conjugate(&self) -> MatrixForm {
        self.map(Form::conjugate)
    }

    pub fn substitute(&self, dict: &BTreeMap<String, Form>) -> Result<MatrixForm, FormError> {
        self.try_map(|e| e.substitute(dict))
    }

    pub fn d_chart(&self) -> Result<MatrixForm, FormError> {
        self.try_map(d_chart)
    }

    pub fn d_abstract(&self, cf: &AbstractCoframe) -> Result<MatrixForm, FormError> {
        self.try_map(|e| cf.d(e))
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.entry(i, j).to_json())
                    .collect::<Vec<_>>()
                    .into()
            })
            .collect();
        json!({ "dim": self.dim, "entries": rows })
    }
}

/// dω + ω∧ω for a connection matrix on a chart coframe.
pub fn curvature_chart(omega: &MatrixForm) -> Result<MatrixForm, FormError> {
    omega.d_chart()?.add(&omega.wedge(omega)?)
}

/// dω + ω∧ω with d taken through declared structure equations.
pub fn curvature_abstract(
    omega: &MatrixForm,
    cf: &AbstractCoframe,
) -> Result<MatrixForm, FormError> {
    omega.d_abstract(cf)?.add(&omega.wedge(omega)?)
}
