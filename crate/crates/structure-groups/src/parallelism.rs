use std::collections::BTreeMap;
use std::sync::Arc;

use exterior_forms::{
    curvature_abstract, AbstractCoframe, BasisOneForm, Coframe, Form, FormError,
    FunctionDifferential, MatrixForm, ScalarMatrix,
};
use scalar_expr::ScalarExpr;

use crate::{GroupError, HermitianForm};

/// Slot names of the ten connection one-forms.
pub const CONNECTION_SLOTS: [&str; 10] = [
    "eta0", "eta1", "eta2", "eta3", "tau", "rho", "sig", "gam1", "gam2", "psi",
];

/// Torsion coefficient functions of the adapted structure equations, each
/// paired with its conjugate symbol. p0 is real and stands alone.
const TORSION_PAIRS: [(&str, &str); 23] = [
    ("f1", "f1b"),
    ("f2", "f2b"),
    ("t31", "t31b"),
    ("t32", "t32b"),
    ("f31", "f31b"),
    ("f32", "f32b"),
    ("q11", "q11b"),
    ("q12", "q12b"),
    ("q21", "q21b"),
    ("q22", "q22b"),
    ("r0", "r0b"),
    ("s0", "s0b"),
    ("p101", "p101b"),
    ("p102", "p102b"),
    ("p120", "p120b"),
    ("p121", "p121b"),
    ("p201", "p201b"),
    ("p202", "p202b"),
    ("p210", "p210b"),
    ("p212", "p212b"),
    ("o1", "o1b"),
    ("o2", "o2b"),
    ("o3", "o3b"),
];

/// Fifteen-form abstract core underlying the parallelism: the ten slots plus
/// the conjugates of the five complex ones. `scalar_pairs` declares any
/// coefficient functions that swap under conjugation.
pub fn connection_core_with(scalar_pairs: &[(&str, &str)]) -> Arc<Coframe> {
    let mut basis = vec![BasisOneForm::real("eta0")];
    for (a, b) in [("eta1", "eta1b"), ("eta2", "eta2b"), ("eta3", "eta3b")] {
        basis.push(BasisOneForm::paired(a, b));
        basis.push(BasisOneForm::paired(b, a));
    }
    basis.push(BasisOneForm::real("tau"));
    basis.push(BasisOneForm::real("rho"));
    basis.push(BasisOneForm::real("sig"));
    for (a, b) in [("gam1", "gam1b"), ("gam2", "gam2b")] {
        basis.push(BasisOneForm::paired(a, b));
        basis.push(BasisOneForm::paired(b, a));
    }
    basis.push(BasisOneForm::real("psi"));
    Coframe::abstract_frame(basis, scalar_pairs).expect("connection basis is valid")
}

pub fn connection_core() -> Arc<Coframe> {
    connection_core_with(&[])
}

/// Placement of the ten connection slots inside a trace-free 4x4 matrix
/// that is skew-adjoint for the pairing.
#[derive(Debug, Clone, Copy)]
pub struct ParallelismLayout {
    h: HermitianForm,
}

impl ParallelismLayout {
    pub fn new(h: HermitianForm) -> Self {
        ParallelismLayout { h }
    }

    pub fn hermitian(&self) -> &HermitianForm {
        &self.h
    }

    pub fn slots(&self) -> &'static [&'static str] {
        &CONNECTION_SLOTS
    }
}

/// Assemble the connection matrix from one-forms filling the ten slots.
/// Conjugate slots are taken with `Form::conjugate`, so the forms may live
/// on any coframe with the needed conjugation pairs, abstract or chart.
pub fn assemble_omega(
    layout: &ParallelismLayout,
    slots: &BTreeMap<String, Form>,
) -> Result<MatrixForm, GroupError> {
    let get = |name: &str| -> Result<Form, GroupError> {
        let f = slots
            .get(name)
            .ok_or_else(|| GroupError::MissingSlot(name.to_string()))?;
        if f.degree() != 1 {
            return Err(GroupError::NotAOneForm(name.to_string()));
        }
        Ok(f.clone())
    };
    let eta0 = get("eta0")?;
    let eta1 = get("eta1")?;
    let eta2 = get("eta2")?;
    let eta3 = get("eta3")?;
    let tau = get("tau")?;
    let rho = get("rho")?;
    let sig = get("sig")?;
    let gam1 = get("gam1")?;
    let gam2 = get("gam2")?;
    let psi = get("psi")?;

    let i = ScalarExpr::i;
    let eps = layout.h.eps();
    let i4 = i() * ScalarExpr::rat(1, 4);
    let i34 = i() * ScalarExpr::rat(3, 4);
    // Diagonal combinations of the three real slots.
    let d0 = tau.neg().add(&rho.scale(&i4.neg())).add(&sig.scale(&i4));
    let d1 = rho.scale(&i4.neg()).add(&sig.scale(&i34.neg()));
    let d2 = rho.scale(&i34).add(&sig.scale(&i4));
    let d3 = tau.add(&rho.scale(&i4.neg())).add(&sig.scale(&i4));

    Ok(MatrixForm::from_rows(vec![
        vec![
            d0,
            gam2.scale(&i().neg()),
            gam1.conjugate().scale(&i().neg()),
            psi.scale(&i().neg()),
        ],
        vec![
            eta2.conjugate().scale(&eps.neg()),
            d1,
            eta3.conjugate().scale(&eps),
            gam2.conjugate().scale(&(eps.clone() * i()).neg()),
        ],
        vec![eta1.clone(), eta3, d2, gam1.scale(&i())],
        vec![eta0.scale(&i().neg()), eta2, eta1.conjugate(), d3],
    ])?)
}

/// Connection matrix whose slots are the basis one-forms themselves.
pub fn basis_omega(
    layout: &ParallelismLayout,
    core: &Arc<Coframe>,
) -> Result<MatrixForm, GroupError> {
    let mut slots = BTreeMap::new();
    for name in CONNECTION_SLOTS {
        slots.insert(name.to_string(), Form::basis(core.clone(), name)?);
    }
    assemble_omega(layout, &slots)
}

struct TableBuilder {
    core: Arc<Coframe>,
}

impl TableBuilder {
    fn basis(&self, sym: &str) -> Form {
        Form::basis(self.core.clone(), sym).expect("declared symbol")
    }

    fn term(&self, k: ScalarExpr, a: &str, b: &str) -> Form {
        self.basis(a)
            .wedge(&self.basis(b))
            .expect("wedge of one-forms")
            .scale(&k)
    }

    fn sum(&self, terms: Vec<Form>) -> Form {
        terms
            .into_iter()
            .fold(Form::zero(self.core.clone(), 2), |acc, t| acc.add(&t))
    }
}

fn flat_table(b: &TableBuilder, h: &HermitianForm) -> BTreeMap<String, Form> {
    let e = h.eps();
    let i = ScalarExpr::i;
    let r = ScalarExpr::rat;
    let n = ScalarExpr::int;
    let mut t: BTreeMap<String, Form> = BTreeMap::new();
    t.insert(
        "eta0".into(),
        b.sum(vec![
            b.term(n(-2), "tau", "eta0"),
            b.term(i(), "eta1", "eta1b"),
            b.term(e.clone() * i(), "eta2", "eta2b"),
        ]),
    );
    t.insert(
        "eta1".into(),
        b.sum(vec![
            b.term(n(-1), "gam1", "eta0"),
            b.term(n(-1), "tau", "eta1"),
            b.term(i().neg(), "rho", "eta1"),
            b.term(e.clone(), "eta3", "eta2b"),
        ]),
    );
    t.insert(
        "eta2".into(),
        b.sum(vec![
            b.term(n(-1), "gam2", "eta0"),
            b.term(n(-1), "tau", "eta2"),
            b.term(i().neg(), "sig", "eta2"),
            b.term(n(1), "eta3", "eta1b"),
        ]),
    );
    t.insert(
        "eta3".into(),
        b.sum(vec![
            b.term(i().neg(), "gam2", "eta1"),
            b.term(i().neg(), "gam1", "eta2"),
            b.term(i().neg(), "rho", "eta3"),
            b.term(i().neg(), "sig", "eta3"),
        ]),
    );
    t.insert(
        "tau".into(),
        b.sum(vec![
            b.term(n(-1), "psi", "eta0"),
            b.term(i() * r(1, 2), "gam1", "eta1b"),
            b.term(i() * r(-1, 2), "gam1b", "eta1"),
            b.term(e.clone() * i() * r(1, 2), "gam2", "eta2b"),
            b.term(e.clone() * i() * r(-1, 2), "gam2b", "eta2"),
        ]),
    );
    t.insert(
        "rho".into(),
        b.sum(vec![
            b.term(r(-3, 2), "gam1", "eta1b"),
            b.term(r(-3, 2), "gam1b", "eta1"),
            b.term(e.clone() * r(1, 2), "gam2", "eta2b"),
            b.term(e.clone() * r(1, 2), "gam2b", "eta2"),
            b.term((e.clone() * i()).neg(), "eta3b", "eta3"),
        ]),
    );
    t.insert(
        "sig".into(),
        b.sum(vec![
            b.term(r(1, 2), "gam1", "eta1b"),
            b.term(r(1, 2), "gam1b", "eta1"),
            b.term(e.clone() * r(-3, 2), "gam2", "eta2b"),
            b.term(e.clone() * r(-3, 2), "gam2b", "eta2"),
            b.term((e.clone() * i()).neg(), "eta3b", "eta3"),
        ]),
    );
    t.insert(
        "gam1".into(),
        b.sum(vec![
            b.term(n(-1), "psi", "eta1"),
            b.term(n(1), "tau", "gam1"),
            b.term(i().neg(), "rho", "gam1"),
            b.term(e.clone().neg(), "gam2b", "eta3"),
        ]),
    );
    t.insert(
        "gam2".into(),
        b.sum(vec![
            b.term(n(-1), "psi", "eta2"),
            b.term(n(1), "tau", "gam2"),
            b.term(i().neg(), "sig", "gam2"),
            b.term(n(-1), "gam1b", "eta3"),
        ]),
    );
    t.insert(
        "psi".into(),
        b.sum(vec![
            b.term(n(-2), "psi", "tau"),
            b.term(i(), "gam1", "gam1b"),
            b.term(e * i(), "gam2", "gam2b"),
        ]),
    );
    t
}

fn torsion_additions(b: &TableBuilder, h: &HermitianForm) -> BTreeMap<String, Form> {
    let e = h.eps();
    let i = ScalarExpr::i;
    let c = ScalarExpr::coord;
    let half = ScalarExpr::rat(1, 2);
    let ih = i() * half.clone();
    let eh = e.clone() * half.clone();
    let mut t: BTreeMap<String, Form> = BTreeMap::new();
    t.insert("eta1".into(), b.term(c("f1"), "eta1b", "eta2"));
    t.insert("eta2".into(), b.term(c("f2"), "eta2b", "eta1"));
    t.insert(
        "eta3".into(),
        b.sum(vec![
            b.term(c("t31"), "eta1b", "eta0"),
            b.term(c("t32"), "eta2b", "eta0"),
            b.term(c("f31"), "eta2b", "eta1"),
            b.term(c("f32"), "eta1b", "eta2"),
        ]),
    );
    t.insert(
        "rho".into(),
        b.sum(vec![
            b.term((i() * c("f1") * c("f2")).neg(), "eta2b", "eta1b"),
            b.term((i() * c("f1b") * c("f2b")).neg(), "eta1", "eta2"),
            b.term((i() * c("f1") * c("f1b")).neg(), "eta2b", "eta2"),
            b.term(i() * c("f2") * c("f2b"), "eta1b", "eta1"),
            b.term((i() * c("q11")).neg(), "eta1b", "eta0"),
            b.term(i() * c("q11b"), "eta1", "eta0"),
            b.term((i() * c("q12")).neg(), "eta2b", "eta0"),
            b.term(i() * c("q12b"), "eta2", "eta0"),
            b.term((i() * c("r0")).neg(), "eta2b", "eta1"),
            b.term((i() * c("r0b")).neg(), "eta1b", "eta2"),
        ]),
    );
    t.insert(
        "sig".into(),
        b.sum(vec![
            b.term((i() * c("f1") * c("f2")).neg(), "eta1b", "eta2b"),
            b.term((i() * c("f1b") * c("f2b")).neg(), "eta2", "eta1"),
            b.term((i() * c("f2") * c("f2b")).neg(), "eta1b", "eta1"),
            b.term(i() * c("f1") * c("f1b"), "eta2b", "eta2"),
            b.term((i() * c("q21")).neg(), "eta1b", "eta0"),
            b.term(i() * c("q21b"), "eta1", "eta0"),
            b.term((i() * c("q22")).neg(), "eta2b", "eta0"),
            b.term(i() * c("q22b"), "eta2", "eta0"),
            b.term((i() * c("s0")).neg(), "eta2b", "eta1"),
            b.term((i() * c("s0b")).neg(), "eta1b", "eta2"),
        ]),
    );
    t.insert(
        "gam1".into(),
        b.sum(vec![
            b.term(i() * c("f32"), "gam1b", "eta0"),
            b.term(c("f1"), "gam1b", "eta2"),
            b.term(c("f1").neg(), "gam2", "eta1b"),
            b.term((e.clone() * c("t31")).neg(), "eta1b", "eta2b"),
            b.term(e.clone() * i() * c("t31"), "eta3b", "eta0"),
            b.term(i() * c("p0"), "eta1", "eta0"),
            b.term(c("p101"), "eta1b", "eta0"),
            b.term(c("p102"), "eta2b", "eta0"),
            b.term(i() * (c("q12b") + c("q22b")), "eta3", "eta0"),
            b.term(c("q11"), "eta1b", "eta1"),
            b.term(c("q12"), "eta2b", "eta1"),
            b.term(c("q12b").neg(), "eta2", "eta1"),
            b.term(c("p120"), "eta0", "eta2"),
            b.term(c("p121"), "eta1b", "eta2"),
        ]),
    );
    t.insert(
        "gam2".into(),
        b.sum(vec![
            b.term(i() * c("f31"), "gam2b", "eta0"),
            b.term(c("f2").neg(), "gam1", "eta2b"),
            b.term(c("f2"), "gam2b", "eta1"),
            b.term(c("t32").neg(), "eta2b", "eta1b"),
            b.term(i() * c("t32"), "eta3b", "eta0"),
            b.term(c("p201"), "eta1b", "eta0"),
            b.term(i() * c("p0"), "eta2", "eta0"),
            b.term(c("p202"), "eta2b", "eta0"),
            b.term(i() * (c("q11b") + c("q21b")), "eta3", "eta0"),
            b.term(c("q21"), "eta1b", "eta2"),
            b.term(c("q21b").neg(), "eta1", "eta2"),
            b.term(c("q22"), "eta2b", "eta2"),
            b.term(c("p210"), "eta0", "eta1"),
            b.term(c("p212"), "eta2b", "eta1"),
        ]),
    );
    t.insert(
        "psi".into(),
        b.sum(vec![
            b.term(c("o1"), "eta1", "eta0"),
            b.term(c("o1b"), "eta1b", "eta0"),
            b.term(c("o2"), "eta2", "eta0"),
            b.term(c("o2b"), "eta2b", "eta0"),
            b.term(c("o3"), "eta3", "eta0"),
            b.term(c("o3b"), "eta3b", "eta0"),
            b.term(
                (half.clone() * (c("q11b") + c("q21b") + i() * c("f31b") * c("f2"))).neg(),
                "gam1",
                "eta0",
            ),
            b.term(
                (half.clone() * (c("q22b") + c("q12b") + i() * c("f1") * c("f32b"))).neg(),
                "gam2",
                "eta0",
            ),
            b.term(
                (half.clone() * (c("q11") + c("q21") - i() * c("f31") * c("f2b"))).neg(),
                "gam1b",
                "eta0",
            ),
            b.term(
                (half.clone() * (c("q22") + c("q12") - i() * c("f1b") * c("f32"))).neg(),
                "gam2b",
                "eta0",
            ),
            b.term(ih.clone() * (c("p102") - e.clone() * c("p201")), "eta1b", "eta2b"),
            b.term(ih.clone() * (c("p102b") - e.clone() * c("p201b")), "eta2", "eta1"),
            b.term(ih.clone() * (c("p120") + e.clone() * c("p210b")), "eta2", "eta1b"),
            b.term(ih * (e.clone() * c("p210") + c("p120b")), "eta1", "eta2b"),
            b.term(eh.clone() * (c("q11") + c("q21")), "eta3b", "eta2"),
            b.term(eh.clone() * (c("q11b") + c("q21b")), "eta3", "eta2b"),
            b.term(half.clone() * (c("q12b") + c("q22b")), "eta3", "eta1b"),
            b.term(half.clone() * (c("q12") + c("q22")), "eta3b", "eta1"),
            b.term(half.clone() * c("f32b"), "gam1", "eta1"),
            b.term(half * c("f32"), "gam1b", "eta1b"),
            b.term(eh.clone() * c("f31b"), "gam2", "eta2"),
            b.term(eh.clone() * c("f31"), "gam2b", "eta2b"),
            b.term(eh.clone() * c("t31b"), "eta3", "eta1"),
            b.term(eh.clone() * c("t31"), "eta3b", "eta1b"),
            b.term(eh.clone() * c("t32b"), "eta3", "eta2"),
            b.term(eh * c("t32"), "eta3b", "eta2b"),
        ]),
    );
    t
}

/// Flat-model structure equations on the plain connection core.
pub fn mc_structure_equations(h: &HermitianForm) -> (Arc<Coframe>, BTreeMap<String, Form>) {
    let core = connection_core();
    let b = TableBuilder { core: core.clone() };
    let table = flat_table(&b, h);
    (core, table)
}

/// Structure equations of an adapted coframe with unabsorbable torsion,
/// written with opaque coefficient functions. Same flat-model skeleton plus
/// the torsion corrections.
pub fn se_structure_equations(h: &HermitianForm) -> (Arc<Coframe>, BTreeMap<String, Form>) {
    let core = connection_core_with(&TORSION_PAIRS);
    let b = TableBuilder { core: core.clone() };
    let mut table = flat_table(&b, h);
    for (sym, extra) in torsion_additions(&b, h) {
        let merged = table
            .get(&sym)
            .map(|base| base.add(&extra))
            .unwrap_or(extra);
        table.insert(sym, merged);
    }
    (core, table)
}

/// Differential structure of the flat model.
pub fn mc_coframe(h: &HermitianForm) -> Result<AbstractCoframe, GroupError> {
    let (core, table) = mc_structure_equations(h);
    Ok(AbstractCoframe::new(core, table, BTreeMap::new())?)
}

/// Differential structure of a torsion-carrying adapted coframe. The
/// coefficient functions have no declared differentials; anything that
/// tries to differentiate them fails instead of silently dropping terms.
pub fn se_coframe(h: &HermitianForm) -> Result<AbstractCoframe, GroupError> {
    let (core, table) = se_structure_equations(h);
    let mut fns = BTreeMap::new();
    for (a, _) in TORSION_PAIRS {
        fns.insert(a.to_string(), FunctionDifferential::Placeholder);
    }
    fns.insert("p0".to_string(), FunctionDifferential::Placeholder);
    Ok(AbstractCoframe::new(core, table, fns)?)
}

/// d omega + omega wedge omega for the basis connection on `cf`.
pub fn connection_curvature(
    cf: &AbstractCoframe,
    layout: &ParallelismLayout,
) -> Result<MatrixForm, GroupError> {
    let omega = basis_omega(layout, cf.core())?;
    Ok(curvature_abstract(&omega, cf)?)
}

/// Verification record for a declared table: d-squared residuals of every
/// basis symbol and the curvature of the assembled connection.
#[derive(Debug)]
pub struct McReport {
    pub d_squared: BTreeMap<String, Form>,
    pub curvature: MatrixForm,
}

impl McReport {
    pub fn is_exactly_flat(&self) -> bool {
        self.d_squared.values().all(Form::is_zero_form) && self.curvature.is_zero_matrix()
    }

    /// Labels of the residuals that fail to collect to zero.
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .d_squared
            .iter()
            .filter(|(_, f)| !f.is_zero_form())
            .map(|(k, _)| format!("d^2 {k}"))
            .collect();
        for i in 0..self.curvature.dim() {
            for j in 0..self.curvature.dim() {
                if !self.curvature.entry(i, j).is_zero_form() {
                    out.push(format!("curvature[{i}][{j}]"));
                }
            }
        }
        out
    }
}

/// Report for an arbitrary coframe sharing the connection core.
pub fn mc_report(cf: &AbstractCoframe, layout: &ParallelismLayout) -> Result<McReport, GroupError> {
    Ok(McReport {
        d_squared: cf.d_squared_residuals()?,
        curvature: connection_curvature(cf, layout)?,
    })
}

/// Build the flat model and collect its residuals; both parts of the report
/// must be structurally zero.
pub fn verify_maurer_cartan(h: &HermitianForm) -> Result<McReport, GroupError> {
    let cf = mc_coframe(h)?;
    mc_report(&cf, &ParallelismLayout::new(*h))
}

/// Substitution realizing the action of the prolongation variable on the
/// connection coframe: tau, gam1, gam2 shift by -y times eta0, eta1, eta2,
/// psi absorbs the quadratic correction, everything else is fixed.
pub fn prolong_pullback(
    core: &Arc<Coframe>,
    y: &ScalarExpr,
) -> Result<BTreeMap<String, Form>, GroupError> {
    let f = |s: &str| Form::basis(core.clone(), s);
    let mut map = BTreeMap::new();
    for b in core.basis() {
        map.insert(b.symbol.clone(), f(&b.symbol)?);
    }
    for (slot, by) in [
        ("tau", "eta0"),
        ("gam1", "eta1"),
        ("gam1b", "eta1b"),
        ("gam2", "eta2"),
        ("gam2b", "eta2b"),
    ] {
        map.insert(slot.to_string(), f(slot)?.sub(&f(by)?.scale(y)));
    }
    let psi = f("psi")?
        .sub(&f("tau")?.scale(&(ScalarExpr::int(2) * y.clone())))
        .add(&f("eta0")?.scale(&(y.clone() * y.clone())));
    map.insert("psi".to_string(), psi);
    Ok(map)
}

/// g X g^{-1} entrywise on a matrix of forms.
pub fn adjoint(g: &ScalarMatrix, x: &MatrixForm) -> Result<MatrixForm, GroupError> {
    let inv = g.inverse().map_err(|e| match e {
        FormError::SingularMatrix => GroupError::Singular,
        other => GroupError::Form(other),
    })?;
    Ok(g.mul_form(x)?.mul_scalar(&inv)?)
}

/// Difference between the prolongation pullback of the connection and its
/// conjugation by I + i y E14. Vanishes identically, including for a
/// symbolic (real) y.
pub fn equivariance_residual(
    h: &HermitianForm,
    y: &ScalarExpr,
) -> Result<MatrixForm, GroupError> {
    let layout = ParallelismLayout::new(*h);
    let core = connection_core();
    let omega = basis_omega(&layout, &core)?;
    let pulled = omega.substitute(&prolong_pullback(&core, y)?)?;
    let mut g = ScalarMatrix::identity(4);
    g.set_entry(0, 3, ScalarExpr::i() * y.clone());
    let conjugated = adjoint(&g, &omega)?;
    Ok(pulled.sub(&conjugated)?)
}
