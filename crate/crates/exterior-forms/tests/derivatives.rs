use std::collections::BTreeMap;
use std::sync::Arc;

use exterior_forms::{
    curvature_chart, d_chart, AbstractCoframe, BasisOneForm, Coframe, Form, FormError,
    FunctionDifferential, MatrixForm, ScalarMatrix,
};
use scalar_expr::{is_zero, parse, Chart, ScalarExpr, ZeroTestConfig};

fn tube_frame() -> Arc<Coframe> {
    Coframe::chart_frame(Chart::tube())
}

fn p(frame: &Coframe, text: &str) -> ScalarExpr {
    parse(text, frame.chart().expect("chart frame")).expect(text)
}

fn assert_zero_form(f: &Form, tol: f64) {
    let cfg = ZeroTestConfig {
        tol,
        ..ZeroTestConfig::default()
    };
    for (idx, c) in f.terms() {
        assert!(
            is_zero(c, &cfg).unwrap(),
            "nonzero coefficient {} at {:?}",
            c,
            idx
        );
    }
}

#[test]
fn chart_d_differentiates_trace_coefficients() {
    let fr = tube_frame();
    let w = Form::from_components(fr.clone(), 1, &[(&["dz2"], p(&fr, "x1"))]).unwrap();
    let dw = d_chart(&w).unwrap();
    assert_eq!(dw.coefficient(&["dz1", "dz2"]).unwrap(), ScalarExpr::one());
    assert_eq!(
        dw.coefficient(&["dz2", "dz1b"]).unwrap(),
        ScalarExpr::int(-1)
    );
    assert!(dw.coefficient(&["dz3", "dz2"]).unwrap().is_structural_zero());
    // z4 has no trace in the chart, so nothing appears in the dz4 slots
    assert!(dw.coefficient(&["dz4", "dz2"]).unwrap().is_structural_zero());
}

#[test]
fn chart_d_squares_to_zero() {
    let fr = tube_frame();
    for text in ["x1^2*x3", "sqrt(x3)*x2", "ln(x1*x2/x3^2)", "x1/x2 + i*x3"] {
        let f = Form::scalar(fr.clone(), p(&fr, text));
        let ddf = d_chart(&d_chart(&f).unwrap()).unwrap();
        assert!(ddf.is_zero_form(), "d²({}) = {}", text, ddf);
    }
    let w = Form::from_components(
        fr.clone(),
        1,
        &[
            (&["dz1"], p(&fr, "x3/x1")),
            (&["dz3b"], p(&fr, "ln(x1*x2)")),
            (&["dz4"], p(&fr, "i*sqrt(x3)")),
        ],
    )
    .unwrap();
    let ddw = d_chart(&d_chart(&w).unwrap()).unwrap();
    assert!(ddw.is_zero_form(), "d²ω = {}", ddw);
}

#[test]
fn chart_d_requires_a_chart() {
    let fr = Coframe::abstract_frame(vec![BasisOneForm::real("tau")], &[]).unwrap();
    let w = Form::basis(fr, "tau").unwrap();
    assert!(matches!(d_chart(&w), Err(FormError::NotAChartCoframe)));
}

fn heisenberg() -> (Arc<Coframe>, AbstractCoframe) {
    let core = Coframe::abstract_frame(
        vec![
            BasisOneForm::real("theta"),
            BasisOneForm::paired("eps1", "eps1b"),
            BasisOneForm::paired("eps1b", "eps1"),
        ],
        &[("u", "ub")],
    )
    .unwrap();
    let d_theta = Form::from_components(
        core.clone(),
        2,
        &[(&["eps1", "eps1b"], ScalarExpr::i())],
    )
    .unwrap();
    let d_eps = Form::zero(core.clone(), 2);
    let mut d_entries = BTreeMap::new();
    d_entries.insert("theta".to_string(), d_theta);
    d_entries.insert("eps1".to_string(), d_eps);
    let mut fn_entries = BTreeMap::new();
    fn_entries.insert(
        "u".to_string(),
        FunctionDifferential::Known(Form::basis(core.clone(), "eps1b").unwrap()),
    );
    fn_entries.insert("q".to_string(), FunctionDifferential::Placeholder);
    let cf = AbstractCoframe::new(core.clone(), d_entries, fn_entries).unwrap();
    (core, cf)
}

#[test]
fn abstract_d_uses_declared_structure_equations() {
    let (core, cf) = heisenberg();
    let theta = Form::basis(core.clone(), "theta").unwrap();
    let dt = cf.d(&theta).unwrap();
    assert_eq!(
        dt.coefficient(&["eps1", "eps1b"]).unwrap(),
        ScalarExpr::i()
    );
    // conjugate equation was filled in automatically
    let deb = cf
        .d(&Form::basis(core.clone(), "eps1b").unwrap())
        .unwrap();
    assert!(deb.is_zero_form());
}

#[test]
fn abstract_d_handles_function_coefficients() {
    let (core, cf) = heisenberg();
    let u = ScalarExpr::coord("u");
    let w = Form::from_components(core.clone(), 1, &[(&["eps1"], u)]).unwrap();
    // d(u·eps1) = du∧eps1 = eps1b∧eps1
    let dw = cf.d(&w).unwrap();
    assert_eq!(
        dw.coefficient(&["eps1b", "eps1"]).unwrap(),
        ScalarExpr::one()
    );
    assert!(dw.coefficient(&["theta", "eps1"]).unwrap().is_structural_zero());
}

#[test]
fn abstract_d_satisfies_the_leibniz_rule() {
    let (core, cf) = heisenberg();
    let a = Form::from_components(
        core.clone(),
        1,
        &[(&["eps1"], ScalarExpr::coord("u")), (&["theta"], ScalarExpr::int(3))],
    )
    .unwrap();
    let b = Form::from_components(
        core.clone(),
        1,
        &[(&["eps1b"], ScalarExpr::coord("ub"))],
    )
    .unwrap();
    let lhs = cf.d(&a.wedge(&b).unwrap()).unwrap();
    let rhs = cf
        .d(&a)
        .unwrap()
        .wedge(&b)
        .unwrap()
        .add(&a.wedge(&cf.d(&b).unwrap()).unwrap().neg());
    assert_eq!(lhs, rhs);
}

#[test]
fn abstract_d_rejects_unknown_and_placeholder_functions() {
    let (core, cf) = heisenberg();
    let w = Form::from_components(core.clone(), 1, &[(&["theta"], ScalarExpr::coord("w"))])
        .unwrap();
    assert!(matches!(
        cf.d(&w),
        Err(FormError::UndeclaredDifferential(s)) if s == "w"
    ));
    let q = Form::from_components(core.clone(), 1, &[(&["theta"], ScalarExpr::coord("q"))])
        .unwrap();
    assert!(matches!(
        cf.d(&q),
        Err(FormError::PlaceholderDifferential(s)) if s == "q"
    ));
}

#[test]
fn missing_structure_equations_are_reported() {
    let core = Coframe::abstract_frame(
        vec![BasisOneForm::real("alpha"), BasisOneForm::real("beta")],
        &[],
    )
    .unwrap();
    let mut d_entries = BTreeMap::new();
    d_entries.insert("alpha".to_string(), Form::zero(core.clone(), 2));
    let r = AbstractCoframe::new(core, d_entries, BTreeMap::new());
    assert!(matches!(
        r,
        Err(FormError::MissingStructureEquation(s)) if s == "beta"
    ));
}

#[test]
fn d_squared_residuals_flag_inconsistent_tables() {
    let core = Coframe::abstract_frame(
        vec![
            BasisOneForm::real("alpha"),
            BasisOneForm::real("beta"),
            BasisOneForm::real("gamma"),
            BasisOneForm::real("delta"),
        ],
        &[],
    )
    .unwrap();
    let bg = Form::from_components(
        core.clone(),
        2,
        &[(&["beta", "gamma"], ScalarExpr::one())],
    )
    .unwrap();
    let zero2 = Form::zero(core.clone(), 2);
    let mut good = BTreeMap::new();
    good.insert("alpha".to_string(), bg.clone());
    good.insert("beta".to_string(), zero2.clone());
    good.insert("gamma".to_string(), zero2.clone());
    good.insert("delta".to_string(), zero2.clone());
    let cf = AbstractCoframe::new(core.clone(), good.clone(), BTreeMap::new()).unwrap();
    let res = cf.d_squared_residuals().unwrap();
    assert!(res.values().all(Form::is_zero_form));

    let ad = Form::from_components(
        core.clone(),
        2,
        &[(&["alpha", "delta"], ScalarExpr::one())],
    )
    .unwrap();
    let mut bad = good;
    bad.insert("beta".to_string(), ad);
    let cf = AbstractCoframe::new(core, bad, BTreeMap::new()).unwrap();
    let res = cf.d_squared_residuals().unwrap();
    assert!(!res["beta"].is_zero_form(), "mutated table must fail d²=0");
}

#[test]
fn matrix_wedge_contracts_rows_against_columns() {
    let fr = tube_frame();
    let e = |s: &str| Form::basis(fr.clone(), s).unwrap();
    let m = MatrixForm::from_rows(vec![
        vec![e("dz1"), e("dz2")],
        vec![e("dz3"), e("dz4")],
    ])
    .unwrap();
    let n = MatrixForm::from_rows(vec![
        vec![e("dz1b"), e("dz2b")],
        vec![e("dz3b"), e("dz4b")],
    ])
    .unwrap();
    let w = m.wedge(&n).unwrap();
    let direct = e("dz1")
        .wedge(&e("dz1b"))
        .unwrap()
        .add(&e("dz2").wedge(&e("dz3b")).unwrap());
    assert_eq!(w.entry(0, 0), &direct);
    assert_eq!(w.degree(), 2);
}

#[test]
fn scalar_matrix_inverse_roundtrips() {
    let fr = tube_frame();
    let a = ScalarMatrix::from_rows(vec![
        vec![p(&fr, "x1"), ScalarExpr::one()],
        vec![ScalarExpr::i(), p(&fr, "x2")],
    ])
    .unwrap();
    let inv = a.inverse().unwrap();
    let prod = a.mul(&inv).unwrap();
    let idm = ScalarMatrix::identity(2);
    let cfg = ZeroTestConfig::default();
    for i in 0..2 {
        for j in 0..2 {
            let diff = (prod.entry(i, j).clone() - idm.entry(i, j).clone()).canonical();
            assert!(is_zero(&diff, &cfg).unwrap(), "entry ({i},{j}) = {diff}");
        }
    }

    let singular = ScalarMatrix::from_rows(vec![
        vec![p(&fr, "x1"), p(&fr, "x1")],
        vec![ScalarExpr::one(), ScalarExpr::one()],
    ])
    .unwrap();
    assert!(matches!(singular.inverse(), Err(FormError::SingularMatrix)));
}

#[test]
fn conjugation_by_a_scalar_matrix_is_reversible() {
    let fr = tube_frame();
    let e = |s: &str| Form::basis(fr.clone(), s).unwrap();
    let omega = MatrixForm::from_rows(vec![
        vec![e("dz1").scale(&p(&fr, "x1")), e("dz2")],
        vec![e("dz3b"), e("dz4").neg()],
    ])
    .unwrap();
    let g = ScalarMatrix::from_rows(vec![
        vec![ScalarExpr::one(), ScalarExpr::i()],
        vec![ScalarExpr::zero(), ScalarExpr::one()],
    ])
    .unwrap();
    let ginv = g.inverse().unwrap();
    let ad = g.mul_form(&omega).unwrap().mul_scalar(&ginv).unwrap();
    let back = ginv.mul_form(&ad).unwrap().mul_scalar(&g).unwrap();
    let residual = back.sub(&omega).unwrap();
    assert!(residual.is_zero_matrix(), "{:?}", residual.to_json());
}

#[test]
fn chart_curvature_satisfies_the_bianchi_identity() {
    let fr = tube_frame();
    let e = |s: &str| Form::basis(fr.clone(), s).unwrap();
    let omega = MatrixForm::from_rows(vec![
        vec![
            e("dz2").scale(&p(&fr, "x1")),
            e("dz3"),
        ],
        vec![
            e("dz1b").scale(&p(&fr, "x3")),
            e("dz1").scale(&p(&fr, "sqrt(x3)")),
        ],
    ])
    .unwrap();
    let c = curvature_chart(&omega).unwrap();
    let dc = c.d_chart().unwrap();
    let rhs = c.wedge(&omega).unwrap().sub(&omega.wedge(&c).unwrap()).unwrap();
    let residual = dc.sub(&rhs).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            assert_zero_form(residual.entry(i, j), 1e-8);
        }
    }
}

#[test]
fn matrix_json_shape() {
    let fr = tube_frame();
    let e = |s: &str| Form::basis(fr.clone(), s).unwrap();
    let m = MatrixForm::from_rows(vec![
        vec![e("dz1"), Form::zero(fr.clone(), 1)],
        vec![Form::zero(fr.clone(), 1), e("dz2")],
    ])
    .unwrap();
    let v = m.to_json();
    assert_eq!(v["dim"], 2);
    assert_eq!(v["entries"][0][0]["terms"][0]["indices"][0], "dz1");
    assert_eq!(v["entries"][0][1]["terms"].as_array().unwrap().len(), 0);
}
