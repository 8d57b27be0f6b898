use std::collections::BTreeMap;
use std::sync::Arc;

use exterior_forms::{BasisOneForm, Coframe, Form, FormError};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use scalar_expr::{is_zero, parse, Chart, ScalarExpr, ZeroTestConfig};

fn tube_frame() -> Arc<Coframe> {
    Coframe::chart_frame(Chart::tube())
}

fn p(frame: &Coframe, text: &str) -> ScalarExpr {
    parse(text, frame.chart().expect("chart frame")).expect(text)
}

fn one_form(frame: &Arc<Coframe>, parts: &[(&str, &str)]) -> Form {
    let comps: Vec<(&[&str], ScalarExpr)> = parts
        .iter()
        .map(|(sym, coeff)| {
            let syms: &[&str] = std::slice::from_ref(sym);
            (syms, p(frame, coeff))
        })
        .collect();
    Form::from_components(frame.clone(), 1, &comps).unwrap()
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
fn wedge_of_one_forms_anticommutes() {
    let fr = tube_frame();
    let a = one_form(&fr, &[("dz1", "x1"), ("dz2b", "sqrt(x3)")]);
    let b = one_form(&fr, &[("dz3", "1"), ("dz1b", "x2")]);
    let ab = a.wedge(&b).unwrap();
    let ba = b.wedge(&a).unwrap();
    let residual = ab.add(&ba);
    assert!(residual.is_zero_form(), "a∧b + b∧a = {}", residual);
    assert_zero_form(&residual, 1e-12);
}

#[test]
fn wedge_anticommutes_on_random_rational_forms() {
    let fr = tube_frame();
    let mut rng = StdRng::seed_from_u64(7);
    let symbols = ["dz1", "dz2", "dz3", "dz4", "dz1b", "dz2b", "dz3b", "dz4b"];
    for _ in 0..200 {
        let mut draw = || {
            let mut parts = Vec::new();
            for s in symbols {
                if rng.gen_bool(0.4) {
                    let n = rng.gen_range(-9i64..=9);
                    let d = rng.gen_range(1i64..=9);
                    parts.push((s, ScalarExpr::rat(n, d)));
                }
            }
            let comps: Vec<(&[&str], ScalarExpr)> = parts
                .iter()
                .map(|(s, c)| (std::slice::from_ref(s), c.clone()))
                .collect();
            Form::from_components(fr.clone(), 1, &comps).unwrap()
        };
        let a = draw();
        let b = draw();
        let residual = a.wedge(&b).unwrap().add(&b.wedge(&a).unwrap());
        assert!(residual.is_zero_form());
    }
}

#[test]
fn wedge_is_associative() {
    let fr = tube_frame();
    let a = one_form(&fr, &[("dz1", "x1"), ("dz4", "i")]);
    let b = one_form(&fr, &[("dz2", "x3^1/2"), ("dz1b", "2")]);
    let c = one_form(&fr, &[("dz3b", "1/x2"), ("dz4b", "x1*x2")]);
    let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
    let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
    let residual = left.sub(&right);
    assert!(residual.is_zero_form(), "residual {}", residual);
    assert_zero_form(&residual, 1e-12);
}

#[test]
fn wedge_with_repeated_factor_vanishes() {
    let fr = tube_frame();
    let a = one_form(&fr, &[("dz1", "x1+x2"), ("dz2", "3")]);
    assert!(a.wedge(&a).unwrap().is_zero_form());
}

#[test]
fn wedge_rejects_mixed_coframes() {
    let fr = tube_frame();
    let other = Coframe::abstract_frame(
        vec![BasisOneForm::real("tau"), BasisOneForm::real("rho")],
        &[],
    )
    .unwrap();
    let a = one_form(&fr, &[("dz1", "1")]);
    let b = Form::basis(other, "tau").unwrap();
    assert!(matches!(a.wedge(&b), Err(FormError::MixedCoframes)));
}

#[test]
fn wedge_rejects_degrees_past_the_cap() {
    let fr = tube_frame();
    let a = one_form(&fr, &[("dz1", "1")]);
    let b = one_form(&fr, &[("dz2", "1")]);
    let c = one_form(&fr, &[("dz3", "1")]);
    let d = one_form(&fr, &[("dz4", "1")]);
    let e = one_form(&fr, &[("dz1b", "1")]);
    let abcd = a
        .wedge(&b)
        .unwrap()
        .wedge(&c)
        .unwrap()
        .wedge(&d)
        .unwrap();
    assert_eq!(abcd.degree(), 4);
    assert!(matches!(abcd.wedge(&e), Err(FormError::DegreeCap(5))));
}

#[test]
fn conjugation_swaps_basis_partners_and_coefficients() {
    let fr = tube_frame();
    let coeff = (ScalarExpr::i() * p(&fr, "x1")).canonical();
    let w = Form::from_components(fr.clone(), 2, &[(&["dz1", "dz2b"], coeff)]).unwrap();
    let c = w.conjugate();
    let got = c.coefficient(&["dz1b", "dz2"]).unwrap();
    let want = (ScalarExpr::i().neg() * p(&fr, "x1")).canonical();
    assert_eq!(got, want, "conjugated coefficient");
    assert_eq!(c.conjugate(), w, "involution");
}

#[test]
fn conjugation_fixes_real_abstract_directions() {
    let fr = Coframe::abstract_frame(
        vec![
            BasisOneForm::real("tau"),
            BasisOneForm::paired("eta1", "eta1b"),
            BasisOneForm::paired("eta1b", "eta1"),
        ],
        &[("F1", "F1b")],
    )
    .unwrap();
    let real_part = Form::from_components(fr.clone(), 1, &[(&["tau"], ScalarExpr::int(2))]).unwrap();
    assert_eq!(real_part.conjugate(), real_part);

    let f1 = ScalarExpr::coord("F1");
    let w = Form::from_components(fr.clone(), 1, &[(&["eta1"], f1)]).unwrap();
    let c = w.conjugate();
    assert_eq!(
        c.coefficient(&["eta1b"]).unwrap(),
        ScalarExpr::coord("F1b"),
        "paired coefficient symbol swaps"
    );
    assert!(c.coefficient(&["eta1"]).unwrap().is_structural_zero());
}

#[test]
fn asymmetric_basis_pairing_is_rejected() {
    let r = Coframe::abstract_frame(
        vec![
            BasisOneForm::paired("eta1", "eta1b"),
            BasisOneForm::real("eta1b"),
        ],
        &[],
    );
    assert!(matches!(r, Err(FormError::AsymmetricPairing(_, _))));
    let r = Coframe::abstract_frame(vec![BasisOneForm::paired("eta1", "eta1b")], &[]);
    assert!(matches!(r, Err(FormError::UnknownSymbol(_))));
}

#[test]
fn coefficient_extraction_accounts_for_order() {
    let fr = tube_frame();
    let w = Form::from_components(fr.clone(), 2, &[(&["dz1", "dz3"], p(&fr, "x2"))]).unwrap();
    assert_eq!(w.coefficient(&["dz1", "dz3"]).unwrap(), p(&fr, "x2"));
    assert_eq!(w.coefficient(&["dz3", "dz1"]).unwrap(), p(&fr, "-x2"));
    assert!(w.coefficient(&["dz1", "dz1"]).unwrap().is_structural_zero());
    assert!(w.coefficient(&["dz1", "dz2"]).unwrap().is_structural_zero());
    assert!(matches!(
        w.coefficient(&["dz1", "nope"]),
        Err(FormError::UnknownSymbol(_))
    ));
}

#[test]
fn reduce_mod_is_an_ideal_quotient() {
    let fr = tube_frame();
    let ideal = ["dz4", "dz4b"];
    let a = one_form(&fr, &[("dz1", "x1"), ("dz4", "x2"), ("dz2b", "i")]);
    let b = one_form(&fr, &[("dz2", "x3"), ("dz4b", "1"), ("dz1b", "x1*x3")]);
    let direct = a.wedge(&b).unwrap().reduce_mod(&ideal).unwrap();
    let staged = a
        .reduce_mod(&ideal)
        .unwrap()
        .wedge(&b.reduce_mod(&ideal).unwrap())
        .unwrap()
        .reduce_mod(&ideal)
        .unwrap();
    assert_eq!(direct, staged);
    let twice = direct.reduce_mod(&ideal).unwrap();
    assert_eq!(direct, twice, "idempotent");
    assert!(matches!(
        a.reduce_mod(&["dz9"]),
        Err(FormError::UnknownSymbol(_))
    ));
}

#[test]
fn substitution_composes_with_the_inverse_dictionary() {
    let fr = tube_frame();
    // dz1 -> x1*dz1 + dz2, dz2 -> dz2, conjugates mirrored, rest fixed
    let mut fwd = BTreeMap::new();
    fwd.insert(
        "dz1".to_string(),
        one_form(&fr, &[("dz1", "x1"), ("dz2", "1")]),
    );
    fwd.insert(
        "dz1b".to_string(),
        one_form(&fr, &[("dz1b", "x1"), ("dz2b", "1")]),
    );
    let mut bwd = BTreeMap::new();
    bwd.insert(
        "dz1".to_string(),
        one_form(&fr, &[("dz1", "1/x1"), ("dz2", "-1/x1")]),
    );
    bwd.insert(
        "dz1b".to_string(),
        one_form(&fr, &[("dz1b", "1/x1"), ("dz2b", "-1/x1")]),
    );
    for s in ["dz2", "dz3", "dz4", "dz2b", "dz3b", "dz4b"] {
        fwd.insert(s.to_string(), Form::basis(fr.clone(), s).unwrap());
        bwd.insert(s.to_string(), Form::basis(fr.clone(), s).unwrap());
    }
    let w = Form::from_components(
        fr.clone(),
        2,
        &[
            (&["dz1", "dz2b"], p(&fr, "x3")),
            (&["dz1", "dz1b"], ScalarExpr::i()),
            (&["dz3", "dz4"], p(&fr, "x1*x2")),
        ],
    )
    .unwrap();
    let round = w.substitute(&fwd).unwrap().substitute(&bwd).unwrap();
    let residual = round.sub(&w);
    assert_zero_form(&residual, 1e-10);

    let mut partial = BTreeMap::new();
    partial.insert("dz1".to_string(), Form::basis(fr.clone(), "dz1").unwrap());
    assert!(matches!(
        w.substitute(&partial),
        Err(FormError::MissingSubstitution(_))
    ));
}

#[test]
fn substitution_is_a_wedge_homomorphism() {
    let fr = tube_frame();
    let mut dict = BTreeMap::new();
    dict.insert(
        "dz1".to_string(),
        one_form(&fr, &[("dz1", "x3"), ("dz3", "i")]),
    );
    dict.insert(
        "dz1b".to_string(),
        one_form(&fr, &[("dz1b", "x3"), ("dz3b", "-i")]),
    );
    dict.insert("dz2".to_string(), one_form(&fr, &[("dz2", "x1"), ("dz1", "1")]));
    dict.insert(
        "dz2b".to_string(),
        one_form(&fr, &[("dz2b", "x1"), ("dz1b", "1")]),
    );
    for s in ["dz3", "dz4", "dz3b", "dz4b"] {
        dict.insert(s.to_string(), Form::basis(fr.clone(), s).unwrap());
    }
    let a = one_form(&fr, &[("dz1", "x2"), ("dz2b", "1")]);
    let b = one_form(&fr, &[("dz2", "1"), ("dz3", "x1")]);
    let lhs = a.wedge(&b).unwrap().substitute(&dict).unwrap();
    let rhs = a
        .substitute(&dict)
        .unwrap()
        .wedge(&b.substitute(&dict).unwrap())
        .unwrap();
    let residual = lhs.sub(&rhs);
    assert!(residual.is_zero_form(), "residual {}", residual);
}

#[test]
fn json_shape_lists_terms_with_symbolic_indices() {
    let fr = tube_frame();
    let w = Form::from_components(
        fr.clone(),
        2,
        &[(&["dz2", "dz1"], p(&fr, "x1"))],
    )
    .unwrap();
    let v = w.to_json();
    assert_eq!(v["degree"], 2);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["indices"][0], "dz1");
    assert_eq!(terms[0]["indices"][1], "dz2");
    assert_eq!(terms[0]["coeff"], "-x1");
    let zero = Form::zero(fr, 3);
    assert_eq!(zero.to_json()["terms"].as_array().unwrap().len(), 0);
}
