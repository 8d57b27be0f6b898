use scalar_expr::{
    conj, conj_with, diff, eval, free_coords, is_zero, parse, wirtinger, Chart, Point, ScalarExpr,
    ZeroTestConfig,
};

fn tube() -> Chart {
    Chart::tube()
}

fn assert_same(a: &ScalarExpr, b: &ScalarExpr) {
    let d = a.minus(b);
    assert!(
        is_zero(&d, &ZeroTestConfig::default()).unwrap(),
        "expected {a} == {b}, difference {d}"
    );
}

#[test]
fn diff_of_tube_potential() {
    let chart = tube();
    let f = parse("-x3*ln(x1*x2/x3^2)", &chart).unwrap();
    assert_same(&diff(&f, "x1"), &parse("-x3/x1", &chart).unwrap());
    assert_same(&diff(&f, "x2"), &parse("-x3/x2", &chart).unwrap());
    assert_same(
        &diff(&f, "x3"),
        &parse("-ln(x1*x2/x3^2) + 2", &chart).unwrap(),
    );
}

#[test]
fn second_derivatives_of_tube_potential() {
    let chart = tube();
    let f = parse("-x3*ln(x1*x2/x3^2)", &chart).unwrap();
    let f1 = diff(&f, "x1");
    let f2 = diff(&f, "x2");
    let f3 = diff(&f, "x3");
    assert_same(&diff(&f1, "x1"), &parse("x3/x1^2", &chart).unwrap());
    assert_same(&diff(&f2, "x2"), &parse("x3/x2^2", &chart).unwrap());
    assert_same(&diff(&f1, "x2"), &ScalarExpr::zero());
    assert_same(&diff(&f1, "x3"), &parse("-1/x1", &chart).unwrap());
    assert_same(&diff(&f2, "x3"), &parse("-1/x2", &chart).unwrap());
    assert_same(&diff(&f3, "x3"), &parse("2/x3", &chart).unwrap());
}

#[test]
fn wirtinger_uses_trace_binding() {
    let chart = tube();
    let e = parse("x3^2", &chart).unwrap();
    let d = wirtinger(&e, &chart, "z3").unwrap();
    assert_same(&d, &parse("2*x3", &chart).unwrap());
    // z4 has no trace binding, so nothing depends on it
    let d4 = wirtinger(&e, &chart, "z4").unwrap();
    assert_eq!(d4, ScalarExpr::zero());
    assert!(wirtinger(&e, &chart, "w9").is_err());
}

#[test]
fn mixed_partials_commute() {
    let chart = tube();
    for src in [
        "sqrt(x1*x3)/x2",
        "ln(x1+x2^2)",
        "exp(x1*x2)*x3",
        "(x1+x2)/(x3+1)",
    ] {
        let e = parse(src, &chart).unwrap();
        for (a, b) in [("x1", "x2"), ("x1", "x3"), ("x2", "x3")] {
            let ab = diff(&diff(&e, a), b);
            let ba = diff(&diff(&e, b), a);
            assert_same(&ab, &ba);
        }
    }
}

#[test]
fn diff_is_additive_and_leibniz() {
    let chart = tube();
    let u = parse("sqrt(x3)*x1", &chart).unwrap();
    let v = parse("ln(x1*x2)", &chart).unwrap();
    let sum_rule = diff(&(u.clone() + v.clone()), "x1")
        .minus(&(diff(&u, "x1") + diff(&v, "x1")));
    assert!(is_zero(&sum_rule, &ZeroTestConfig::default()).unwrap());
    let prod_rule = diff(&(u.clone() * v.clone()), "x1").minus(
        &(diff(&u, "x1") * v.clone() + u.clone() * diff(&v, "x1")),
    );
    assert!(is_zero(&prod_rule, &ZeroTestConfig::default()).unwrap());
}

#[test]
fn finite_differences_match_symbolic_derivatives() {
    let chart = tube();
    let sources = [
        "-x3*ln(x1*x2/x3^2)",
        "sqrt(x3)/x1",
        "1/(4*sqrt(x3))",
        "x1^-3/2*x2",
        "exp(x1/4)*sqrt(x2+x3)",
        "(x1*x2-x3)/(x1+x2+x3)",
    ];
    let step = 1e-6;
    let points: Vec<Point> = (0..20)
        .map(|k| {
            let t = 0.3 + 0.45 * k as f64;
            [
                ("x1".to_string(), 1.0 + 0.37 * t),
                ("x2".to_string(), 0.8 + 0.21 * t),
                ("x3".to_string(), 0.5 + 0.11 * t),
            ]
            .into_iter()
            .collect()
        })
        .collect();
    for src in sources {
        let e = parse(src, &chart).unwrap();
        for coord in ["x1", "x2", "x3"] {
            let de = diff(&e, coord);
            for p in &points {
                let exact = eval(&de, p).unwrap();
                let mut hi = p.clone();
                let mut lo = p.clone();
                *hi.get_mut(coord).unwrap() += step;
                *lo.get_mut(coord).unwrap() -= step;
                let fhi = eval(&e, &hi).unwrap();
                let flo = eval(&e, &lo).unwrap();
                let fd_re = (fhi.re - flo.re) / (2.0 * step);
                let fd_im = (fhi.im - flo.im) / (2.0 * step);
                let err = (fd_re - exact.re).hypot(fd_im - exact.im);
                let scale = 1.0f64.max(exact.abs());
                assert!(
                    err / scale < 1e-5,
                    "{src} d/d{coord}: finite difference {fd_re}+{fd_im}i vs {exact:?}"
                );
            }
        }
    }
}

#[test]
fn conj_fixes_reals_and_flips_i() {
    let chart = tube();
    let e = parse("(1-i)*sqrt(x3)", &chart).unwrap();
    let c = conj(&e);
    assert_eq!(c, parse("(1+i)*sqrt(x3)", &chart).unwrap());
    let r = parse("x1+sqrt(x2)", &chart).unwrap();
    assert_eq!(conj(&r), r);
}

#[test]
fn conj_commutes_with_eval() {
    let chart = tube();
    let e = parse("(2-3*i)*x1/(x2+i*x3)", &chart).unwrap();
    let c = conj(&e);
    let p: Point = [
        ("x1".to_string(), 1.3),
        ("x2".to_string(), 2.1),
        ("x3".to_string(), 0.7),
    ]
    .into_iter()
    .collect();
    let ev = eval(&e, &p).unwrap();
    let cv = eval(&c, &p).unwrap();
    assert!((ev.re - cv.re).abs() < 1e-12);
    assert!((ev.im + cv.im).abs() < 1e-12);
}

#[test]
fn conj_with_swaps_paired_symbols() {
    let chart = Chart::real(&["c1", "c1b", "t"]).unwrap();
    let e = parse("i*c1 + t", &chart).unwrap();
    let swapped = conj_with(&e, &|name| match name {
        "c1" => Some("c1b".to_string()),
        "c1b" => Some("c1".to_string()),
        _ => None,
    });
    assert_eq!(swapped, parse("-i*c1b + t", &chart).unwrap());
}

#[test]
fn free_coords_reports_support() {
    let chart = tube();
    let e = parse("sqrt(x3)/x1 + ln(x2)", &chart).unwrap();
    let coords: Vec<String> = free_coords(&e).into_iter().collect();
    assert_eq!(coords, vec!["x1", "x2", "x3"]);
    assert!(free_coords(&ScalarExpr::i()).is_empty());
}
