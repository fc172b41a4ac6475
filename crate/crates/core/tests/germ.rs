use blowsphere::corpus;
use blowsphere::germ::{
    analyze, analyze_poly, report_json, AnalyzeOptions, GermInput, GermKind, Regularity,
};
use blowsphere::{Error, Poly};

fn report(text: &str) -> blowsphere::Result<blowsphere::germ::GermReport> {
    analyze(&GermInput::parse(text)?, &AnalyzeOptions::default())
}

#[test]
fn reference_reports() {
    let cusp = report("y^2 - x^3").unwrap();
    assert_eq!(cusp.kind, GermKind::PlaneCurve);
    assert_eq!(cusp.multiplicity, 2);
    let cone = cusp.lines().unwrap();
    assert_eq!(cone.relative_mult, vec![2]);
    assert!(cone.lines[0].direction[1].norm() < 1e-12);
    assert_eq!(cusp.branches.len(), 1);
    assert!(!cusp.smooth);
    assert!(cusp.identity_ok);
    assert_eq!(cusp.regularity, Regularity::NotBlowSphericalRegular);

    let smooth = report("x - y^2").unwrap();
    assert_eq!(smooth.multiplicity, 1);
    assert!(smooth.smooth);
    assert_eq!(smooth.regularity, Regularity::Smooth);

    let b = report("z1^3 - z2^2 - z3^2 - z4^2").unwrap();
    assert_eq!(b.kind, GermKind::Hypersurface);
    assert_eq!(b.multiplicity, 2);
    assert!(!b.smooth);
    assert_eq!(b.regularity, Regularity::NotBlowSphericalRegular);
}

#[test]
fn parametrized_space_curve() {
    let r = report("branch: t^2, t^3, t^4\nbranch: t, 0, t^2").unwrap();
    assert_eq!(r.kind, GermKind::ParametrizedCurve);
    assert_eq!(r.nvars(), 3);
    assert_eq!(r.multiplicity, 3);
    assert_eq!(r.lines().unwrap().relative_mult, vec![3]);
    assert!(r.identity_ok);

    let r = report("branch: t, 0, 0\nbranch: 0, t, t^3").unwrap();
    assert_eq!(r.multiplicity, 2);
    assert_eq!(r.lines().unwrap().relative_mult, vec![1, 1]);
}

#[test]
fn input_errors() {
    assert!(matches!(report("y^2"), Err(Error::NonReduced(_))));
    assert!(matches!(report("1 + x"), Err(Error::NotVanishing)));
    assert!(matches!(report("0"), Err(Error::ZeroPolynomial)));
    assert!(matches!(report("y^2 -"), Err(Error::Syntax { .. })));
    assert!(matches!(
        report("branch: t^2, t^3\nbranch: t^2, t^3"),
        Err(Error::NonReduced(_))
    ));
    assert!(matches!(
        report("branch: 1 + t, t"),
        Err(Error::NotVanishing)
    ));
    match report("branch: t^2, t^3\nbranch: t, t^+") {
        Err(Error::Syntax { pos, .. }) => assert!(pos > 17, "position {pos} is not absolute"),
        other => panic!("{other:?}"),
    }
}

fn linear_part_nonzero(f: &Poly) -> bool {
    !f.homogeneous_part(1).is_empty()
}

#[test]
fn smoothness_is_multiplicity_one_on_the_corpus() {
    let extra = ["x - y^2", "y + x^2 + x*y", "2*x + i*y - y^3"];
    let mut germs: Vec<Poly> = corpus::embedded().into_iter().map(|(_, f)| f).collect();
    germs.extend(
        extra
            .iter()
            .map(|t| blowsphere::parse(t, &blowsphere::Variables::Plane).unwrap()),
    );
    for f in germs {
        let r = analyze_poly(&f).unwrap();
        assert_eq!(r.smooth, r.multiplicity == 1, "{f}");
        assert_eq!(r.smooth, linear_part_nonzero(&f), "{f}");
        assert_eq!(r.regularity == Regularity::Smooth, r.smooth);
        assert!(r.identity_ok, "{f}");
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for (_, f) in corpus::embedded() {
        let a = serde_json::to_string(&report_json(&analyze_poly(&f).unwrap())).unwrap();
        let b = serde_json::to_string(&report_json(&analyze_poly(&f).unwrap())).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn report_json_shape() {
    let v = report_json(&report("(y^2 - x^3)*(y - 2*x)").unwrap());
    assert_eq!(v["multiplicity"], 3);
    assert_eq!(v["cone"].as_array().unwrap().len(), 2);
    assert_eq!(v["cone"][0]["direction"].as_array().unwrap().len(), 4);
    assert_eq!(v["branches"].as_array().unwrap().len(), 2);
    assert_eq!(v["identity_ok"], true);
    assert_eq!(v["smooth"], false);
    assert_eq!(v["regularity"], "not-blow-spherical-regular");
    let b = report_json(&report("z1^3 - z2^2 - z3^2 - z4^2").unwrap());
    assert_eq!(b["cone"][0]["note"], "unverified (n>=3)");
}
