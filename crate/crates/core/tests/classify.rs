use blowsphere::acceptance::random_reduced_germ;
use blowsphere::classify::{
    decision_json, equivalent, signature, witness, EquivalenceDecision, Signature,
};
use blowsphere::germ::{analyze, analyze_poly, AnalyzeOptions, GermInput, GermReport};
use blowsphere::{Error, GaussianRational, Poly};
use num_complex::Complex;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn report(text: &str) -> GermReport {
    analyze(&GermInput::parse(text).unwrap(), &AnalyzeOptions::default()).unwrap()
}

fn decide(a: &str, b: &str) -> EquivalenceDecision {
    equivalent(&report(a), &report(b)).unwrap()
}

fn sig(groups: &[&[u32]]) -> Signature {
    Signature {
        groups: groups.iter().map(|g| g.to_vec()).collect(),
    }
}

fn swapped(f: &Poly) -> Poly {
    Poly::from_terms(2, f.terms().map(|(e, c)| (vec![e[1], e[0]], c.clone())))
}

#[test]
fn signatures_of_reference_germs() {
    assert_eq!(signature(&report("y^2 - x^3")), sig(&[&[2]]));
    assert_eq!(signature(&report("y")), sig(&[&[1]]));
    assert_eq!(
        signature(&report("(y^2 - x^3)*(y - 2*x)")),
        sig(&[&[1], &[2]])
    );
    assert_eq!(signature(&report("y*(y - x^2)")), sig(&[&[1, 1]]));
    assert_eq!(
        signature(&report("(y^2 - x^3)*(y^2 - 2*x^3)*(x - y^2)")),
        sig(&[&[1], &[2, 2]])
    );
    assert_eq!(signature(&report("y^2 - x^3")).to_string(), "{{2}}");
}

#[test]
fn reference_decisions() {
    let d = decide("y^2 - x^3", "y^2 - x^5");
    assert!(d.equivalent);
    assert_eq!(d.sigma, Some(vec![(0, 0)]));
    assert!(d.certificate.is_none());

    let d = decide("y^2 - x^3", "y");
    assert!(!d.equivalent);
    assert!(d
        .certificate
        .as_deref()
        .unwrap()
        .starts_with("multiplicity differs"));
    assert!(d.sigma.is_none() && d.witness.is_none());

    // same multiplicity 2, one branch vs two
    let d = decide("y^2 - x^3", "y^2 - x^2");
    assert!(!d.equivalent);
    assert!(d.certificate.unwrap().starts_with("branch count differs"));

    // two smooth branches: tangent vs transverse
    let d = decide("y*(y - x^2)", "y*(y - x)");
    assert!(!d.equivalent);
    assert!(d
        .certificate
        .unwrap()
        .starts_with("tangent line count differs"));

    // same multiplicities, grouped differently
    let d = decide(
        "y*(y - x^2)*(y^2 - x^3)*(x - y^2)",
        "y*(x - y^2)*(x - y^3)*(y^2 - x^3)",
    );
    assert!(!d.equivalent, "{:?}", d.certificate);

    assert!(decide("(y^2 - x^3)*(y - 2*x)", "(y^2 - x^5)*(y - x)").equivalent);
    assert!(decide("y - x^2", "x").equivalent);
}

#[test]
fn decision_invariants_hold() {
    for (a, b) in [
        ("y^2 - x^3", "y^2 - x^5"),
        ("y^2 - x^3", "y"),
        ("y*(y - x)", "x^2 - y^2"),
    ] {
        let d = decide(a, b);
        assert_eq!(d.equivalent, d.sigma.is_some());
        assert_eq!(d.equivalent, d.witness.is_some());
        assert_eq!(!d.equivalent, d.certificate.is_some());
        let v = decision_json(&d);
        assert_eq!(v["equivalent"], d.equivalent);
        assert_eq!(v["certificate"].is_null(), d.equivalent);
    }
}

#[test]
fn witness_pairs_cusp_with_higher_cusp() {
    let d = decide("y^2 - x^3", "y^2 - x^5");
    let w = &d.witness.unwrap()[0];
    assert_eq!(w.multiplicity, 2);
    let exps = |c: &[(u32, Complex<f64>)]| c.iter().map(|t| t.0).collect::<Vec<u32>>();
    assert_eq!(exps(&w.x_param.coords()[0]), vec![2]);
    assert_eq!(exps(&w.x_param.coords()[1]), vec![3]);
    assert_eq!(exps(&w.y_param.coords()[0]), vec![2]);
    assert_eq!(exps(&w.y_param.coords()[1]), vec![5]);
    let mut last = f64::INFINITY;
    for r in [1e-2, 1e-3, 1e-4] {
        let s = w.sample(r, 64);
        assert!(s.image_norm < 2.0 * r && s.image_norm < last);
        last = s.image_norm;
    }
}

#[test]
fn smooth_witness_drift_is_linear_in_r() {
    for (a, b) in [
        ("y - x^2", "x + y^3"),
        ("y*(y - x)", "x^2 - y^2 - x^3"),
        ("(y^2 - x^3)*(y - 2*x)", "(y^2 - x^3)*(y + x)"),
    ] {
        for w in decide(a, b).witness.unwrap() {
            if w.multiplicity > 1 {
                continue;
            }
            for r in [1e-2, 1e-3, 1e-4] {
                let s = w.sample(r, 64);
                assert!(s.image_norm < 10.0 * r, "{a} / {b}");
                assert!(s.drift < 10.0 * r, "{a} / {b}: drift {} at {r}", s.drift);
            }
        }
    }
}

#[test]
fn witness_rejects_mismatched_germs() {
    let (x, y) = (report("y^2 - x^3"), report("y"));
    assert!(matches!(
        witness(&x, &y, &[(0, 0)]),
        Err(Error::NotEquivalent)
    ));
    let y = report("y^2 - x^5");
    assert!(witness(&x, &y, &[(0, 3)]).is_err());
    let h = report("z1^3 - z2^2 - z3^2 - z4^2");
    assert!(matches!(equivalent(&x, &h), Err(Error::Invalid(_))));
}

#[test]
fn parametrized_and_implicit_inputs_agree() {
    assert!(decide("branch: t^2, t^3", "y^2 - x^3").equivalent);
    assert!(
        decide(
            "branch: t^2, t^3, t^5\nbranch: t, 0, t^2",
            "(y^2 - x^3)*(y - x^2)"
        )
        .equivalent
    );
    assert!(
        !decide(
            "branch: t^2, t^3, t^5\nbranch: t, 0, t^2",
            "(y^2 - x^3)*(x)"
        )
        .equivalent
    );
}

fn germ(seed: u64) -> GermReport {
    analyze_poly(&random_reduced_germ(&mut ChaCha8Rng::seed_from_u64(seed))).unwrap()
}

fn scalar() -> impl Strategy<Value = GaussianRational> {
    (1i64..=5, 1i64..=4, -3i64..=3).prop_map(|(n, d, im)| {
        GaussianRational::new(
            BigRational::new(n.into(), d.into()),
            BigRational::from_integer(im.into()),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn equivalence_is_reflexive_and_symmetric(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (germ(a), germ(b));
        prop_assert!(equivalent(&x, &x).unwrap().equivalent);
        let xy = equivalent(&x, &y).unwrap().equivalent;
        prop_assert_eq!(xy, equivalent(&y, &x).unwrap().equivalent);
        prop_assert_eq!(xy, signature(&x) == signature(&y));
    }

    #[test]
    fn equivalence_is_transitive(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (x, y, z) = (germ(a), germ(b), germ(c));
        let xy = equivalent(&x, &y).unwrap().equivalent;
        let yz = equivalent(&y, &z).unwrap().equivalent;
        if xy && yz {
            prop_assert!(equivalent(&x, &z).unwrap().equivalent);
        }
    }

    #[test]
    fn scaling_and_swapping_preserve_the_class(a in any::<u64>(), lambda in scalar()) {
        let f = random_reduced_germ(&mut ChaCha8Rng::seed_from_u64(a));
        let x = analyze_poly(&f).unwrap();
        let scaled = analyze_poly(&f.scale_arguments(&lambda)).unwrap();
        prop_assert!(equivalent(&x, &scaled).unwrap().equivalent);
        let mirrored = analyze_poly(&swapped(&f)).unwrap();
        prop_assert_eq!(signature(&x), signature(&mirrored));
    }
}
