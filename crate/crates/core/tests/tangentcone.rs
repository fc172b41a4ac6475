use blowsphere::acceptance::random_branch;
use blowsphere::puiseux::{puiseux_branches, DEFAULT_TERMS};
use blowsphere::tangentcone::{
    cone_lines, multiplicity_identity_check, relative_multiplicities, ConeLine,
};
use blowsphere::{parse, Error, GaussianRational, Poly, Variables};
use num_complex::Complex;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn p(s: &str) -> Poly {
    parse(s, &Variables::Plane).unwrap()
}

fn c(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

/// `|in_f(d)|` with the coefficients read as floats.
fn form_at(f: &Poly, d: &[Complex<f64>]) -> f64 {
    f.terms()
        .map(|(e, a)| a.to_complex::<f64>() * d[0].powu(e[0]) * d[1].powu(e[1]))
        .sum::<Complex<f64>>()
        .norm()
}

fn close(a: &[Complex<f64>], b: &[Complex<f64>]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).norm() < 1e-9)
}

fn exponent_of(lines: &[ConeLine<f64>], d: &[Complex<f64>]) -> Option<u32> {
    lines
        .iter()
        .find(|l| close(&l.direction, d))
        .map(|l| l.exponent)
}

#[test]
fn lines_of_reference_forms() {
    let lines = cone_lines::<f64>(&p("y^2")).unwrap();
    assert_eq!(lines.len(), 1);
    assert_eq!(exponent_of(&lines, &[c(1.0, 0.0), c(0.0, 0.0)]), Some(2));

    let s5 = 5f64.sqrt();
    let lines = cone_lines::<f64>(&p("y^3 - 2*x*y^2")).unwrap();
    assert_eq!(lines.len(), 2);
    assert_eq!(exponent_of(&lines, &[c(1.0, 0.0), c(0.0, 0.0)]), Some(2));
    assert_eq!(
        exponent_of(&lines, &[c(1.0 / s5, 0.0), c(2.0 / s5, 0.0)]),
        Some(1)
    );

    let s2 = 2f64.sqrt();
    let lines = cone_lines::<f64>(&p("x^2 + y^2")).unwrap();
    assert_eq!(lines.len(), 2);
    assert_eq!(
        exponent_of(&lines, &[c(1.0 / s2, 0.0), c(0.0, 1.0 / s2)]),
        Some(1)
    );
    assert_eq!(
        exponent_of(&lines, &[c(1.0 / s2, 0.0), c(0.0, -1.0 / s2)]),
        Some(1)
    );

    // the axis x = 0
    let lines = cone_lines::<f64>(&p("x*y^2 + x^3")).unwrap();
    assert_eq!(lines.iter().map(|l| l.exponent).sum::<u32>(), 3);
    assert_eq!(exponent_of(&lines, &[c(0.0, 0.0), c(1.0, 0.0)]), Some(1));
}

#[test]
fn directions_are_normalized_zeros_of_the_form() {
    for text in [
        "y^3 - 2*x*y^2",
        "x^2 + y^2",
        "x^3 - i*x*y^2 + 2*y^3",
        "3*x^2*y - y^3",
    ] {
        let f = p(text);
        for l in cone_lines::<f64>(&f).unwrap() {
            let norm: f64 = l.direction.iter().map(|z| z.norm_sqr()).sum();
            assert!((norm - 1.0).abs() < 1e-12);
            let lead = l.direction.iter().find(|z| z.norm() > 1e-12).unwrap();
            assert!(lead.re > 0.0 && lead.im.abs() < 1e-12, "{text}");
            assert!(form_at(&f, &l.direction) < 1e-9, "{text}");
        }
    }
}

#[test]
fn cone_lines_rejects_bad_input() {
    assert!(matches!(
        cone_lines::<f64>(&p("y^2 - x^3")),
        Err(Error::NotHomogeneous)
    ));
    let f = parse("z1^2 - z2*z3", &Variables::Indexed(3)).unwrap();
    assert!(matches!(
        cone_lines::<f64>(&f),
        Err(Error::VariableCount { .. })
    ));
}

#[test]
fn relative_multiplicities_and_identity() {
    for (text, expected) in [
        ("y^2 - x^3", vec![((1.0, 0.0), 2)]),
        ("y", vec![((1.0, 0.0), 1)]),
        (
            "(y^2 - x^3)*(y - 2*x)",
            vec![((1.0, 0.0), 2), ((1.0, 2.0), 1)],
        ),
        ("y*(y - x^2)", vec![((1.0, 0.0), 2)]),
    ] {
        let f = p(text);
        let cone = relative_multiplicities(&puiseux_branches(&f, DEFAULT_TERMS).unwrap()).unwrap();
        assert_eq!(cone.lines.len(), expected.len(), "{text}");
        for ((a, b), k) in expected {
            let n = f64::hypot(a, b);
            assert_eq!(
                cone.k(&[c(a / n, 0.0), c(b / n, 0.0)], 1e-9),
                Some(k),
                "{text}"
            );
        }
        assert!(multiplicity_identity_check(&f, &cone), "{text}");
    }
    assert!(matches!(
        relative_multiplicities::<f64>(&[]),
        Err(Error::EmptyBranches)
    ));
}

#[test]
fn identity_check_detects_a_wrong_count() {
    let f = p("(y^2 - x^3)*(y - 2*x)");
    let mut cone = relative_multiplicities(&puiseux_branches(&f, DEFAULT_TERMS).unwrap()).unwrap();
    cone.relative_mult[0] += 1;
    assert!(!multiplicity_identity_check(&f, &cone));
}

fn linear_form() -> impl Strategy<Value = Poly> {
    (-4i64..=4, -4i64..=4, -2i64..=2).prop_filter_map("nonzero", |(a, b, im)| {
        if a == 0 && b == 0 {
            return None;
        }
        let ca = Poly::constant(
            2,
            GaussianRational::new(
                BigRational::from_integer(a.into()),
                BigRational::from_integer(im.into()),
            ),
        );
        let cb = Poly::constant(2, GaussianRational::from_integer(b));
        Some(&(&ca * &Poly::var(2, 0)) + &(&cb * &Poly::var(2, 1)))
    })
}

fn product(forms: &[Poly]) -> Poly {
    forms.iter().fold(Poly::one(2), |acc, f| &acc * f)
}

fn merged(a: &[ConeLine<f64>], b: &[ConeLine<f64>]) -> Vec<(Vec<Complex<f64>>, u32)> {
    let mut out: Vec<(Vec<Complex<f64>>, u32)> = Vec::new();
    for l in a.iter().chain(b) {
        match out.iter_mut().find(|(d, _)| close(d, &l.direction)) {
            Some(entry) => entry.1 += l.exponent,
            None => out.push((l.direction.clone(), l.exponent)),
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exponents_sum_to_degree(forms in prop::collection::vec(linear_form(), 1..=5)) {
        let f = product(&forms);
        let lines = cone_lines::<f64>(&f).unwrap();
        prop_assert_eq!(lines.iter().map(|l| l.exponent).sum::<u32>(), forms.len() as u32);
    }

    #[test]
    fn lines_of_a_product_merge(a in prop::collection::vec(linear_form(), 1..=3), b in prop::collection::vec(linear_form(), 1..=3)) {
        let (fa, fb) = (product(&a), product(&b));
        let la = cone_lines::<f64>(&fa).unwrap();
        let lb = cone_lines::<f64>(&fb).unwrap();
        let lab = cone_lines::<f64>(&(&fa * &fb)).unwrap();
        let expected = merged(&la, &lb);
        prop_assert_eq!(lab.len(), expected.len());
        for (d, k) in expected {
            prop_assert_eq!(exponent_of(&lab, &d), Some(k));
        }
    }

    #[test]
    fn identity_on_random_branch_products(seed in any::<u64>(), count in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut budget = 10u32;
        let mut f = Poly::one(2);
        for _ in 0..count {
            if budget == 0 {
                break;
            }
            let (b, d) = random_branch(&mut rng, budget);
            budget -= d;
            f = &f * &b;
        }
        prop_assume!(blowsphere::polycore::is_reduced(&f));
        let cone = relative_multiplicities(&puiseux_branches(&f, DEFAULT_TERMS).unwrap()).unwrap();
        prop_assert_eq!(cone.total(), f.order_at_origin().unwrap());
        prop_assert!(multiplicity_identity_check(&f, &cone));
    }
}
