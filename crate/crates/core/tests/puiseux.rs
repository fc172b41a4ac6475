use blowsphere::acceptance::random_branch;
use blowsphere::corpus;
use blowsphere::puiseux::{
    branch_multiplicity, newton_polygon, puiseux_branches, residual_order, Branch, Orientation,
    DEFAULT_TERMS,
};
use blowsphere::{parse, Error, Poly, Variables};
use num_complex::Complex;
use num_rational::Ratio;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn p(s: &str) -> Poly {
    parse(s, &Variables::Plane).unwrap()
}

fn branches(s: &str) -> Vec<Branch<f64>> {
    puiseux_branches(&p(s), DEFAULT_TERMS).unwrap()
}

fn r(n: i64, d: i64) -> Ratio<i64> {
    Ratio::new(n, d)
}

/// Coefficients of `sqrt(1 + x)` from the generalized binomial theorem.
fn sqrt_one_plus(n: usize) -> Vec<f64> {
    let mut out = vec![1.0];
    for k in 1..n {
        let prev = out[k - 1];
        out.push(prev * (0.5 - (k as f64 - 1.0)) / k as f64);
    }
    out
}

/// Roots of `sum c_k y^k` by Weierstrass (Durand-Kerner) iteration.
fn durand_kerner(c: &[Complex<f64>]) -> Vec<Complex<f64>> {
    let n = c.len() - 1;
    let lead = c[n];
    let monic: Vec<Complex<f64>> = c.iter().map(|a| a / lead).collect();
    let eval = |z: Complex<f64>| {
        monic
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, a| acc * z + a)
    };
    let seed = Complex::new(0.4, 0.9);
    let mut z: Vec<Complex<f64>> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        let prev = z.clone();
        for i in 0..n {
            let denom = (0..n)
                .filter(|&j| j != i)
                .fold(Complex::new(1.0, 0.0), |acc, j| acc * (z[i] - z[j]));
            let step = eval(z[i]) / denom;
            z[i] -= step;
        }
        if z.iter().zip(&prev).all(|(a, b)| (a - b).norm() < 1e-15) {
            break;
        }
    }
    z
}

/// Coefficients of `f(x0, y)` in `y`.
fn slice_at(f: &Poly, x0: Complex<f64>) -> Vec<Complex<f64>> {
    let deg = f.degree_in(1).unwrap() as usize;
    let mut c = vec![Complex::new(0.0, 0.0); deg + 1];
    for (e, a) in f.terms() {
        c[e[1] as usize] += a.to_complex::<f64>() * x0.powu(e[0]);
    }
    c
}

#[test]
fn newton_polygons() {
    let np = newton_polygon(&p("y^2 - x^3")).unwrap();
    assert_eq!(np.segments.len(), 1);
    assert_eq!(np.segments[0].slope, r(3, 2));
    assert_eq!(np.segments[0].height, 2);
    assert_eq!(np.segments[0].lattice_length, 1);

    let np = newton_polygon(&p("y^2 - x^2")).unwrap();
    assert_eq!(np.segments.len(), 1);
    assert_eq!(np.segments[0].slope, r(1, 1));
    assert_eq!(np.segments[0].height, 2);
    assert_eq!(np.segments[0].lattice_length, 2);

    let np = newton_polygon(&p("y*(y - x^2)")).unwrap();
    assert_eq!(np.y_factor, 1);
    let slopes: Vec<Ratio<i64>> = np.segments.iter().map(|s| s.slope).collect();
    assert_eq!(slopes, vec![r(2, 1)]);

    let np = newton_polygon(&p("(y^2 - x^3)*(y - 2*x)")).unwrap();
    let slopes: Vec<Ratio<i64>> = np.segments.iter().map(|s| s.slope).collect();
    assert_eq!(slopes, vec![r(1, 1), r(3, 2)]);
    assert_eq!(np.segments.iter().map(|s| s.height).sum::<u32>(), 3);
}

#[test]
fn cusp_branch() {
    let bs = branches("y^2 - x^3");
    assert_eq!(bs.len(), 1);
    let b = &bs[0];
    assert_eq!(b.ramification, 2);
    assert_eq!(b.multiplicity, 2);
    assert_eq!(b.orientation, Orientation::XParam);
    assert_eq!(b.series.len(), 1);
    assert_eq!(b.series[0].0, r(3, 2));
    assert!((b.series[0].1 - Complex::new(1.0, 0.0)).norm() < 1e-12);
    assert!(b.tangent[1].norm() < 1e-12);
    assert!(b.is_exact());
}

#[test]
fn nodal_cubic_branches_follow_the_binomial_series() {
    let bs = branches("y^2 - x^2 - x^3");
    assert_eq!(bs.len(), 2);
    let binomial = sqrt_one_plus(8);
    let mut signs = Vec::new();
    for b in &bs {
        assert_eq!(b.ramification, 1);
        assert_eq!(b.multiplicity, 1);
        let sign = b.series[0].1.re.signum();
        signs.push(sign);
        // y = sign * x * sqrt(1 + x)
        for (k, (e, c)) in b.series.iter().take(8).enumerate() {
            assert_eq!(*e, r(k as i64 + 1, 1));
            assert!(
                (c.re - sign * binomial[k]).abs() < 1e-12 && c.im.abs() < 1e-12,
                "term {k}: {c}"
            );
        }
        let s = 0.5f64.sqrt();
        assert!((b.tangent[0].re - s).abs() < 1e-12 && (b.tangent[1].re - sign * s).abs() < 1e-12);
    }
    signs.sort_by(f64::total_cmp);
    assert_eq!(signs, vec![-1.0, 1.0]);
}

#[test]
fn product_branches() {
    let bs = branches("(y^2 - x^3)*(y - 2*x)");
    assert_eq!(bs.len(), 2);
    let cusp = bs.iter().find(|b| b.multiplicity == 2).unwrap();
    let line = bs.iter().find(|b| b.multiplicity == 1).unwrap();
    assert!(cusp.tangent[1].norm() < 1e-12);
    let s5 = 5f64.sqrt();
    assert!(
        (line.tangent[0].re - 1.0 / s5).abs() < 1e-12
            && (line.tangent[1].re - 2.0 / s5).abs() < 1e-12
    );
}

#[test]
fn multiplicity_of_branches() {
    assert_eq!(branch_multiplicity(&branches("y^2 - x^3")[0]), 2);
    assert_eq!(branch_multiplicity(&branches("y - x^2")[0]), 1);
    // x = t^3, y = t^2 after the roles swap
    let bs = branches("x^3 - y^2");
    assert_eq!(bs.len(), 1);
    assert_eq!(branch_multiplicity(&bs[0]), 2);
    let bs = branches("x - y^3");
    assert!(bs[0].tangent[0].norm() < 1e-12);
    assert_eq!(branch_multiplicity(&bs[0]), 1);
}

#[test]
fn residual_orders() {
    let f = p("y^2 - x^3");
    assert_eq!(residual_order(&f, &branches("y^2 - x^3")[0]), f64::INFINITY);
    assert_eq!(residual_order(&p("y"), &branches("y")[0]), f64::INFINITY);
    let f = p("y^2 - x^2 - x^3");
    for b in puiseux_branches(&f, 4).unwrap() {
        let bound = b.ramification as f64
            * b.truncation_order
                .map(|q| *q.numer() as f64 / *q.denom() as f64)
                .unwrap();
        let slope = residual_order(&f, &b);
        assert!(slope >= 5.0 && slope > bound - 1.0, "slope {slope}");
    }
}

#[test]
fn non_reduced_input_is_rejected() {
    for text in ["y^2", "(y - x)^2", "(y^2 - x^3)^2*(y + x)"] {
        assert!(
            matches!(
                puiseux_branches(&p(text), DEFAULT_TERMS),
                Err(Error::NonReduced(_))
            ),
            "{text}"
        );
    }
}

#[test]
fn corpus_multiplicities_and_residuals() {
    for (name, f) in corpus::embedded() {
        let bs = puiseux_branches(&f, DEFAULT_TERMS).unwrap();
        let total: u32 = bs.iter().map(|b| b.multiplicity).sum();
        assert_eq!(total, f.order_at_origin().unwrap(), "{name}");
        for b in &bs {
            assert_eq!(b.multiplicity, branch_multiplicity(b), "{name}");
            for w in b.series.windows(2) {
                assert!(w[0].0 < w[1].0 && w[0].0 > Ratio::from_integer(0));
            }
        }
    }
}

/// The `e` conjugates of every branch are the small roots of `f(x0, y)`.
#[test]
fn conjugates_are_the_roots_of_slices() {
    let x0 = Complex::from_polar(1e-3, 0.37);
    let mut checked = 0;
    for (name, f) in corpus::embedded() {
        let bs = puiseux_branches(&f, DEFAULT_TERMS).unwrap();
        if bs.iter().any(|b| b.orientation != Orientation::XParam)
            || f.degree_in(1).unwrap_or(0) == 0
        {
            continue;
        }
        let mut predicted = Vec::new();
        for b in &bs {
            let psi = b.parametrization();
            let e = b.ramification;
            for j in 0..e {
                let t = x0.powf(1.0 / e as f64)
                    * Complex::from_polar(1.0, std::f64::consts::TAU * j as f64 / e as f64);
                predicted.push(psi.eval(t)[1]);
            }
        }
        let small: Vec<Complex<f64>> = durand_kerner(&slice_at(&f, x0))
            .into_iter()
            .filter(|y| y.norm() < 0.1)
            .collect();
        assert_eq!(predicted.len(), small.len(), "{name}");
        let mut used = vec![false; small.len()];
        for y in &predicted {
            let (i, d) = small
                .iter()
                .enumerate()
                .filter(|(i, _)| !used[*i])
                .map(|(i, z)| (i, (z - y).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .unwrap();
            assert!(d < 1e-6 * x0.norm(), "{name}: conjugate off by {d}");
            used[i] = true;
        }
        checked += 1;
    }
    assert!(checked >= 15, "only {checked} germs checked");
}

fn branch_shape(bs: &[Branch<f64>]) -> Vec<(u32, u32)> {
    let mut v: Vec<(u32, u32)> = bs
        .iter()
        .map(|b| (b.multiplicity, b.ramification))
        .collect();
    v.sort_unstable();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coprime_products_union_branches(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, _) = random_branch(&mut rng, 5);
        let (g, _) = random_branch(&mut rng, 5);
        let fg = &f * &g;
        prop_assume!(blowsphere::polycore::is_reduced(&fg));
        let bf = puiseux_branches(&f, DEFAULT_TERMS).unwrap();
        let bg = puiseux_branches(&g, DEFAULT_TERMS).unwrap();
        let bfg = puiseux_branches(&fg, DEFAULT_TERMS).unwrap();
        let mut union = bf.clone();
        union.extend(bg);
        prop_assert_eq!(branch_shape(&bfg), branch_shape(&union));
    }
}
