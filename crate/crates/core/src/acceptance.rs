//! The acceptance suite: nine end-to-end checks, each reporting pass/fail
//! with a short detail line. Shared by the `selftest` command and the
//! `acceptance` test target.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{self, EquivalenceDecision};
use crate::dschecks;
use crate::error::Result;
use crate::germ::{self, GermReport, Regularity};
use crate::oracle;
use crate::polycore::is_reduced;
use crate::puiseux::{self, Branch, PuiseuxOptions};
use crate::tangentcone;
use crate::{parse, DoubleF64, GaussianRational, Poly, Variables};

/// Witness sampling radii.
pub const WITNESS_RADII: [f64; 3] = [1e-2, 1e-3, 1e-4];
/// Germs used for the equivalence-law and witness checks.
pub const LAW_CORPUS_SIZE: usize = 20;

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} [{}]: {} ({:.2} s) {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

fn timed(
    id: u8,
    name: &'static str,
    limit: Option<f64>,
    body: impl FnOnce() -> Result<(bool, String)>,
) -> CriterionResult {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(limit) = limit {
        if elapsed.as_secs_f64() >= limit {
            passed = false;
            detail = format!("{detail}; exceeded {limit} s");
        }
    }
    CriterionResult {
        id,
        name,
        passed,
        detail,
        elapsed,
    }
}

fn plane(s: &str) -> Poly {
    parse(s, &Variables::Plane).expect("fixed input parses")
}

fn report(f: &Poly) -> Result<GermReport> {
    germ::analyze_poly(f)
}

fn decide(x: &GermReport, y: &GermReport) -> Result<EquivalenceDecision> {
    classify::equivalent(x, y)
}

/// Regression triple: cusp against `y^2 - x^5` and against a line, and the
/// Brieskorn hypersurface.
pub fn criterion_1() -> CriterionResult {
    timed(1, "regression triple", Some(1.0), || {
        let cusp = report(&plane("y^2 - x^3"))?;
        let a = decide(&cusp, &report(&plane("y^2 - x^5"))?)?.equivalent;
        let b = decide(&cusp, &report(&plane("y"))?)?.equivalent;
        let brieskorn = parse("z1^3 - z2^2 - z3^2 - z4^2", &Variables::Indexed(4))?;
        let h = germ::analyze(
            &germ::GermInput::Implicit {
                poly: brieskorn,
                vars: Variables::Indexed(4),
            },
            &germ::AnalyzeOptions::default(),
        )?;
        let ok =
            a && !b && h.multiplicity == 2 && h.regularity == Regularity::NotBlowSphericalRegular;
        Ok((
            ok,
            format!(
                "cusp~x^5: {a}, cusp~line: {b}, brieskorn m = {}, {}",
                h.multiplicity,
                h.regularity.as_str()
            ),
        ))
    })
}

fn small_gaussian(rng: &mut ChaCha8Rng) -> GaussianRational {
    loop {
        let re = rng.gen_range(-3i64..=3);
        let im = if rng.gen_bool(0.3) {
            rng.gen_range(-2i64..=2)
        } else {
            0
        };
        if re != 0 || im != 0 {
            return GaussianRational::new(
                BigRational::from_integer(BigInt::from(re)),
                BigRational::from_integer(BigInt::from(im)),
            );
        }
    }
}

/// An irreducible branch equation and its degree.
pub fn random_branch(rng: &mut ChaCha8Rng, max_degree: u32) -> (Poly, u32) {
    let x = Poly::var(2, 0);
    let y = Poly::var(2, 1);
    loop {
        let c = Poly::constant(2, small_gaussian(rng));
        match rng.gen_range(0..3) {
            0 => {
                let k = rng.gen_range(1..=3u32);
                if k <= max_degree {
                    return (&y - &(&c * &x.pow(k)), k);
                }
            }
            1 => {
                let k = rng.gen_range(2..=3u32);
                if k <= max_degree {
                    return (&x - &(&c * &y.pow(k)), k);
                }
            }
            _ => {
                // (y - c x)^p - x^q with gcd(p, q) = 1 is irreducible
                let p = rng.gen_range(2..=3u32);
                let q = rng.gen_range(p + 1..=p + 4);
                if num_integer::gcd(p, q) == 1 && q <= max_degree {
                    return (&(&y - &(&c * &x)).pow(p) - &x.pow(q), q);
                }
            }
        }
    }
}

/// Random reduced plane germ: a product of at most four branches with total
/// degree at most 10.
pub fn random_reduced_germ(rng: &mut ChaCha8Rng) -> Poly {
    loop {
        let count = rng.gen_range(1..=4);
        let mut f = Poly::one(2);
        let mut budget = 10u32;
        for _ in 0..count {
            if budget == 0 {
                break;
            }
            let (g, d) = random_branch(rng, budget);
            budget -= d;
            f = &f * &g;
        }
        if is_reduced(&f) {
            return f;
        }
    }
}

/// Multiplicity identity on random reduced germs.
pub fn criterion_2(seed: u64) -> CriterionResult {
    timed(2, "multiplicity identity", Some(30.0), || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..100 {
            let f = random_reduced_germ(&mut rng);
            let r = report(&f)?;
            let cone = r.lines().expect("plane curve");
            let m = f.order_at_origin()?;
            if m != cone.total() || !tangentcone::multiplicity_identity_check(&f, cone) {
                return Ok((
                    false,
                    format!("germ {i} ({}): ord {m}, sum k = {}", r.source, cone.total()),
                ));
            }
        }
        Ok((true, "100 random germs".into()))
    })
}

/// Sheet counts of the numerical blow-up against the symbolic `k_X`.
pub fn criterion_3(corpus: &[(String, Poly)], seed: u64) -> CriterionResult {
    timed(3, "oracle agreement", Some(60.0), || {
        let mut checked = 0usize;
        for (name, f) in corpus {
            let r = report(f)?;
            let cone = r.lines().expect("plane curve");
            for s in 0..3 {
                let sample = oracle::sample_strict_transform(
                    &r.branches,
                    &oracle::DEFAULT_RADII,
                    oracle::DEFAULT_PER_RADIUS,
                    seed.wrapping_add(s),
                )?;
                let est = oracle::estimate_boundary(&sample, cone, oracle::DEFAULT_DELTA)?;
                if est.sheet_counts != cone.relative_mult {
                    return Ok((
                        false,
                        format!(
                            "{name}: oracle {:?} vs symbolic {:?}",
                            est.sheet_counts, cone.relative_mult
                        ),
                    ));
                }
            }
            checked += 1;
        }
        Ok((checked >= 20, format!("{checked} germs x 3 seeds")))
    })
}

/// Branch multiplicities add up to the order; residuals decay fast enough.
pub fn criterion_4(corpus: &[(String, Poly)]) -> CriterionResult {
    timed(4, "puiseux soundness", None, || {
        let opts = PuiseuxOptions {
            terms: 12,
            ..PuiseuxOptions::default()
        };
        let mut worst = f64::INFINITY;
        for (name, f) in corpus {
            let bs: Vec<Branch<DoubleF64>> = puiseux::puiseux_branches_in(f, &opts)?;
            let total: u32 = bs.iter().map(|b| b.multiplicity).sum();
            if total != f.order_at_origin()? {
                return Ok((
                    false,
                    format!("{name}: branch multiplicities sum to {total}"),
                ));
            }
            for b in &bs {
                let slope = puiseux::residual_order(f, b);
                worst = worst.min(slope);
                if slope < 5.0 {
                    return Ok((false, format!("{name}: residual order {slope:.2}")));
                }
            }
        }
        Ok((true, format!("minimal residual order {worst:.2}")))
    })
}

/// Decision matrix over the first germs of the corpus.
fn decisions(reports: &[GermReport]) -> Result<Vec<Vec<EquivalenceDecision>>> {
    reports
        .iter()
        .map(|x| reports.iter().map(|y| decide(x, y)).collect())
        .collect()
}

fn law_reports(corpus: &[(String, Poly)]) -> Result<Vec<GermReport>> {
    corpus
        .iter()
        .take(LAW_CORPUS_SIZE)
        .map(|(_, f)| report(f))
        .collect()
}

/// Reflexivity, symmetry, transitivity, and invariants of equivalent pairs.
pub fn criterion_5(corpus: &[(String, Poly)]) -> CriterionResult {
    timed(5, "equivalence laws", None, || {
        let reports = law_reports(corpus)?;
        let d = decisions(&reports)?;
        let n = reports.len();
        let eq = |i: usize, j: usize| d[i][j].equivalent;
        for i in 0..n {
            if !eq(i, i) {
                return Ok((false, format!("not reflexive at {}", reports[i].source)));
            }
            for j in 0..n {
                if eq(i, j) != eq(j, i) {
                    return Ok((
                        false,
                        format!(
                            "not symmetric: {} / {}",
                            reports[i].source, reports[j].source
                        ),
                    ));
                }
                if eq(i, j) {
                    let (sx, sy) = (
                        classify::signature(&reports[i]),
                        classify::signature(&reports[j]),
                    );
                    if reports[i].multiplicity != reports[j].multiplicity
                        || sx.branch_count() != sy.branch_count()
                        || sx.line_count() != sy.line_count()
                    {
                        return Ok((
                            false,
                            format!(
                                "invariants differ: {} / {}",
                                reports[i].source, reports[j].source
                            ),
                        ));
                    }
                }
                for k in 0..n {
                    if eq(i, j) && eq(j, k) && !eq(i, k) {
                        return Ok((false, format!("not transitive at ({i}, {j}, {k})")));
                    }
                }
            }
        }
        Ok((n >= 20, format!("{n} germs, {} ordered pairs", n * n)))
    })
}

/// Witness maps shrink to the origin and their direction drift stays below
/// `10 r`.
pub fn criterion_6(corpus: &[(String, Poly)]) -> CriterionResult {
    timed(6, "witness convergence", None, || {
        let reports = law_reports(corpus)?;
        let mut pairs = 0usize;
        let mut failures = 0usize;
        let mut first_failure = String::new();
        let mut worst_ratio = 0.0f64;
        for x in &reports {
            for y in &reports {
                let dec = decide(x, y)?;
                let witness = match dec.witness {
                    Some(w) => w,
                    None => continue,
                };
                pairs += 1;
                let mut ok = true;
                for w in &witness {
                    let samples: Vec<classify::WitnessSample> =
                        WITNESS_RADII.iter().map(|&r| w.sample(r, 64)).collect();
                    let shrinking = samples
                        .windows(2)
                        .all(|s| s[1].image_norm < s[0].image_norm)
                        && samples.iter().all(|s| s.image_norm <= 10.0 * s.r);
                    for s in &samples {
                        worst_ratio = worst_ratio.max(s.drift / s.r);
                    }
                    if !shrinking || samples.iter().any(|s| s.drift >= 10.0 * s.r) {
                        ok = false;
                    }
                }
                if !ok {
                    failures += 1;
                    if first_failure.is_empty() {
                        first_failure = format!("{} -> {}", x.source, y.source);
                    }
                }
            }
        }
        let detail = if failures == 0 {
            format!("{pairs} equivalent pairs, max drift/r = {worst_ratio:.3}")
        } else {
            format!(
                "{failures} of {pairs} equivalent pairs exceed drift 10 r (max drift/r = {worst_ratio:.1}); first: {first_failure}"
            )
        };
        Ok((failures == 0, detail))
    })
}

/// Descartes and Lê equations have at most one positive zero.
pub fn criterion_7() -> CriterionResult {
    timed(7, "descartes claims", Some(5.0), || {
        let mut cases = 0usize;
        for n in 2..=6u32 {
            for mu in 1..=100u64 {
                let p = dschecks::descartes_polynomial(n, mu);
                if dschecks::positive_root_count(&p) > 1
                    || dschecks::descartes_multiplicity(n, mu)?.len() > 1
                {
                    return Ok((false, format!("n = {n}, mu' = {mu}")));
                }
                cases += 1;
            }
            // lambda grids with entries up to 20 and up to three Lê numbers
            let s_max = (n as usize).min(3);
            let mut lambdas = vec![0u64; 1];
            for len in 1..=s_max {
                lambdas.resize(len, 0);
                let total = 21usize.pow(len as u32);
                for code in 0..total {
                    let mut c = code;
                    for l in lambdas.iter_mut() {
                        *l = (c % 21) as u64;
                        c /= 21;
                    }
                    if lambdas.iter().all(|l| *l == 0) {
                        continue;
                    }
                    let p = dschecks::le_polynomial(n, &lambdas);
                    if dschecks::positive_root_count(&p) > 1
                        || dschecks::le_multiplicity(n, &lambdas)?.len() > 1
                    {
                        return Ok((false, format!("n = {n}, lambdas = {lambdas:?}")));
                    }
                    cases += 1;
                }
            }
        }
        Ok((true, format!("{cases} equations")))
    })
}

/// Family verdicts on the three fixed families, cross-checked by brute
/// force at 101 rational parameters.
pub fn criterion_8() -> CriterionResult {
    timed(8, "family checker", Some(5.0), || {
        let cases = [
            ("x^2 + t*y^2", true, 2u32),
            ("t*x + x^2", false, 1),
            ("x^2", true, 2),
        ];
        for (text, expect, m) in cases {
            let f = dschecks::parse_family(text)?;
            let r = dschecks::family_equimultiplicity(&f, 101)?;
            let tvar = f.nvars() - 1;
            let mut orders = Vec::new();
            for k in 0..=100 {
                let t =
                    GaussianRational::real(BigRational::new(BigInt::from(k), BigInt::from(100)));
                let ft = f.substitute_constant(tvar, &t).remove_variable(tvar);
                orders.push(ft.order_at_origin()?);
            }
            let brute = orders.iter().all(|o| *o == orders[0]);
            if r.equimultiple != expect || r.generic_m != m || brute != expect {
                return Ok((
                    false,
                    format!("{text}: verdict {}, brute force {brute}", r.equimultiple),
                ));
            }
            if !expect
                && r.exceptional_t.first().and_then(|e| e.exact.clone())
                    != Some(BigRational::zero())
            {
                return Ok((
                    false,
                    format!("{text}: exceptional parameters {:?}", r.exceptional_t),
                ));
            }
        }
        Ok((true, "3 families, 101 samples each".into()))
    })
}

fn random_scale(rng: &mut ChaCha8Rng) -> GaussianRational {
    loop {
        let re = BigRational::new(
            BigInt::from(rng.gen_range(-9i64..=9)),
            BigInt::from(rng.gen_range(1i64..=4)),
        );
        let im = BigRational::new(
            BigInt::from(rng.gen_range(-9i64..=9)),
            BigInt::from(rng.gen_range(1i64..=4)),
        );
        let l = GaussianRational::new(re, im);
        if !l.is_zero() {
            return l;
        }
    }
}

/// `f` and `f(lambda x, lambda y)` are equivalent.
pub fn criterion_9(corpus: &[(String, Poly)], seed: u64) -> CriterionResult {
    timed(9, "scaling invariance", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut checks = 0usize;
        for (name, f) in corpus {
            let x = report(f)?;
            for _ in 0..10 {
                let lambda = random_scale(&mut rng);
                let y = report(&f.scale_arguments(&lambda))?;
                if !decide(&x, &y)?.equivalent {
                    return Ok((false, format!("{name} scaled by {lambda}")));
                }
                checks += 1;
            }
        }
        Ok((true, format!("{checks} scalings")))
    })
}

/// Run every criterion in order.
pub fn run_all(corpus: &[(String, Poly)], seed: u64) -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(seed),
        criterion_3(corpus, seed),
        criterion_4(corpus),
        criterion_5(corpus),
        criterion_6(corpus),
        criterion_7(),
        criterion_8(),
        criterion_9(corpus, seed),
    ]
}
