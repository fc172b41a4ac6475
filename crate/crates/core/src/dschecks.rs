//! Degree determinations through Descartes' rule of signs, and an
//! equimultiplicity checker for one-parameter families `F(z, t)`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::polycore::UniPoly;
use crate::scalar::rational_to_f64;
use crate::{parse, Poly, Variables};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `P(t) = t^n - mu t + (-1)^{n-1} - mu`.
pub fn descartes_polynomial(n: u32, mu: u64) -> UniPoly<BigRational> {
    let mu = BigRational::from_integer(BigInt::from(mu));
    let sign = if n % 2 == 1 { rat(1) } else { rat(-1) };
    let mut c = vec![BigRational::zero(); n as usize + 1];
    c[0] = sign - &mu;
    c[1] = &c[1] - &mu;
    c[n as usize] = &c[n as usize] + rat(1);
    UniPoly::new(c)
}

/// `P(t) = t^n - sum_{i=0}^{s} lambda_i t^i`.
pub fn le_polynomial(n: u32, lambdas: &[u64]) -> UniPoly<BigRational> {
    let mut c = vec![BigRational::zero(); n as usize + 1];
    for (i, l) in lambdas.iter().enumerate() {
        c[i] = -BigRational::from_integer(BigInt::from(*l));
    }
    c[n as usize] = &c[n as usize] + rat(1);
    UniPoly::new(c)
}

/// Number of distinct positive real zeros (Sturm).
pub fn positive_root_count(p: &UniPoly<BigRational>) -> usize {
    // zero or one sign change decides the count exactly
    match sign_changes(p) {
        v @ 0..=1 => v,
        _ => p.count_positive_roots(),
    }
}

/// `p(t + a)`.
fn shifted(p: &UniPoly<BigRational>, a: &BigRational) -> UniPoly<BigRational> {
    let x_plus_a = UniPoly::new(vec![a.clone(), rat(1)]);
    p.coeffs().iter().rev().fold(UniPoly::zero(), |acc, c| {
        acc.mul(&x_plus_a).add(&UniPoly::constant(c.clone()))
    })
}

/// Sign changes in the coefficient sequence (Descartes' bound).
pub fn sign_changes(p: &UniPoly<BigRational>) -> usize {
    let signs: Vec<bool> = p
        .coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Integers `d >= 2` with `P(d - 1) = 0`.
fn integer_degrees(p: &UniPoly<BigRational>, n: u32, size: u64) -> Result<BTreeSet<u64>> {
    let lead = p.leading().expect("nonzero").clone();
    if sign_changes(p) == 1 && lead.is_positive() {
        // exactly one positive zero: find the least integer t >= 1 with P(t) >= 0
        let cauchy = p
            .coeffs()
            .iter()
            .map(|c| c.abs() / &lead)
            .fold(BigRational::zero(), |a, b| a.max(b))
            + rat(1);
        let (mut lo, mut hi) = (BigInt::from(1), cauchy.ceil().to_integer());
        while lo < hi {
            let mid: BigInt = (&lo + &hi) / 2;
            if p.eval(&BigRational::from_integer(mid.clone()))
                .is_negative()
            {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        let mut out = BTreeSet::new();
        if p.eval(&BigRational::from_integer(lo.clone())).is_zero() {
            out.insert(lo.to_u64().expect("positive") + 1);
        }
        return Ok(out);
    }
    let root = (size as f64).powf(1.0 / (n - 1) as f64).ceil() as u64;
    let bound = 1 + root + 2;
    let mut out = BTreeSet::new();
    for d in 2..=bound {
        if p.eval(&rat(d as i64 - 1)).is_zero() {
            out.insert(d);
        }
    }
    let top = rat(bound as i64 - 1);
    if positive_root_count(&shifted(p, &top)) > 0 {
        // roots beyond the search range: isolate them and test integers
        let lead = p.leading().expect("monic").abs();
        let cauchy = p
            .coeffs()
            .iter()
            .map(|c| c.abs() / &lead)
            .fold(BigRational::zero(), |a, b| a.max(b))
            + rat(1);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        for (lo, hi) in p.isolate_roots(&top, &cauchy, &half) {
            let mut k = lo.floor().to_integer();
            let end = hi.ceil().to_integer();
            while k <= end {
                let t = BigRational::from_integer(k.clone());
                if t > lo && t <= hi && p.eval(&t).is_zero() {
                    out.insert(k.to_u64().expect("positive") + 1);
                }
                k += 1;
            }
        }
    }
    if out.len() > 1 {
        return Err(Error::numerical(format!(
            "more than one admissible degree: {out:?}"
        )));
    }
    Ok(out)
}

/// Degrees `d >= 2` with `(d-1)^n - mu (d-1) + (-1)^{n-1} - mu = 0`.
pub fn descartes_multiplicity(n: u32, mu: u64) -> Result<BTreeSet<u64>> {
    if n < 2 {
        return Err(Error::invalid("n must be at least 2"));
    }
    if mu < 1 {
        return Err(Error::invalid("mu' must be at least 1"));
    }
    integer_degrees(&descartes_polynomial(n, mu), n, mu)
}

/// Degrees `d >= 2` with `(d-1)^n = sum_{i=0}^{s} lambda_i (d-1)^i`.
pub fn le_multiplicity(n: u32, lambdas: &[u64]) -> Result<BTreeSet<u64>> {
    if n < 2 {
        return Err(Error::invalid("n must be at least 2"));
    }
    if lambdas.iter().all(|l| *l == 0) {
        return Err(Error::invalid("the Lê numbers must not all vanish"));
    }
    if lambdas.len() > n as usize {
        return Err(Error::invalid("need fewer Lê numbers than n"));
    }
    let size = lambdas.iter().sum::<u64>();
    integer_degrees(&le_polynomial(n, lambdas), n, size)
}

/// A parameter value in `[0, 1]` where the order jumps.
#[derive(Clone, Debug, PartialEq)]
pub struct ExceptionalParameter {
    /// Exact value when it is a rational with small denominator.
    pub exact: Option<BigRational>,
    pub approx: f64,
    /// Order of `F(., t)` at the exact value.
    pub order: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub generic_m: u32,
    pub exceptional_t: Vec<ExceptionalParameter>,
    pub equimultiple: bool,
    /// `(t, ord_0 F(., t))` at the sampled parameters.
    pub sampled: Vec<(BigRational, u32)>,
}

/// Parse a family: the polynomial grammar with the extra variable `t`,
/// which becomes the last variable.
pub fn parse_family(text: &str) -> Result<Poly> {
    let vars = Variables::detect(text, &["t"]).with_extra("t");
    parse(text, &vars)
}

fn slice(f: &Poly, tvar: usize, t: &BigRational) -> Poly {
    let value = crate::GaussianRational::real(t.clone());
    f.substitute_constant(tvar, &value).remove_variable(tvar)
}

/// Equimultiplicity of `t -> F(., t)` over `[0, 1]`, decided from the
/// coefficients and cross-checked on `samples` equally spaced rational `t`.
pub fn family_equimultiplicity(f: &Poly, samples: usize) -> Result<FamilyReport> {
    let n = f.nvars();
    if n < 2 {
        return Err(Error::invalid("a family needs z-variables and t"));
    }
    if samples < 2 {
        return Err(Error::invalid("need at least two samples"));
    }
    if f.is_zero() {
        return Err(Error::Family("F vanishes identically".into()));
    }
    let tvar = n - 1;
    let zdeg = |e: &[u32]| e[..tvar].iter().sum::<u32>();
    let generic_m = f.terms().map(|(e, _)| zdeg(e)).min().expect("nonzero");
    // coefficient of each z-monomial of degree m, as real and imaginary parts in t
    let mut coeffs: BTreeMap<Vec<u32>, (Vec<BigRational>, Vec<BigRational>)> = BTreeMap::new();
    for (e, c) in f.terms().filter(|(e, _)| zdeg(e) == generic_m) {
        let k = e[tvar] as usize;
        let entry = coeffs.entry(e[..tvar].to_vec()).or_default();
        for v in [&mut entry.0, &mut entry.1] {
            if v.len() <= k {
                v.resize(k + 1, BigRational::zero());
            }
        }
        entry.0[k] = c.re.clone();
        entry.1[k] = c.im.clone();
    }
    let mut h = UniPoly::<BigRational>::zero();
    for (re, im) in coeffs.into_values() {
        h = h.gcd(&UniPoly::new(re)).gcd(&UniPoly::new(im));
    }
    let zero = BigRational::zero();
    let one = BigRational::one();
    let mut exceptional = Vec::new();
    let order_at = |t: &BigRational| slice(f, tvar, t).order_at_origin().ok();
    if h.degree().is_some_and(|d| d > 0) {
        if h.eval(&zero).is_zero() {
            exceptional.push(ExceptionalParameter {
                exact: Some(zero.clone()),
                approx: 0.0,
                order: order_at(&zero),
            });
        }
        let width = BigRational::new(BigInt::from(1), BigInt::from(1u64 << 40));
        for (lo, hi) in h.isolate_roots(&zero, &one, &width) {
            let exact = h.exact_root_in(&lo, &hi, 64);
            let approx = match &exact {
                Some(x) => rational_to_f64(x),
                None => rational_to_f64(&((&lo + &hi) / rat(2))),
            };
            let order = exact.as_ref().and_then(order_at);
            exceptional.push(ExceptionalParameter {
                exact,
                approx,
                order,
            });
        }
    }
    let mut sampled = Vec::with_capacity(samples);
    for k in 0..samples {
        let t = BigRational::new(BigInt::from(k), BigInt::from(samples - 1));
        let ft = slice(f, tvar, &t);
        if ft.is_zero() {
            return Err(Error::Family(format!(
                "F(., t) vanishes identically at t = {t}"
            )));
        }
        let ord = ft.order_at_origin()?;
        let jumps = !h.is_zero() && h.eval(&t).is_zero();
        let consistent = if jumps {
            ord > generic_m
        } else {
            ord == generic_m
        };
        if !consistent {
            return Err(Error::Family(format!(
                "symbolic and sampled orders disagree at t = {t}: order {ord}, generic {generic_m}"
            )));
        }
        sampled.push((t, ord));
    }
    let ends_ok = [&zero, &one].iter().all(|t| order_at(t) == Some(generic_m));
    Ok(FamilyReport {
        generic_m,
        equimultiple: exceptional.is_empty() && ends_ok,
        exceptional_t: exceptional,
        sampled,
    })
}
