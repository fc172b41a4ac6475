//! Truncated fractional-power series in one variable `t` with complex
//! floating-point coefficients, and substitution of such series into exact
//! polynomials.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

use super::Polynomial;
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::scalar::{self, Real};

/// `sum c_k t^{k/denom}` over the stored `k`, known modulo `t^{precision}`
/// (or exact when `precision` is `None`).
#[derive(Clone, Debug, PartialEq)]
pub struct FracSeries<F> {
    denom: u32,
    terms: BTreeMap<u32, Complex<F>>,
    precision: Option<Ratio<i64>>,
}

impl<F: Real> FracSeries<F> {
    pub fn zero() -> Self {
        FracSeries {
            denom: 1,
            terms: BTreeMap::new(),
            precision: None,
        }
    }

    pub fn constant(c: Complex<F>) -> Self {
        Self::from_terms(1, [(0, c)], None)
    }

    /// `sum c t^{num/denom}`, zero coefficients dropped.
    pub fn from_terms<I: IntoIterator<Item = (u32, Complex<F>)>>(
        denom: u32,
        terms: I,
        precision: Option<Ratio<i64>>,
    ) -> Self {
        assert!(denom > 0);
        let mut map: BTreeMap<u32, Complex<F>> = BTreeMap::new();
        for (k, c) in terms {
            let slot = map.entry(k).or_insert_with(scalar::zero);
            *slot = *slot + c;
        }
        map.retain(|_, c| !c.is_zero());
        let mut s = FracSeries {
            denom,
            terms: map,
            precision,
        };
        s.truncate_to_precision();
        s
    }

    /// Exponent `t^{num/denom}` with the fraction reduced.
    pub fn exponent(&self, num: u32) -> Ratio<i64> {
        Ratio::new(num as i64, self.denom as i64)
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    pub fn precision(&self) -> Option<Ratio<i64>> {
        self.precision
    }

    pub fn terms(&self) -> impl Iterator<Item = (Ratio<i64>, Complex<F>)> + '_ {
        self.terms.iter().map(|(k, c)| (self.exponent(*k), *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `t^e` (zero when absent).
    pub fn coefficient(&self, e: Ratio<i64>) -> Complex<F> {
        let scaled = e * Ratio::from_integer(self.denom as i64);
        if !scaled.is_integer() || scaled < Ratio::zero() {
            return scalar::zero();
        }
        self.terms
            .get(&(scaled.to_integer() as u32))
            .copied()
            .unwrap_or_else(scalar::zero)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<Ratio<i64>> {
        self.terms.keys().next().map(|k| self.exponent(*k))
    }

    fn with_denom(&self, denom: u32) -> Self {
        let f = denom / self.denom;
        assert_eq!(f * self.denom, denom);
        FracSeries {
            denom,
            terms: self.terms.iter().map(|(k, c)| (k * f, *c)).collect(),
            precision: self.precision,
        }
    }

    fn truncate_to_precision(&mut self) {
        if let Some(p) = self.precision {
            let d = self.denom as i64;
            self.terms.retain(|k, _| Ratio::new(*k as i64, d) < p);
        }
    }

    fn min_precision(a: Option<Ratio<i64>>, b: Option<Ratio<i64>>) -> Option<Ratio<i64>> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    pub fn truncate(&self, precision: Ratio<i64>) -> Self {
        let mut s = self.clone();
        s.precision = Self::min_precision(s.precision, Some(precision));
        s.truncate_to_precision();
        s
    }

    pub fn add(&self, o: &Self) -> Self {
        let d = self.denom.lcm(&o.denom);
        let (a, b) = (self.with_denom(d), o.with_denom(d));
        let prec = Self::min_precision(a.precision, b.precision);
        Self::from_terms(d, a.terms.into_iter().chain(b.terms), prec)
    }

    pub fn scale(&self, c: Complex<F>) -> Self {
        Self::from_terms(
            self.denom,
            self.terms.iter().map(|(k, v)| (*k, *v * c)),
            self.precision,
        )
    }

    /// Product; an inexact factor with valuation `v` and precision `p`
    /// leaves the product known modulo `t^{p + v'}` with `v'` the other
    /// factor's valuation.
    pub fn mul(&self, o: &Self) -> Self {
        let d = self.denom.lcm(&o.denom);
        let (a, b) = (self.with_denom(d), o.with_denom(d));
        let pa = a
            .precision
            .map(|p| p + b.valuation().unwrap_or_else(Ratio::zero));
        let pb = b
            .precision
            .map(|p| p + a.valuation().unwrap_or_else(Ratio::zero));
        let prec = Self::min_precision(pa, pb);
        let mut out: BTreeMap<u32, Complex<F>> = BTreeMap::new();
        for (i, x) in &a.terms {
            for (j, y) in &b.terms {
                let slot = out.entry(i + j).or_insert_with(scalar::zero);
                *slot = *slot + *x * *y;
            }
        }
        Self::from_terms(d, out, prec)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(scalar::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Value at `t` (principal branch of `t^{1/denom}`).
    pub fn eval(&self, t: Complex<F>) -> Complex<F> {
        let root = scalar::principal_root(&t, self.denom);
        let mut acc = scalar::zero();
        let mut last = 0u32;
        let mut power = scalar::one::<F>();
        for (k, c) in &self.terms {
            power = power * scalar::powu(&root, k - last);
            last = *k;
            acc = acc + *c * power;
        }
        acc
    }
}

/// `f(s_1(t), ..., s_n(t))` through the `t^N` term, i.e. known modulo
/// `t^{N + eps}` where `eps` is half the finest exponent step of the inputs.
pub fn substitute_series<F: Real>(
    f: &Polynomial<GaussianRational>,
    s: &[FracSeries<F>],
    n: Ratio<i64>,
) -> Result<FracSeries<F>> {
    if s.len() != f.nvars() {
        return Err(Error::VariableCount {
            expected: f.nvars(),
            got: s.len(),
        });
    }
    let step = s.iter().fold(1u32, |acc, si| acc.lcm(&si.denom)) as i64;
    let n = n + Ratio::new(1, 2 * step);
    let mut powers: Vec<Vec<FracSeries<F>>> = s
        .iter()
        .map(|_| vec![FracSeries::constant(scalar::one())])
        .collect();
    let mut acc = FracSeries::zero().truncate(n);
    for (exps, c) in f.terms() {
        let mut term = FracSeries::constant(c.to_complex::<F>()).truncate(n);
        for (v, &k) in exps.iter().enumerate() {
            while powers[v].len() <= k as usize {
                let next = powers[v].last().expect("nonempty").mul(&s[v]).truncate(n);
                powers[v].push(next);
            }
            term = term.mul(&powers[v][k as usize]).truncate(n);
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::super::{parse, Variables};
    use super::*;

    fn c(x: f64) -> Complex<f64> {
        Complex::new(x, 0.0)
    }

    fn mono(e: u32) -> FracSeries<f64> {
        FracSeries::from_terms(1, [(e, c(1.0))], None)
    }

    #[test]
    fn cusp_parametrization_cancels() {
        let f = parse("y^2 - x^3", &Variables::Plane).unwrap();
        let r = substitute_series(&f, &[mono(2), mono(3)], Ratio::from_integer(8)).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn projection() {
        let f = parse("y", &Variables::Plane).unwrap();
        let r = substitute_series(&f, &[mono(1), mono(2)], Ratio::from_integer(4)).unwrap();
        assert_eq!(
            r.terms().collect::<Vec<_>>(),
            vec![(Ratio::from_integer(2), c(1.0))]
        );
    }

    #[test]
    fn node_branch_vanishes_to_order_three() {
        let f = parse("y^2 - x^2 - x^3", &Variables::Plane).unwrap();
        let y = FracSeries::from_terms(1, [(1, c(1.0)), (2, c(0.5))], Some(Ratio::from_integer(3)));
        let r = substitute_series(&f, &[mono(1), y], Ratio::from_integer(3)).unwrap();
        assert!(r.terms().all(|(_, v)| v.norm() < 1e-15));
        assert!(r.precision().unwrap() >= Ratio::from_integer(3));
    }

    #[test]
    fn fractional_exponents_and_eval() {
        let half = FracSeries::<f64>::from_terms(2, [(3, c(1.0))], None);
        assert_eq!(half.valuation(), Some(Ratio::new(3, 2)));
        let sq = half.mul(&half);
        assert_eq!(sq.valuation(), Some(Ratio::from_integer(3)));
        let v = half.eval(c(4.0));
        assert!((v - c(8.0)).norm() < 1e-12);
    }

    #[test]
    fn variable_count_checked() {
        let f = parse("y", &Variables::Plane).unwrap();
        assert!(substitute_series::<f64>(&f, &[mono(1)], Ratio::from_integer(2)).is_err());
    }
}
