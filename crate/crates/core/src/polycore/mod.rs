//! Exact multivariate polynomials: arithmetic, parsing/printing,
//! homogeneous decomposition, order and initial form at the origin.
//!
//! A [`Polynomial`] is a sparse map from dense exponent vectors to nonzero
//! coefficients. The coefficient type is generic; germs are read as
//! `Polynomial<GaussianRational>` (see [`crate::Poly`]).

mod gcd;
mod parse;
mod print;
pub mod series;
pub mod univariate;

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{FromPrimitive, One, Zero};

use crate::error::{Error, Result};

pub use gcd::{gcd, is_reduced, squarefree_levels};
pub use parse::parse;
pub use series::{substitute_series, FracSeries};
pub use univariate::UniPoly;

/// Ring operations required of polynomial coefficients.
pub trait Coefficient:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + FromPrimitive
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Coefficient for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + FromPrimitive
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Coefficients forming a field (exact division by nonzero elements).
pub trait Field: Coefficient + Div<Output = Self> {}

impl<T> Field for T where T: Coefficient + Div<Output = T> {}

pub type Exponents = Vec<u32>;

/// Variable naming convention used when parsing and printing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Variables {
    /// `x, y`
    Plane,
    /// `z1, ..., zn`
    Indexed(usize),
    Named(Vec<String>),
}

impl Variables {
    pub fn for_nvars(n: usize) -> Self {
        if n == 2 {
            Variables::Plane
        } else {
            Variables::Indexed(n)
        }
    }

    pub fn names(&self) -> Vec<String> {
        match self {
            Variables::Plane => vec!["x".into(), "y".into()],
            Variables::Indexed(n) => (1..=*n).map(|i| format!("z{i}")).collect(),
            Variables::Named(v) => v.clone(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Variables::Plane => 2,
            Variables::Indexed(n) => *n,
            Variables::Named(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Same convention with an extra trailing variable (e.g. a family
    /// parameter `t`).
    pub fn with_extra(&self, name: &str) -> Variables {
        let mut v = self.names();
        v.push(name.to_string());
        Variables::Named(v)
    }

    /// Infer the convention from the identifiers occurring in `text`:
    /// any `z<k>` selects `z1..zN` with N the largest index, otherwise `x, y`.
    /// Identifiers listed in `reserved` (and the imaginary unit) are ignored.
    pub fn detect(text: &str, reserved: &[&str]) -> Variables {
        let mut max_z = 0usize;
        let mut chars = text.char_indices().peekable();
        while let Some((start, ch)) = chars.next() {
            if ch.is_ascii_alphabetic() {
                let mut end = start + ch.len_utf8();
                while let Some(&(i, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() {
                        end = i + c.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                let ident = &text[start..end];
                if reserved.contains(&ident) || ident == "i" {
                    continue;
                }
                if let Some(idx) = ident
                    .strip_prefix('z')
                    .and_then(|d| d.parse::<usize>().ok())
                {
                    max_z = max_z.max(idx);
                }
            }
        }
        if max_z > 0 {
            Variables::Indexed(max_z.max(2))
        } else {
            Variables::Plane
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<C> {
    nvars: usize,
    terms: BTreeMap<Exponents, C>,
}

/// `f = f_m + f_{m+1} + ...` with each part homogeneous and nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousDecomposition<C> {
    pub parts: Vec<(u32, Polynomial<C>)>,
}

impl<C: Coefficient> HomogeneousDecomposition<C> {
    pub fn sum(&self, nvars: usize) -> Polynomial<C> {
        self.parts
            .iter()
            .fold(Polynomial::zero(nvars), |acc, (_, p)| &acc + p)
    }
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    /// The coordinate function `z_index` (0-based).
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::monomial(e, C::one())
    }

    pub fn monomial(exps: Exponents, c: C) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Polynomial { nvars, terms }
    }

    /// Builds a polynomial, summing repeated exponent vectors.
    pub fn from_terms<I: IntoIterator<Item = (Exponents, C)>>(nvars: usize, terms: I) -> Self {
        let mut map: BTreeMap<Exponents, C> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            let slot = map.entry(e).or_insert_with(C::zero);
            *slot = slot.clone() + c;
        }
        map.retain(|_, c| !c.is_zero());
        Polynomial { nvars, terms: map }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Option<&C> {
        self.terms.get(exps)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> C {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// Largest exponent vector in lexicographic order, with its coefficient.
    pub fn leading_term(&self) -> Option<(&Exponents, &C)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Smallest exponent of `var` over all terms.
    pub fn var_content(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).min().unwrap_or(0)
    }

    /// Exact division by `z_var^k`; panics if some term has a smaller power.
    pub fn div_var_power(&self, var: usize, k: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e[var] = e[var]
                    .checked_sub(k)
                    .expect("not divisible by variable power");
                (e, c.clone())
            })
            .collect();
        Polynomial {
            nvars: self.nvars,
            terms,
        }
    }

    /// `m = min total degree`, the order of `f` at the origin.
    pub fn order_at_origin(&self) -> Result<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .min()
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.iter().sum::<u32>() == d)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Polynomial {
            nvars: self.nvars,
            terms,
        }
    }

    /// The lowest-degree nonzero homogeneous part `in(f) = f_m`.
    pub fn initial_form(&self) -> Result<Self> {
        let m = self.order_at_origin()?;
        Ok(self.homogeneous_part(m))
    }

    pub fn homogeneous_decomposition(&self) -> HomogeneousDecomposition<C> {
        let mut parts: BTreeMap<u32, Polynomial<C>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = e.iter().sum();
            parts
                .entry(d)
                .or_insert_with(|| Polynomial::zero(self.nvars))
                .terms
                .insert(e.clone(), c.clone());
        }
        HomogeneousDecomposition {
            parts: parts.into_iter().collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, a)| (e.clone(), a.clone() * c.clone()))
            .filter(|(_, a)| !a.is_zero())
            .collect();
        Polynomial {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let terms = self.terms.iter().filter(|(e, _)| e[var] > 0).map(|(e, c)| {
            let mut e2 = e.clone();
            let k = e2[var];
            e2[var] -= 1;
            (e2, c.clone() * C::from_u32(k).expect("small integer"))
        });
        Polynomial::from_terms(self.nvars, terms)
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars);
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e.iter()) {
                for _ in 0..k {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn map_coefficients<D: Coefficient, G: Fn(&C) -> D>(&self, g: G) -> Polynomial<D> {
        Polynomial::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, c)| (e.clone(), g(c))),
        )
    }

    /// `f(lambda z)`: every term of degree d is scaled by `lambda^d`.
    pub fn scale_arguments(&self, lambda: &C) -> Self {
        let terms = self.terms.iter().map(|(e, c)| {
            let d: u32 = e.iter().sum();
            let mut s = c.clone();
            for _ in 0..d {
                s = s * lambda.clone();
            }
            (e.clone(), s)
        });
        Polynomial::from_terms(self.nvars, terms)
    }

    /// Substitute the constant `value` for `var`, keeping the variable slot
    /// (its exponent becomes zero everywhere).
    pub fn substitute_constant(&self, var: usize, value: &C) -> Self {
        let terms = self.terms.iter().map(|(e, c)| {
            let mut e2 = e.clone();
            let k = e2[var];
            e2[var] = 0;
            let mut s = c.clone();
            for _ in 0..k {
                s = s * value.clone();
            }
            (e2, s)
        });
        Polynomial::from_terms(self.nvars, terms)
    }

    /// Drop the (unused) variable `var`, shrinking the exponent vectors.
    pub fn remove_variable(&self, var: usize) -> Self {
        let terms = self.terms.iter().map(|(e, c)| {
            assert_eq!(e[var], 0, "variable still in use");
            let mut e2 = e.clone();
            e2.remove(var);
            (e2, c.clone())
        });
        Polynomial::from_terms(self.nvars - 1, terms)
    }

    /// View as a polynomial in `var` whose coefficients are polynomials in
    /// the remaining variables (same `nvars`, `var` exponent zero).
    pub fn to_univariate(&self, var: usize) -> Vec<Polynomial<C>> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Polynomial::zero(self.nvars); if self.is_zero() { 0 } else { deg + 1 }];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[var] as usize;
            e2[var] = 0;
            out[k].terms.insert(e2, c.clone());
        }
        out
    }

    pub fn from_univariate(nvars: usize, var: usize, coeffs: &[Polynomial<C>]) -> Self {
        let terms = coeffs.iter().enumerate().flat_map(|(k, p)| {
            p.terms.iter().map(move |(e, c)| {
                let mut e2 = e.clone();
                e2[var] += k as u32;
                (e2, c.clone())
            })
        });
        Polynomial::from_terms(nvars, terms)
    }
}

impl<C: Field> Polynomial<C> {
    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Polynomial<C>) -> Option<Polynomial<C>> {
        let (lt_d, lc_d) = d.leading_term()?;
        let (lt_d, lc_d) = (lt_d.clone(), lc_d.clone());
        let mut rem = self.clone();
        let mut quotient = Polynomial::zero(self.nvars);
        while let Some((lt_r, lc_r)) = rem.leading_term() {
            if lt_r.iter().zip(&lt_d).any(|(a, b)| a < b) {
                return None;
            }
            let e: Exponents = lt_r.iter().zip(&lt_d).map(|(a, b)| a - b).collect();
            let c = lc_r.clone() / lc_d.clone();
            let t = Polynomial::monomial(e, c);
            rem = &rem - &(&t * d);
            quotient = &quotient + &t;
        }
        Some(quotient)
    }

    /// Scale so that the lexicographically leading coefficient is 1.
    pub fn monic(&self) -> Polynomial<C> {
        match self.leading_term() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = C::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }
}

impl<'a, C: Coefficient> Add<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, o: &Polynomial<C>) -> Polynomial<C> {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            match terms.get_mut(e) {
                Some(slot) => {
                    let s = slot.clone() + c.clone();
                    if s.is_zero() {
                        terms.remove(e);
                    } else {
                        *slot = s;
                    }
                }
                None => {
                    terms.insert(e.clone(), c.clone());
                }
            }
        }
        Polynomial {
            nvars: self.nvars,
            terms,
        }
    }
}

impl<C: Coefficient> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), -c.clone()))
            .collect();
        Polynomial {
            nvars: self.nvars,
            terms,
        }
    }
}

impl<'a, C: Coefficient> Sub<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, o: &Polynomial<C>) -> Polynomial<C> {
        self + &(-o)
    }
}

impl<'a, C: Coefficient> Mul<&'a Polynomial<C>> for &'a Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, o: &Polynomial<C>) -> Polynomial<C> {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut terms: BTreeMap<Exponents, C> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let p = ca.clone() * cb.clone();
                let slot = terms.entry(e).or_insert_with(C::zero);
                *slot = slot.clone() + p;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial {
            nvars: self.nvars,
            terms,
        }
    }
}

macro_rules! owned_poly_op {
    ($tr:ident, $m:ident) => {
        impl<C: Coefficient> $tr for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $m(self, o: Polynomial<C>) -> Polynomial<C> {
                (&self).$m(&o)
            }
        }
    };
}
owned_poly_op!(Add, add);
owned_poly_op!(Sub, sub);
owned_poly_op!(Mul, mul);

impl<C: Coefficient> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}
