//! Explicit branch parametrizations `t -> (z_1(t), ..., z_n(t))` by
//! truncated power series with integer exponents, plus the series algebra
//! (roots, reversion, composition) behind aligned normal forms.

use num_complex::Complex;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::polycore::{FracSeries, Polynomial};
use crate::scalar::{self, Real};

/// Sparse series `sum c_k t^k` with strictly increasing exponents.
pub type SparseSeries<F> = Vec<(u32, Complex<F>)>;

#[derive(Clone, Debug, PartialEq)]
pub struct Parametrization<F> {
    coords: Vec<SparseSeries<F>>,
    /// Coordinates are exact polynomials in `t` when `None`; otherwise they
    /// are known modulo `t^{precision}`.
    precision: Option<u32>,
}

fn clean<F: Real>(s: &[(u32, Complex<F>)]) -> SparseSeries<F> {
    let mut v: Vec<(u32, Complex<F>)> = Vec::new();
    let mut sorted = s.to_vec();
    sorted.sort_by_key(|(k, _)| *k);
    for (k, c) in sorted {
        match v.last_mut() {
            Some((k0, c0)) if *k0 == k => *c0 = *c0 + c,
            _ => v.push((k, c)),
        }
    }
    v.retain(|(_, c)| !c.is_zero());
    v
}

impl<F: Real> Parametrization<F> {
    pub fn new(coords: Vec<SparseSeries<F>>, precision: Option<u32>) -> Self {
        let coords = coords.iter().map(|c| clean(c)).collect();
        Parametrization { coords, precision }
    }

    pub fn nvars(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[SparseSeries<F>] {
        &self.coords
    }

    pub fn precision(&self) -> Option<u32> {
        self.precision
    }

    /// Minimal vanishing order over all coordinates (`None` for the zero map).
    pub fn order(&self) -> Option<u32> {
        self.coords
            .iter()
            .filter_map(|c| c.first().map(|(k, _)| *k))
            .min()
    }

    /// Unit vector of `t^order` coefficients, normalized with a real
    /// positive first nonzero entry: the tangent line of the branch.
    pub fn tangent(&self) -> Option<Vec<Complex<F>>> {
        let m = self.order()?;
        let v: Vec<Complex<F>> = self
            .coords
            .iter()
            .map(|c| {
                c.iter()
                    .find(|(k, _)| *k == m)
                    .map(|(_, a)| *a)
                    .unwrap_or_else(scalar::zero)
            })
            .collect();
        Some(scalar::normalize_direction(&v))
    }

    pub fn eval(&self, t: Complex<F>) -> Vec<Complex<F>> {
        self.coords.iter().map(|c| eval_sparse(c, t)).collect()
    }

    /// Derivative in `t`.
    pub fn eval_derivative(&self, t: Complex<F>) -> Vec<Complex<F>> {
        self.coords
            .iter()
            .map(|c| {
                c.iter()
                    .filter(|(k, _)| *k > 0)
                    .fold(scalar::zero(), |acc, (k, a)| {
                        acc + *a
                            * Complex::new(F::from_count(*k as usize), F::zero())
                            * scalar::powu(&t, k - 1)
                    })
            })
            .collect()
    }

    /// gcd of every exponent occurring in the coordinates.
    pub fn exponent_gcd(&self) -> u32 {
        self.coords
            .iter()
            .flatten()
            .fold(0u32, |g, (k, _)| g.gcd(k))
    }

    /// Reparametrize by `t -> t^{1/g}` when all exponents share the factor
    /// `g`, so the map is generically injective.
    pub fn primitive(&self) -> Self {
        let g = self.exponent_gcd();
        if g <= 1 {
            return self.clone();
        }
        Parametrization {
            coords: self
                .coords
                .iter()
                .map(|c| c.iter().map(|(k, a)| (k / g, *a)).collect())
                .collect(),
            precision: self.precision.map(|p| p.div_ceil(g)),
        }
    }

    pub fn map_scalar<G: Real>(&self) -> Parametrization<G> {
        Parametrization {
            coords: self
                .coords
                .iter()
                .map(|c| c.iter().map(|(k, a)| (*k, scalar::convert(a))).collect())
                .collect(),
            precision: self.precision,
        }
    }

    /// Coordinates as fractional series (denominator 1).
    pub fn as_series(&self) -> Vec<FracSeries<F>> {
        self.coords
            .iter()
            .map(|c| {
                FracSeries::from_terms(
                    1,
                    c.iter().copied(),
                    self.precision.map(|p| Ratio::from_integer(p as i64)),
                )
            })
            .collect()
    }

    /// Apply a linear change of coordinates `w = A z` (rows of `a`).
    pub fn transform(&self, a: &[Vec<Complex<F>>]) -> Self {
        let coords = a
            .iter()
            .map(|row| {
                let mut acc: SparseSeries<F> = Vec::new();
                for (coef, c) in row.iter().zip(&self.coords) {
                    acc.extend(c.iter().map(|(k, x)| (*k, *coef * *x)));
                }
                clean(&acc)
            })
            .collect();
        Parametrization {
            coords,
            precision: self.precision,
        }
    }

    /// `f(psi(t))` evaluated directly.
    pub fn residual(&self, f: &Polynomial<GaussianRational>, t: Complex<F>) -> Complex<F> {
        let z = self.eval(t);
        eval_poly(f, &z)
    }
}

pub fn eval_sparse<F: Real>(c: &[(u32, Complex<F>)], t: Complex<F>) -> Complex<F> {
    let mut acc = scalar::zero();
    let mut last = 0u32;
    let mut power = scalar::one::<F>();
    for (k, a) in c {
        power = power * scalar::powu(&t, k - last);
        last = *k;
        acc = acc + *a * power;
    }
    acc
}

/// Value of an exact polynomial at a complex point, in precision `F`.
pub fn eval_poly<F: Real>(f: &Polynomial<GaussianRational>, z: &[Complex<F>]) -> Complex<F> {
    f.terms().fold(scalar::zero(), |acc, (e, c)| {
        let mono = e
            .iter()
            .zip(z)
            .fold(scalar::one::<F>(), |m, (k, x)| m * scalar::powu(x, *k));
        acc + c.to_complex::<F>() * mono
    })
}

/// Sum of the absolute values of the terms of `f` at `z` (scale for
/// rounding-error estimates).
pub fn eval_poly_abs<F: Real>(f: &Polynomial<GaussianRational>, z: &[Complex<F>]) -> F {
    let az: Vec<F> = z.iter().map(scalar::abs).collect();
    f.terms().fold(F::zero(), |acc, (e, c)| {
        let mono = e.iter().zip(&az).fold(F::one(), |m, (k, x)| {
            let mut p = m;
            for _ in 0..*k {
                p *= *x;
            }
            p
        });
        acc + scalar::abs(&c.to_complex::<F>()) * mono
    })
}

/// Dense truncated power series `sum_{k < len} c_k s^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense<F> {
    pub c: Vec<Complex<F>>,
}

impl<F: Real> Dense<F> {
    pub fn from_sparse(s: &[(u32, Complex<F>)], len: usize) -> Self {
        let mut c = vec![scalar::zero(); len];
        for (k, a) in s {
            if (*k as usize) < len {
                c[*k as usize] = *a;
            }
        }
        Dense { c }
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.len().min(o.len());
        let mut out = vec![scalar::zero(); n];
        for (i, a) in self.c.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(n - i) {
                out[i + j] = out[i + j] + *a * *b;
            }
        }
        Dense { c: out }
    }

    /// `(1 + h)^alpha` for `h(0) = 0`, by the recurrence from
    /// `(1 + h) P' = alpha h' P`.
    pub fn one_plus_pow(h: &Self, alpha: f64) -> Self {
        let n = h.len();
        let mut p = vec![scalar::zero::<F>(); n];
        if n == 0 {
            return Dense { c: p };
        }
        p[0] = scalar::one();
        let al = F::from_float(alpha);
        for k in 1..n {
            let mut acc = scalar::zero::<F>();
            for j in 1..=k {
                let coef = al * F::from_count(j) - F::from_count(k - j);
                acc = acc + h.c[j] * p[k - j] * Complex::new(coef, F::zero());
            }
            p[k] = acc / Complex::new(F::from_count(k), F::zero());
        }
        Dense { c: p }
    }

    /// Compositional inverse of `s = t + a_2 t^2 + ...` by Newton iteration
    /// on truncated series.
    pub fn reversion(&self) -> Self {
        let n = self.len();
        // t(s) with t(s(t)) = t: fixed point t = s - (a_2 t^2 + ...)
        let mut t = Dense {
            c: vec![scalar::zero(); n],
        };
        if n > 1 {
            t.c[1] = scalar::one();
        }
        let mut tail = self.clone();
        if n > 1 {
            tail.c[1] = scalar::zero();
        }
        for _ in 0..n {
            let comp = tail.compose(&t);
            let mut next = vec![scalar::zero(); n];
            if n > 1 {
                next[1] = scalar::one();
            }
            for (x, c) in next.iter_mut().zip(&comp.c) {
                *x = *x - *c;
            }
            t = Dense { c: next };
        }
        t
    }

    /// `self(g(s))` for `g(0) = 0`.
    pub fn compose(&self, g: &Self) -> Self {
        let n = self.len().min(g.len());
        let mut out = vec![scalar::zero(); n];
        let mut power = Dense {
            c: vec![scalar::zero(); n],
        };
        if n > 0 {
            power.c[0] = scalar::one();
        }
        let g = Dense {
            c: g.c[..n].to_vec(),
        };
        for k in 0..n {
            let a = self.c[k];
            if !a.is_zero() {
                for (o, p) in out.iter_mut().zip(&power.c) {
                    *o = *o + a * *p;
                }
            }
            power = power.mul(&g);
        }
        Dense { c: out }
    }

    pub fn eval(&self, s: Complex<F>) -> Complex<F> {
        self.c
            .iter()
            .rev()
            .fold(scalar::zero(), |acc, a| acc * s + *a)
    }
}

/// Aligned normal form of a branch: unitary `u` with the tangent as the
/// first axis, and `psi(u^H z) = (s^m, phi_2(s), ..., phi_n(s))` with every
/// `ord phi_i > m`.
#[derive(Clone, Debug)]
pub struct NormalForm<F> {
    pub multiplicity: u32,
    /// Rows of the unitary map `z -> w` (first row is the conjugate tangent).
    pub align: Vec<Vec<Complex<F>>>,
    /// `phi_2..phi_n` as dense series in `s`.
    pub rest: Vec<Dense<F>>,
    /// Number of trustworthy coefficients.
    pub len: usize,
}

/// Unitary matrix (rows) whose first row is `conj(v)`, completed by
/// Gram-Schmidt on the standard basis.
pub fn unitary_with_first<F: Real>(v: &[Complex<F>]) -> Vec<Vec<Complex<F>>> {
    let n = v.len();
    let mut basis: Vec<Vec<Complex<F>>> = vec![v.to_vec()];
    for k in 0..n {
        if basis.len() == n {
            break;
        }
        let mut e: Vec<Complex<F>> = vec![scalar::zero(); n];
        e[k] = scalar::one();
        for b in &basis {
            let proj = scalar::inner(b, &e);
            for (x, y) in e.iter_mut().zip(b) {
                *x = *x - proj * *y;
            }
        }
        let norm = scalar::inner(&e, &e).re.sqrt();
        if norm.to_float() > 1e-6 {
            for x in e.iter_mut() {
                *x = *x / Complex::new(norm, F::zero());
            }
            basis.push(e);
        }
    }
    basis
        .iter()
        .map(|b| b.iter().map(|x| x.conj()).collect())
        .collect()
}

impl<F: Real> NormalForm<F> {
    /// Normal form with series known through `s^{len-1}`.
    pub fn of(p: &Parametrization<F>, len: usize) -> Result<Self> {
        let m = p
            .order()
            .ok_or_else(|| Error::invalid("zero parametrization"))?;
        let tangent = p.tangent().expect("nonzero");
        let align = unitary_with_first(&tangent);
        let w = p.transform(&align);
        let total = len + m as usize + 1;
        let w1 = Dense::from_sparse(&w.coords()[0], total);
        let lead = w1.c[m as usize];
        if scalar::abs(&lead).is_zero() {
            return Err(Error::numerical(
                "aligned first coordinate lost its leading term",
            ));
        }
        // w1 = lead t^m (1 + h(t)); s = lead^{1/m} t (1 + h)^{1/m}
        let hlen = total - m as usize;
        let h = Dense {
            c: (0..hlen)
                .map(|k| {
                    if k == 0 {
                        scalar::zero()
                    } else {
                        w1.c[k + m as usize] / lead
                    }
                })
                .collect(),
        };
        let root = Dense::one_plus_pow(&h, 1.0 / m as f64);
        let a = scalar::principal_root(&lead, m);
        let mut s_of_t = vec![scalar::zero(); hlen];
        for (x, c) in s_of_t.iter_mut().skip(1).zip(&root.c) {
            *x = *c * a;
        }
        // normalize s = a t (1 + ...) to u = t + ..., invert, then t(s) = inv(s / a)
        let unit = Dense {
            c: s_of_t.iter().map(|x| *x / a).collect(),
        };
        let inv = unit.reversion();
        let scale_s = Dense {
            c: (0..hlen)
                .map(|k| {
                    if k == 1 {
                        scalar::one::<F>() / a
                    } else {
                        scalar::zero()
                    }
                })
                .collect(),
        };
        let t_of_s = inv.compose(&scale_s);
        let rest = w.coords()[1..]
            .iter()
            .map(|c| Dense::from_sparse(c, hlen).compose(&t_of_s))
            .collect();
        let trusted = match p.precision() {
            Some(prec) => (prec as usize).min(hlen),
            None => hlen,
        };
        Ok(NormalForm {
            multiplicity: m,
            align,
            rest,
            len: trusted,
        })
    }

    /// Point with aligned coordinates `(s^m, phi(s))`, mapped back to `z`.
    pub fn point(&self, s: Complex<F>) -> Vec<Complex<F>> {
        let mut w = vec![scalar::powu(&s, self.multiplicity)];
        w.extend(self.rest.iter().map(|d| d.eval(s)));
        // z = U^H w; rows of `align` are U
        let n = w.len();
        (0..n)
            .map(|j| {
                (0..n).fold(scalar::zero(), |acc, i| {
                    acc + self.align[i][j].conj() * w[i]
                })
            })
            .collect()
    }

    /// Aligned coordinates of `z`.
    pub fn aligned(&self, z: &[Complex<F>]) -> Vec<Complex<F>> {
        self.align
            .iter()
            .map(|row| {
                row.iter()
                    .zip(z)
                    .fold(scalar::zero(), |acc, (a, x)| acc + *a * *x)
            })
            .collect()
    }
}
