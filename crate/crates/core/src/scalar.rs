//! Floating-point scalar abstraction used by every numerical routine.
//!
//! The symbolic side of the library is exact (Gaussian rationals); the
//! numeric side (root finding, Newton-Puiseux coefficients, sampling) is
//! generic over [`Real`], implemented for `f32`, `f64` and [`DoubleF64`].

use std::fmt::Debug;
use std::ops::{AddAssign, DivAssign, MulAssign, Neg, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

use crate::ddouble::DoubleF64;

pub trait Real:
    Copy
    + Debug
    + Default
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Num
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + FromPrimitive
{
    const NAME: &'static str;

    fn epsilon() -> Self;
    fn from_float(x: f64) -> Self;
    fn to_float(self) -> f64;
    fn sqrt(self) -> Self;

    /// Widen to double-double without loss.
    fn to_double_double(self) -> DoubleF64 {
        DoubleF64::from(self.to_float())
    }

    /// Round a double-double value to `Self`.
    fn from_double_double(x: DoubleF64) -> Self {
        Self::from_float(x.hi() + x.lo())
    }

    fn from_rational(r: &BigRational) -> Self {
        Self::from_float(rational_to_f64(r))
    }

    fn abs(self) -> Self {
        if self < Self::zero() {
            -self
        } else {
            self
        }
    }

    fn from_count(n: usize) -> Self {
        <Self as FromPrimitive>::from_u64(n as u64).expect("usize fits")
    }

    fn max(self, o: Self) -> Self {
        if o > self {
            o
        } else {
            self
        }
    }

    fn min(self, o: Self) -> Self {
        if o < self {
            o
        } else {
            self
        }
    }
}

impl Real for f64 {
    const NAME: &'static str = "f64";
    fn epsilon() -> Self {
        f64::EPSILON
    }
    fn from_float(x: f64) -> Self {
        x
    }
    fn to_float(self) -> f64 {
        self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
}

impl Real for f32 {
    const NAME: &'static str = "f32";
    fn epsilon() -> Self {
        f32::EPSILON
    }
    fn from_float(x: f64) -> Self {
        x as f32
    }
    fn to_float(self) -> f64 {
        self as f64
    }
    fn sqrt(self) -> Self {
        f32::sqrt(self)
    }
}

impl Real for DoubleF64 {
    const NAME: &'static str = "double-double";
    fn epsilon() -> Self {
        DoubleF64::from(DoubleF64::EPSILON)
    }
    fn from_float(x: f64) -> Self {
        DoubleF64::from(x)
    }
    fn to_float(self) -> f64 {
        self.hi() + self.lo()
    }
    fn sqrt(self) -> Self {
        DoubleF64::sqrt(self)
    }
    fn to_double_double(self) -> DoubleF64 {
        self
    }
    fn from_double_double(x: DoubleF64) -> Self {
        x
    }
    fn from_rational(r: &BigRational) -> Self {
        let hi = rational_to_f64(r);
        let exact_hi = BigRational::from_float(hi).unwrap_or_else(BigRational::zero);
        let lo = rational_to_f64(&(r - exact_hi));
        DoubleF64::from_parts(hi, lo)
    }
}

/// Correctly scaled conversion of a big rational to `f64` (avoids the
/// overflow of converting numerator and denominator separately).
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = nb - db - 60;
    let scaled = if shift > 0 {
        BigRational::new(r.numer().clone(), r.denom() << (shift as usize))
    } else {
        BigRational::new(r.numer() << ((-shift) as usize), r.denom().clone())
    };
    let q: BigInt = scaled.to_integer();
    let v = q.to_f64().unwrap_or(0.0);
    let v = if r.is_negative() && v > 0.0 { -v } else { v };
    v * 2f64.powi(shift as i32)
}

pub fn norm_sqr<F: Real>(z: &Complex<F>) -> F {
    z.re * z.re + z.im * z.im
}

pub fn abs<F: Real>(z: &Complex<F>) -> F {
    let a = z.re.abs();
    let b = z.im.abs();
    let (big, small) = if a > b { (a, b) } else { (b, a) };
    if big.is_zero() {
        return F::zero();
    }
    let r = small / big;
    big * (F::one() + r * r).sqrt()
}

pub fn to_c64<F: Real>(z: &Complex<F>) -> Complex<f64> {
    Complex::new(z.re.to_float(), z.im.to_float())
}

pub fn from_c64<F: Real>(z: Complex<f64>) -> Complex<F> {
    Complex::new(F::from_float(z.re), F::from_float(z.im))
}

/// Change of precision, exact when widening.
pub fn convert<F: Real, G: Real>(z: &Complex<F>) -> Complex<G> {
    Complex::new(
        G::from_double_double(z.re.to_double_double()),
        G::from_double_double(z.im.to_double_double()),
    )
}

pub fn real<F: Real>(x: f64) -> Complex<F> {
    Complex::new(F::from_float(x), F::zero())
}

/// `e^{i theta}` at `f64` accuracy.
pub fn cis<F: Real>(theta: f64) -> Complex<F> {
    Complex::new(F::from_float(theta.cos()), F::from_float(theta.sin()))
}

pub fn powu<F: Real>(z: &Complex<F>, k: u32) -> Complex<F> {
    let mut base = *z;
    let mut acc = Complex::new(F::one(), F::zero());
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base;
        }
        base = base * base;
        k >>= 1;
    }
    acc
}

/// Principal `q`-th root of `w`, refined by Newton iteration in `F`.
pub fn principal_root<F: Real>(w: &Complex<F>, q: u32) -> Complex<F> {
    if q == 1 || abs(w).is_zero() {
        return *w;
    }
    let w64 = to_c64(w);
    let mut c: Complex<F> = from_c64(w64.powf(1.0 / q as f64));
    let qf = Complex::new(F::from_count(q as usize), F::zero());
    for _ in 0..6 {
        let cq1 = powu(&c, q - 1);
        let step = (cq1 * c - *w) / (qf * cq1);
        c = c - step;
    }
    c
}

/// Normalize a direction vector: unit Euclidean norm, first nonzero
/// component real and positive.
pub fn normalize_direction<F: Real>(v: &[Complex<F>]) -> Vec<Complex<F>> {
    let n = v.iter().map(norm_sqr).fold(F::zero(), |a, b| a + b).sqrt();
    if n.is_zero() {
        return v.to_vec();
    }
    let scaled: Vec<Complex<F>> = v.iter().map(|z| Complex::new(z.re / n, z.im / n)).collect();
    let thresh = F::from_float(1e-12);
    let pivot = scaled.iter().find(|z| abs(*z) > thresh).copied();
    match pivot {
        Some(p) => {
            let a = abs(&p);
            let phase = Complex::new(p.re / a, -p.im / a);
            scaled
                .iter()
                .map(|z| {
                    let r = *z * phase;
                    if abs(&r) <= thresh {
                        Complex::new(F::zero(), F::zero())
                    } else {
                        r
                    }
                })
                .collect()
        }
        None => scaled,
    }
}

/// Hermitian inner product `<u, v> = sum conj(u_i) v_i`.
pub fn inner<F: Real>(u: &[Complex<F>], v: &[Complex<F>]) -> Complex<F> {
    u.iter()
        .zip(v)
        .fold(Complex::new(F::zero(), F::zero()), |acc, (a, b)| {
            acc + a.conj() * *b
        })
}

/// Sine of the angle between two complex lines spanned by unit vectors,
/// computed as the norm of the component of `v` orthogonal to `u`.
pub fn line_distance<F: Real>(u: &[Complex<F>], v: &[Complex<F>]) -> F {
    let c = inner(u, v);
    u.iter()
        .zip(v)
        .map(|(a, b)| norm_sqr(&(*b - *a * c)))
        .fold(F::zero(), |acc, x| acc + x)
        .sqrt()
}

/// Deterministic total order on (already normalized) directions, with
/// components quantized so that rounding noise does not flip the order.
pub fn direction_key<F: Real>(v: &[Complex<F>]) -> Vec<i64> {
    v.iter()
        .flat_map(|z| [z.re.to_float(), z.im.to_float()])
        .map(|x| (x * 1e9).round() as i64)
        .collect()
}

pub fn one<F: Real>() -> Complex<F> {
    Complex::new(F::one(), F::zero())
}

pub fn zero<F: Real>() -> Complex<F> {
    Complex::new(F::zero(), F::zero())
}

#[allow(dead_code)]
pub(crate) fn is_one<F: Real>(z: &Complex<F>) -> bool {
    z.re.is_one() && z.im.is_zero()
}
