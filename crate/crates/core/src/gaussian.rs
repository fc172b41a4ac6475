//! Exact Gaussian rationals `a + b i` with `a, b` in Q.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};

use crate::scalar::Real;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        GaussianRational::new(
            BigRational::from_integer(BigInt::from(n)),
            BigRational::zero(),
        )
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational::new(re, BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussianRational::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn to_complex<F: Real>(&self) -> Complex<F> {
        Complex::new(F::from_rational(&self.re), F::from_rational(&self.im))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = GaussianRational::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::new(BigRational::one(), BigRational::zero())
    }
}

impl FromPrimitive for GaussianRational {
    fn from_i64(n: i64) -> Option<Self> {
        Some(GaussianRational::from_integer(n))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(GaussianRational::real(BigRational::from_integer(
            BigInt::from(n),
        )))
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &GaussianRational) -> GaussianRational {
        let inv = o.inv().expect("division by zero Gaussian rational");
        self * &inv
    }
}

macro_rules! owned_op {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
                (&self).$m(&o)
            }
        }
    };
}
owned_op!(Add, add);
owned_op!(Sub, sub);
owned_op!(Mul, mul);
owned_op!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl AddAssign for GaussianRational {
    fn add_assign(&mut self, o: GaussianRational) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl SubAssign for GaussianRational {
    fn sub_assign(&mut self, o: GaussianRational) {
        self.re -= o.re;
        self.im -= o.im;
    }
}

impl MulAssign for GaussianRational {
    fn mul_assign(&mut self, o: GaussianRational) {
        *self = &*self * &o;
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Prints in the input grammar: `3/2`, `-1/2*i`, `(1/2 + 3*i)`.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write_rational(f, &self.re),
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "i")
                } else if (-self.im.clone()).is_one() {
                    write!(f, "-i")
                } else {
                    write_rational(f, &self.im)?;
                    write!(f, "*i")
                }
            }
            (false, false) => {
                write!(f, "(")?;
                write_rational(f, &self.re)?;
                write!(f, " {} ", if self.im.is_negative() { '-' } else { '+' })?;
                let a = self.im.abs();
                if !a.is_one() {
                    write_rational(f, &a)?;
                    write!(f, "*")?;
                }
                write!(f, "i)")
            }
        }
    }
}
