//! Double-double floating point: an unevaluated sum `hi + lo` of two `f64`
//! with `|lo| <= ulp(hi) / 2`, giving roughly 106 bits of significand.
//!
//! Only the operations the numerical pipeline needs are provided at full
//! precision (the four field operations and `sqrt`). Everything else goes
//! through `f64`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{
    Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, RemAssign, Sub, SubAssign,
};

use num_traits::{FromPrimitive, Num, One, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DoubleF64 {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

impl DoubleF64 {
    /// 2^-104
    pub const EPSILON: f64 = 4.930380657631324e-32;

    pub const fn new(hi: f64, lo: f64) -> Self {
        DoubleF64 { hi, lo }
    }

    pub fn from_parts(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        DoubleF64 { hi, lo }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return DoubleF64::zero();
        }
        let s = self.hi.sqrt();
        let sd = DoubleF64::from(s);
        let (p, e) = two_prod(s, s);
        let resid = (self - DoubleF64::from_parts(p, e)).hi;
        sd + DoubleF64::from(resid * (0.5 / s))
    }

    pub fn trunc(self) -> Self {
        let hi = self.hi.trunc();
        if hi == self.hi {
            DoubleF64::from_parts(hi, self.lo.trunc())
        } else {
            DoubleF64::from(hi)
        }
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }
}

impl From<f64> for DoubleF64 {
    fn from(x: f64) -> Self {
        DoubleF64 { hi: x, lo: 0.0 }
    }
}

impl Add for DoubleF64 {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleF64 { hi, lo }
    }
}

impl Neg for DoubleF64 {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleF64 {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleF64 {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for DoubleF64 {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleF64 { hi, lo }
    }
}

impl Div for DoubleF64 {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let q1 = self.hi / o.hi;
        let r = self - o * DoubleF64::from(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * DoubleF64::from(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleF64 { hi, lo } + DoubleF64::from(q3)
    }
}

impl Rem for DoubleF64 {
    type Output = Self;
    fn rem(self, o: Self) -> Self {
        self - o * (self / o).trunc()
    }
}

macro_rules! assign_op {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for DoubleF64 {
            fn $m(&mut self, o: Self) {
                *self = *self $op o;
            }
        }
    };
}
assign_op!(AddAssign, add_assign, +);
assign_op!(SubAssign, sub_assign, -);
assign_op!(MulAssign, mul_assign, *);
assign_op!(DivAssign, div_assign, /);
assign_op!(RemAssign, rem_assign, %);

impl PartialOrd for DoubleF64 {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&o.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&o.lo),
            other => other,
        }
    }
}

impl Zero for DoubleF64 {
    fn zero() -> Self {
        DoubleF64 { hi: 0.0, lo: 0.0 }
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }
}

impl One for DoubleF64 {
    fn one() -> Self {
        DoubleF64 { hi: 1.0, lo: 0.0 }
    }
}

impl Num for DoubleF64 {
    type FromStrRadixErr = std::num::ParseFloatError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        // decimal only; other radices fall back to f64 parsing semantics
        let _ = radix;
        s.parse::<f64>().map(DoubleF64::from)
    }
}

impl FromPrimitive for DoubleF64 {
    fn from_i64(n: i64) -> Option<Self> {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        Some(DoubleF64::from_parts(hi, lo))
    }
    fn from_u64(n: u64) -> Option<Self> {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        Some(DoubleF64::from_parts(hi, lo))
    }
    fn from_f64(x: f64) -> Option<Self> {
        Some(DoubleF64::from(x))
    }
}

impl ToPrimitive for DoubleF64 {
    fn to_i64(&self) -> Option<i64> {
        let t = self.trunc();
        Some(t.hi as i64 + t.lo as i64)
    }
    fn to_u64(&self) -> Option<u64> {
        self.to_i64().and_then(|v| u64::try_from(v).ok())
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.hi + self.lo)
    }
}

impl fmt::Display for DoubleF64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == 0.0 {
            write!(f, "{}", self.hi)
        } else {
            write!(f, "{}{:+e}", self.hi, self.lo)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd(x: f64) -> DoubleF64 {
        DoubleF64::from(x)
    }

    #[test]
    fn third_times_three_is_one() {
        let third = dd(1.0) / dd(3.0);
        let err = (third * dd(3.0) - dd(1.0)).abs();
        assert!(err.hi() < 1e-31, "{err}");
        // more precise than any f64
        assert!((third - dd(1.0 / 3.0)).abs().hi() > 1e-18);
    }

    #[test]
    fn sqrt_two_squared() {
        let r = dd(2.0).sqrt();
        assert!((r * r - dd(2.0)).abs().hi() < 1e-31);
    }

    #[test]
    fn ordering_uses_low_word() {
        let a = DoubleF64::from_parts(1.0, 1e-20);
        let b = DoubleF64::from_parts(1.0, -1e-20);
        assert!(b < a);
        assert_eq!(a.partial_cmp(&a), Some(Ordering::Equal));
    }

    #[test]
    fn integer_round_trip() {
        let big = (1i64 << 60) + 12345;
        let x = DoubleF64::from_i64(big).unwrap();
        assert_eq!(x.to_i64(), Some(big));
    }
}
