//! Dense univariate polynomials over a field, with squarefree decomposition
//! and (over Q) Sturm sequences for certified real-root counting.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::Field;

/// Coefficients in increasing degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<C> {
    coeffs: Vec<C>,
}

impl<C: Field> UniPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        UniPoly::new(vec![c])
    }

    /// `t^k`
    pub fn monomial(k: usize, c: C) -> Self {
        let mut v = vec![C::zero(); k + 1];
        v[k] = c;
        UniPoly::new(v)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    /// Lowest power of `t` with nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * C::from_usize(k).expect("small integer"))
                .collect(),
        )
    }

    pub fn scale(&self, c: &C) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => self.scale(&(C::one() / lc.clone())),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|k| {
                    let a = self.coeffs.get(k).cloned().unwrap_or_else(C::zero);
                    let b = o.coeffs.get(k).cloned().unwrap_or_else(C::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading().expect("nonzero").clone();
        let mut rem = self.coeffs.clone();
        let nq = self.coeffs.len().saturating_sub(dd);
        let mut q = vec![C::zero(); nq];
        for k in (0..nq).rev() {
            let c = rem[k + dd].clone() / lc.clone();
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].clone() - c.clone() * b.clone();
                }
            }
            q[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(q), UniPoly::new(rem))
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's algorithm: `(P_k, k)` with `self = lc * prod P_k^k`, each `P_k`
    /// monic, squarefree, pairwise coprime, nonconstant.
    pub fn squarefree(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = self.derivative();
        let a0 = self.gcd(&d);
        let mut b = self.divrem(&a0).0;
        let mut c = d.divrem(&a0).0;
        let mut dd = c.sub(&b.derivative());
        let mut k = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&dd);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), k));
            }
            b = b.divrem(&a).0;
            c = dd.divrem(&a).0;
            dd = c.sub(&b.derivative());
            k += 1;
        }
        out
    }
}

impl UniPoly<BigRational> {
    /// Sign of the value at `x`.
    fn sign_at(&self, x: &BigRational) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    fn sign_at_pos_infinity(&self) -> i32 {
        match self.leading() {
            None => 0,
            Some(c) if c.is_positive() => 1,
            Some(_) => -1,
        }
    }

    /// Standard Sturm chain `p, p', -rem(p, p'), ...` of the squarefree part.
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let g = self.gcd(&self.derivative());
        let p = self.divrem(&g).0;
        let mut seq = vec![p.clone(), p.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let (_, r) = seq[n - 2].divrem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.neg());
        }
        seq
    }

    fn variations(signs: impl Iterator<Item = i32>) -> usize {
        let nonzero: Vec<i32> = signs.filter(|s| *s != 0).collect();
        nonzero.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots_between(&self, a: &BigRational, b: &BigRational) -> usize {
        let seq = self.sturm_sequence();
        let va = Self::variations(seq.iter().map(|p| p.sign_at(a)));
        let vb = Self::variations(seq.iter().map(|p| p.sign_at(b)));
        va.saturating_sub(vb)
    }

    /// Number of distinct real roots in `(a, +inf)`.
    pub fn count_roots_above(&self, a: &BigRational) -> usize {
        let seq = self.sturm_sequence();
        let va = Self::variations(seq.iter().map(|p| p.sign_at(a)));
        let vinf = Self::variations(seq.iter().map(|p| p.sign_at_pos_infinity()));
        va.saturating_sub(vinf)
    }

    /// Number of distinct positive real roots.
    pub fn count_positive_roots(&self) -> usize {
        self.count_roots_above(&BigRational::zero())
    }

    /// Disjoint intervals `(lo, hi]`, each containing exactly one distinct
    /// real root in `(a, b]`, bisected until narrower than `width`.
    pub fn isolate_roots(
        &self,
        a: &BigRational,
        b: &BigRational,
        width: &BigRational,
    ) -> Vec<(BigRational, BigRational)> {
        let mut out = Vec::new();
        let mut stack = vec![(a.clone(), b.clone())];
        let two = BigRational::from_integer(BigInt::from(2));
        while let Some((lo, hi)) = stack.pop() {
            let n = self.count_roots_between(&lo, &hi);
            if n == 0 {
                continue;
            }
            if n == 1 && &(&hi - &lo) <= width {
                out.push((lo, hi));
                continue;
            }
            let mid = (&lo + &hi) / &two;
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }

    /// Rational root with denominator at most `max_den` inside `(lo, hi]`
    /// whose value is exactly zero, if one exists.
    pub fn exact_root_in(
        &self,
        lo: &BigRational,
        hi: &BigRational,
        max_den: u32,
    ) -> Option<BigRational> {
        if self.sign_at(hi) == 0 {
            return Some(hi.clone());
        }
        for den in 1..=max_den {
            let d = BigInt::from(den);
            let start = (lo * BigRational::from_integer(d.clone()))
                .floor()
                .to_integer();
            let end = (hi * BigRational::from_integer(d.clone()))
                .ceil()
                .to_integer();
            let mut k = start;
            while k <= end {
                let x = BigRational::new(k.clone(), d.clone());
                if &x > lo && &x <= hi && self.sign_at(&x) == 0 {
                    return Some(x);
                }
                k += 1;
            }
        }
        None
    }
}

impl<C: Field> UniPoly<C> {
    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}
