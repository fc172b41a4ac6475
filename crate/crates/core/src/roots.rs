//! Univariate complex root finding: Aberth-Ehrlich simultaneous iteration in
//! `f64`, clustering of numerically multiple roots by overlapping inclusion
//! discs, and Newton polishing in the working precision `F`.

use num_complex::Complex;
use num_traits::Zero;

use crate::gaussian::GaussianRational;
use crate::polycore::UniPoly;
use crate::scalar::{self, Real};

/// A root together with the number of roots merged into it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootCluster<F> {
    pub value: Complex<F>,
    pub multiplicity: usize,
}

/// Default relative distance below which roots are treated as equal.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;

fn horner<F: Real>(c: &[Complex<F>], z: Complex<F>) -> (Complex<F>, Complex<F>) {
    let mut p = scalar::zero();
    let mut dp = scalar::zero();
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + *a;
    }
    (p, dp)
}

fn abs_eval(c: &[Complex<f64>], z: Complex<f64>) -> f64 {
    let r = z.norm();
    c.iter().rev().fold(0.0, |acc, a| acc * r + a.norm())
}

fn aberth(c: &[Complex<f64>]) -> Vec<Complex<f64>> {
    let n = c.len() - 1;
    let lead = c[n];
    if n == 1 {
        return vec![-c[0] / lead];
    }
    // Fujiwara-style radius for the starting circle.
    let radius = (0..n)
        .map(|k| (c[k] / lead).norm().powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-300);
    let start = radius * 0.9;
    let mut z: Vec<Complex<f64>> = (0..n)
        .map(|k| {
            Complex::from_polar(
                start,
                2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4,
            )
        })
        .collect();
    for _ in 0..800 {
        let mut moved = false;
        for i in 0..n {
            let (p, dp) = horner(c, z[i]);
            if p.is_zero() {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex<f64> = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.is_zero() {
                        Complex::zero()
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let w = ratio / (Complex::new(1.0, 0.0) - ratio * sum);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[i] -= w;
            if w.norm() > 1e-15 * z[i].norm().max(1e-300) {
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    z
}

fn to_c64_vec<F: Real>(c: &[Complex<F>]) -> Vec<Complex<f64>> {
    c.iter().map(scalar::to_c64).collect()
}

fn derivative<F: Real>(c: &[Complex<F>]) -> Vec<Complex<F>> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(k, a)| *a * Complex::new(F::from_count(k), F::zero()))
        .collect()
}

/// Newton iteration on `c` from `z0`, in precision `F`.
fn polish<F: Real>(c: &[Complex<F>], z0: Complex<F>) -> Complex<F> {
    let mut z = z0;
    let tiny = F::epsilon() * F::from_float(4.0);
    for _ in 0..40 {
        let (p, dp) = horner(c, z);
        if dp.is_zero() || p.is_zero() {
            break;
        }
        let step = p / dp;
        let limit = F::from_float(0.01) * scalar::abs(&z).max(F::one());
        if scalar::abs(&step) > limit {
            break;
        }
        z = z - step;
        if scalar::abs(&step) <= tiny * scalar::abs(&z).max(F::epsilon()) {
            break;
        }
    }
    z
}

fn trim<F: Real>(c: &[Complex<F>]) -> Vec<Complex<F>> {
    let mut v = c.to_vec();
    while v.last().is_some_and(|a| a.is_zero()) {
        v.pop();
    }
    v
}

/// Sort key making output order deterministic.
fn order<F: Real>(a: &RootCluster<F>, b: &RootCluster<F>) -> std::cmp::Ordering {
    let ka = scalar::direction_key(&[a.value]);
    let kb = scalar::direction_key(&[b.value]);
    ka.cmp(&kb).then(a.multiplicity.cmp(&b.multiplicity))
}

/// Roots of `sum c_k z^k` with numerically coincident roots merged.
///
/// Exactly zero low-order coefficients give an exact root at 0. `noise` is
/// the relative size of coefficient errors (at least the unit roundoff of
/// `F`); `rel_tol` is the minimal relative separation of distinct roots.
pub fn polynomial_roots<F: Real>(
    c: &[Complex<F>],
    noise: f64,
    rel_tol: f64,
) -> Vec<RootCluster<F>> {
    let c = trim(c);
    if c.len() <= 1 {
        return Vec::new();
    }
    let zeros = c
        .iter()
        .position(|a| !a.is_zero())
        .expect("nonzero leading");
    let c = c[zeros..].to_vec();
    let mut out = Vec::new();
    if zeros > 0 {
        out.push(RootCluster {
            value: scalar::zero(),
            multiplicity: zeros,
        });
    }
    let n = c.len() - 1;
    if n == 0 {
        return out;
    }
    let c64 = to_c64_vec(&c);
    let z = aberth(&c64);
    let noise = noise.max(F::epsilon().to_float()).max(f64::EPSILON);
    let lead = c64[n].norm();
    let radius: Vec<f64> = (0..n)
        .map(|i| {
            let (p, _) = horner(&c64, z[i]);
            let prod: f64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).norm())
                .product();
            let resid = p.norm().max(noise * abs_eval(&c64, z[i]));
            let w = if prod > 0.0 {
                n as f64 * resid / (lead * prod)
            } else {
                f64::INFINITY
            };
            w.max(rel_tol * z[i].norm().max(1.0))
        })
        .collect();
    // union-find over overlapping discs
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut j = i;
        while p[j] != r {
            let next = p[j];
            p[j] = r;
            j = next;
        }
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (z[i] - z[j]).norm() <= radius[i] + radius[j] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut label = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if label[r] == usize::MAX {
            label[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[label[r]].push(i);
    }
    let mut derivs = vec![c.clone()];
    for g in groups {
        let m = g.len();
        let mean: Complex<f64> = g.iter().map(|&i| z[i]).sum::<Complex<f64>>() / m as f64;
        while derivs.len() < m {
            let next = derivative(derivs.last().expect("nonempty"));
            derivs.push(next);
        }
        let value = polish(&derivs[m - 1], scalar::from_c64(mean));
        out.push(RootCluster {
            value,
            multiplicity: m,
        });
    }
    out.sort_by(order);
    out
}

/// Roots of an exact polynomial: exact squarefree split, then simple roots
/// of each squarefree factor, each carrying its exact multiplicity.
pub fn exact_roots<F: Real>(p: &UniPoly<GaussianRational>) -> Vec<RootCluster<F>> {
    let mut out = Vec::new();
    for (factor, k) in p.squarefree() {
        let c: Vec<Complex<F>> = factor.coeffs().iter().map(|a| a.to_complex()).collect();
        let c64 = to_c64_vec(&c);
        if c.len() == 2 {
            out.push(RootCluster {
                value: -c[0] / c[1],
                multiplicity: k,
            });
            continue;
        }
        let zeros = c.iter().take_while(|a| a.is_zero()).count();
        if zeros > 0 {
            out.push(RootCluster {
                value: scalar::zero(),
                multiplicity: k,
            });
        }
        let shifted = &c[zeros..];
        if shifted.len() <= 1 {
            continue;
        }
        for z in aberth(&c64[zeros..]) {
            let value = polish(shifted, scalar::from_c64(z));
            out.push(RootCluster {
                value,
                multiplicity: k,
            });
        }
    }
    out.sort_by(order);
    out
}
