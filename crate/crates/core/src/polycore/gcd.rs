//! Multivariate gcd by recursive subresultant pseudo-remainder sequences, and
//! the squarefree machinery built on it.

use super::{Field, Polynomial, UniPoly};

fn main_variable<C: Field>(f: &Polynomial<C>, g: &Polynomial<C>) -> Option<usize> {
    (0..f.nvars())
        .rev()
        .find(|&v| f.degree_in(v).unwrap_or(0) > 0 || g.degree_in(v).unwrap_or(0) > 0)
}

fn content<C: Field>(f: &Polynomial<C>, var: usize) -> Polynomial<C> {
    f.to_univariate(var)
        .iter()
        .filter(|c| !c.is_zero())
        .fold(Polynomial::zero(f.nvars()), |acc, c| gcd(&acc, c))
}

fn primitive_part<C: Field>(f: &Polynomial<C>, var: usize) -> Polynomial<C> {
    if f.is_zero() {
        return f.clone();
    }
    let c = content(f, var);
    f.div_exact(&c).expect("content divides")
}

fn leading_coefficient<C: Field>(f: &Polynomial<C>, var: usize) -> Polynomial<C> {
    f.to_univariate(var).pop().expect("nonzero")
}

/// `lc(b)^(deg a - deg b + 1) * a mod b` in `var`.
fn pseudo_remainder<C: Field>(a: &Polynomial<C>, b: &Polynomial<C>, var: usize) -> Polynomial<C> {
    let nv = a.nvars();
    let da = a.degree_in(var).unwrap_or(0);
    let db = b.degree_in(var).unwrap_or(0);
    let lc_b = leading_coefficient(b, var);
    let mut r = a.clone();
    let mut steps = (da + 1).saturating_sub(db);
    while !r.is_zero() && r.degree_in(var).unwrap_or(0) >= db {
        let dr = r.degree_in(var).unwrap_or(0);
        let lc_r = leading_coefficient(&r, var);
        let mut e = vec![0; nv];
        e[var] = dr - db;
        let shift = Polynomial::monomial(e, C::one());
        let t = &(&lc_r * &shift) * b;
        r = &(&lc_b * &r) - &t;
        steps -= 1;
    }
    &r * &lc_b.pow(steps)
}

/// Greatest common divisor, normalized to lexicographically-leading
/// coefficient 1. `gcd(0, 0) = 0`.
pub fn gcd<C: Field>(f: &Polynomial<C>, g: &Polynomial<C>) -> Polynomial<C> {
    if f.is_zero() {
        return g.monic();
    }
    if g.is_zero() {
        return f.monic();
    }
    let var = match main_variable(f, g) {
        Some(v) => v,
        None => return Polynomial::one(f.nvars()),
    };
    let c = gcd(&content(f, var), &content(g, var));
    let mut a = primitive_part(f, var);
    let mut b = primitive_part(g, var);
    if a.degree_in(var) < b.degree_in(var) {
        std::mem::swap(&mut a, &mut b);
    }
    // subresultant sequence
    let one = Polynomial::one(f.nvars());
    let mut lc = one.clone();
    let mut h = one.clone();
    let pp = loop {
        if b.degree_in(var).unwrap_or(0) == 0 {
            break one;
        }
        let delta = a.degree_in(var).unwrap_or(0) - b.degree_in(var).unwrap_or(0);
        let r = pseudo_remainder(&a, &b, var);
        if r.is_zero() {
            break primitive_part(&b, var);
        }
        let divisor = &lc * &h.pow(delta);
        a = b;
        b = r
            .div_exact(&divisor)
            .expect("subresultant division is exact");
        lc = leading_coefficient(&a, var);
        h = if delta == 0 {
            h
        } else {
            lc.pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant division is exact")
        };
    };
    (&c * &pp).monic()
}

fn gradient_gcd<C: Field>(f: &Polynomial<C>) -> Polynomial<C> {
    (0..f.nvars()).fold(f.clone(), |acc, v| gcd(&acc, &f.derivative(v)))
}

/// Certifies that `f` is squarefree as a polynomial in `var` over the
/// fraction field of the other variables: some integer specialization of
/// the other variables keeps the degree in `var` and is squarefree.
/// `false` means no tried point certified it.
fn specialization_squarefree<C: Field>(f: &Polynomial<C>, var: usize) -> bool {
    let coeffs = f.to_univariate(var);
    let Some(lc) = coeffs.last() else {
        return false;
    };
    for trial in 0..4i64 {
        let point: Vec<C> = (0..f.nvars())
            .map(|v| {
                let k = if v == var {
                    0
                } else {
                    (1 + 3 * trial + 2 * v as i64) * if v % 2 == 0 { 1 } else { -1 }
                };
                C::from_i64(k).expect("small integer")
            })
            .collect();
        if lc.eval(&point).is_zero() {
            continue;
        }
        let u = UniPoly::new(coeffs.iter().map(|c| c.eval(&point)).collect());
        if u.gcd(&u.derivative()).degree() == Some(0) {
            return true;
        }
    }
    false
}

/// Whether `f` has no repeated factor through the origin, i.e. the gcd of
/// `f` with all of its partial derivatives is a unit near 0.
pub fn is_reduced<C: Field>(f: &Polynomial<C>) -> bool {
    let Some(var) = main_variable(f, f) else {
        return !f.is_zero();
    };
    // f = content * pp; a certified squarefree pp shares no factor with the
    // content, so only the content can carry repeated factors
    if specialization_squarefree(f, var) {
        return is_reduced(&content(f, var));
    }
    let g = gradient_gcd(f);
    !g.constant_term().is_zero()
}

/// Squarefree levels `(P_k, k)`: `f = c * prod P_k^k` with each `P_k`
/// squarefree, pairwise coprime and nonconstant.
pub fn squarefree_levels<C: Field>(f: &Polynomial<C>) -> Vec<(Polynomial<C>, u32)> {
    // g_k = gcd(g_{k-1}, grad g_{k-1}); Q_k = g_{k-1} / g_k collects the
    // factors of multiplicity >= k.
    let mut qs = Vec::new();
    let mut g = f.clone();
    while g.total_degree().unwrap_or(0) > 0 {
        let next = gradient_gcd(&g);
        qs.push(g.div_exact(&next).expect("gcd divides"));
        g = next;
    }
    let mut out = Vec::new();
    for k in 0..qs.len() {
        let p = match qs.get(k + 1) {
            Some(q_next) => qs[k].div_exact(q_next).expect("levels nest"),
            None => qs[k].clone(),
        };
        if p.total_degree().unwrap_or(0) > 0 {
            out.push((p.monic(), k as u32 + 1));
        }
    }
    out
}
