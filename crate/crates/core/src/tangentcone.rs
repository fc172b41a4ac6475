//! Tangent cones `C(V(f), 0) = V(in(f))` and relative multiplicities `k_X`.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::polycore::{squarefree_levels, UniPoly};
use crate::puiseux::Branch;
use crate::roots;
use crate::scalar::{self, Real};
use crate::Poly;

/// Default angular tolerance when matching lines.
pub const LINE_TOL: f64 = 1e-6;

/// A complex line through the origin with the exponent of its linear form
/// in the initial form.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeLine<F> {
    /// Unit direction, first nonzero component real and positive.
    pub direction: Vec<Complex<F>>,
    pub exponent: u32,
}

/// Cone of a curve germ: its lines with the relative multiplicities `k_X`.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentCone<F> {
    pub lines: Vec<ConeLine<F>>,
    /// `k_X(L)` for each entry of `lines`.
    pub relative_mult: Vec<u32>,
}

impl<F: Real> TangentCone<F> {
    pub fn total(&self) -> u32 {
        self.relative_mult.iter().sum()
    }

    /// `k_X` of the line closest to `direction`, if one is within `tol`.
    pub fn k(&self, direction: &[Complex<F>], tol: f64) -> Option<u32> {
        self.find(direction, tol).map(|i| self.relative_mult[i])
    }

    /// Index of the line closest to `direction`, if within `tol`.
    pub fn find(&self, direction: &[Complex<F>], tol: f64) -> Option<usize> {
        self.lines
            .iter()
            .enumerate()
            .map(|(i, l)| (i, scalar::line_distance(&l.direction, direction).to_float()))
            .filter(|(_, d)| *d <= tol)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(i, _)| i)
    }
}

/// Lines of the homogeneous bivariate form `in_f`, with exponents.
pub fn cone_lines<F: Real>(in_f: &Poly) -> Result<Vec<ConeLine<F>>> {
    if in_f.nvars() != 2 {
        return Err(Error::VariableCount {
            expected: 2,
            got: in_f.nvars(),
        });
    }
    if in_f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !in_f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let d = in_f.total_degree().expect("nonzero");
    // in_f(1, y) = sum_j a_{d-j, j} y^j
    let mut coeffs = vec![GaussianRational::zero(); d as usize + 1];
    for (e, c) in in_f.terms() {
        coeffs[e[1] as usize] = c.clone();
    }
    let g = UniPoly::new(coeffs);
    let dg = g.degree().expect("nonzero") as u32;
    let mut out = Vec::new();
    if d > dg {
        out.push(ConeLine {
            direction: vec![scalar::zero(), scalar::one()],
            exponent: d - dg,
        });
    }
    for r in roots::exact_roots::<F>(&g) {
        out.push(ConeLine {
            direction: scalar::normalize_direction(&[scalar::one(), r.value]),
            exponent: r.multiplicity as u32,
        });
    }
    out.sort_by_key(|l| scalar::direction_key(&l.direction));
    Ok(out)
}

/// Group branches by tangent line; `k_X(L)` is the sum of the
/// multiplicities of the branches tangent to `L`.
pub fn relative_multiplicities<F: Real>(branches: &[Branch<F>]) -> Result<TangentCone<F>> {
    relative_multiplicities_with(branches, LINE_TOL)
}

pub fn relative_multiplicities_with<F: Real>(
    branches: &[Branch<F>],
    tol: f64,
) -> Result<TangentCone<F>> {
    if branches.is_empty() {
        return Err(Error::EmptyBranches);
    }
    let mut cone = TangentCone {
        lines: Vec::new(),
        relative_mult: Vec::new(),
    };
    for b in branches {
        match cone.find(&b.tangent, tol) {
            Some(i) => cone.relative_mult[i] += b.multiplicity,
            None => {
                cone.lines.push(ConeLine {
                    direction: b.tangent.clone(),
                    exponent: 0,
                });
                cone.relative_mult.push(b.multiplicity);
            }
        }
    }
    // for curves the exponent of a line in in(f) equals k_X(L)
    for (l, k) in cone.lines.iter_mut().zip(&cone.relative_mult) {
        l.exponent = *k;
    }
    let mut idx: Vec<usize> = (0..cone.lines.len()).collect();
    idx.sort_by_key(|&i| scalar::direction_key(&cone.lines[i].direction));
    Ok(TangentCone {
        lines: idx.iter().map(|&i| cone.lines[i].clone()).collect(),
        relative_mult: idx.iter().map(|&i| cone.relative_mult[i]).collect(),
    })
}

/// `ord_0(f) == sum_L k_X(L)`.
pub fn multiplicity_identity_check<F: Real>(f: &Poly, cone: &TangentCone<F>) -> bool {
    match f.order_at_origin() {
        Ok(m) => m == cone.total(),
        Err(_) => false,
    }
}

/// Cone of a curve germ whose lines come from `in(f)` and whose `k_X`
/// come from the branches; errors when the two disagree.
pub fn curve_cone<F: Real>(f: &Poly, branches: &[Branch<F>], tol: f64) -> Result<TangentCone<F>> {
    let from_branches = relative_multiplicities_with(branches, tol)?;
    let lines = cone_lines::<F>(&f.initial_form()?)?;
    let mut relative_mult = Vec::with_capacity(lines.len());
    for l in &lines {
        let k = from_branches
            .k(&l.direction, tol)
            .ok_or_else(|| Error::numerical("a line of the initial form has no tangent branch"))?;
        if k != l.exponent {
            return Err(Error::numerical(format!(
                "line exponent {} in the initial form differs from k = {k}",
                l.exponent
            )));
        }
        relative_mult.push(k);
    }
    if from_branches.lines.len() != lines.len() {
        return Err(Error::numerical(
            "branch tangents do not match the initial form",
        ));
    }
    Ok(TangentCone {
        lines,
        relative_mult,
    })
}

/// A component of the tangent cone of a hypersurface in `n >= 3` variables:
/// a squarefree factor of `in(f)` and its exponent.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeComponent {
    pub form: Poly,
    pub exponent: u32,
}

/// Note attached to hypersurface cone data.
pub const UNVERIFIED_NOTE: &str = "unverified (n>=3)";

/// Components of `V(in(f))` for a hypersurface: coordinate hyperplanes
/// split off, the rest grouped by exponent (factors sharing an exponent are
/// not separated further).
pub fn hypersurface_cone(f: &Poly) -> Result<Vec<ConeComponent>> {
    let in_f = f.initial_form()?;
    let n = in_f.nvars();
    let mut rest = in_f.clone();
    let mut out = Vec::new();
    for v in 0..n {
        let k = rest.var_content(v);
        if k > 0 {
            rest = rest.div_var_power(v, k);
            out.push(ConeComponent {
                form: Poly::var(n, v),
                exponent: k,
            });
        }
    }
    for (form, k) in squarefree_levels(&rest) {
        out.push(ConeComponent { form, exponent: k });
    }
    Ok(out)
}

/// `sum k * deg(component) == m`.
pub fn hypersurface_identity(f: &Poly, comps: &[ConeComponent]) -> bool {
    let m = match f.order_at_origin() {
        Ok(m) => m,
        Err(_) => return false,
    };
    comps
        .iter()
        .map(|c| c.exponent * c.form.total_degree().unwrap_or(0))
        .sum::<u32>()
        == m
}

/// Direction as `[re, im, re, im, ...]`.
pub fn flatten_direction<F: Real>(d: &[Complex<F>]) -> Vec<f64> {
    d.iter()
        .flat_map(|z| [z.re.to_float(), z.im.to_float()])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puiseux::puiseux_branches;
    use crate::{parse, Variables};

    fn p(s: &str) -> Poly {
        parse(s, &Variables::Plane).unwrap()
    }

    #[test]
    fn lines_of_initial_forms() {
        let l: Vec<ConeLine<f64>> = cone_lines(&p("y^2")).unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].exponent, 2);
        assert!((l[0].direction[0].re - 1.0).abs() < 1e-15);

        let l: Vec<ConeLine<f64>> = cone_lines(&p("y^3 - 2*x*y^2")).unwrap();
        assert_eq!(l.len(), 2);
        let y0 = l.iter().find(|c| c.direction[1].norm() < 1e-12).unwrap();
        assert_eq!(y0.exponent, 2);
        let other = l.iter().find(|c| c.direction[1].norm() > 1e-12).unwrap();
        assert_eq!(other.exponent, 1);
        assert!((other.direction[1] / other.direction[0] - Complex::new(2.0, 0.0)).norm() < 1e-12);

        let l: Vec<ConeLine<f64>> = cone_lines(&p("x^2 + y^2")).unwrap();
        let slopes: Vec<Complex<f64>> = l.iter().map(|c| c.direction[1] / c.direction[0]).collect();
        assert!(slopes
            .iter()
            .any(|s| (s - Complex::new(0.0, 1.0)).norm() < 1e-12));
        assert!(slopes
            .iter()
            .any(|s| (s - Complex::new(0.0, -1.0)).norm() < 1e-12));

        let l: Vec<ConeLine<f64>> = cone_lines(&p("x*y^2")).unwrap();
        assert!(l
            .iter()
            .any(|c| c.direction[0].norm() < 1e-15 && c.exponent == 1));

        assert!(matches!(
            cone_lines::<f64>(&p("y + x^2")),
            Err(Error::NotHomogeneous)
        ));
    }

    #[test]
    fn relative_multiplicities_examples() {
        let f = p("(y^2 - x^3)*(y - 2*x)");
        let b = puiseux_branches(&f, 12).unwrap();
        let cone = relative_multiplicities(&b).unwrap();
        assert_eq!(
            cone.k(&[Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)], 1e-9),
            Some(2)
        );
        let d = scalar::normalize_direction(&[Complex::new(1.0, 0.0), Complex::new(2.0, 0.0)]);
        assert_eq!(cone.k(&d, 1e-9), Some(1));
        assert!(multiplicity_identity_check(&f, &cone));

        let g = p("y*(y - x^2)");
        let cone = relative_multiplicities(&puiseux_branches(&g, 12).unwrap()).unwrap();
        assert_eq!(cone.relative_mult, vec![2]);
        assert!(multiplicity_identity_check(&g, &cone));

        assert!(matches!(
            relative_multiplicities::<f64>(&[]),
            Err(Error::EmptyBranches)
        ));
    }

    #[test]
    fn curve_cone_cross_checks() {
        let f = p("(y^2 - x^3)*(y - 2*x)");
        let b = puiseux_branches(&f, 12).unwrap();
        let cone = curve_cone(&f, &b, LINE_TOL).unwrap();
        assert_eq!(cone.total(), 3);
    }

    #[test]
    fn hypersurface_components() {
        let f = parse("z1^3 - z2^2 - z3^2 - z4^2", &Variables::Indexed(4)).unwrap();
        let comps = hypersurface_cone(&f).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].exponent, 1);
        assert!(hypersurface_identity(&f, &comps));
        let g = parse("z1^2*z2 + z3^4", &Variables::Indexed(3)).unwrap();
        let comps = hypersurface_cone(&g).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(hypersurface_identity(&g, &comps));
    }
}
