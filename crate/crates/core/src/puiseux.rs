//! Newton polygons and Newton-Puiseux expansion of reduced plane curve germs.
//!
//! Branches come out as `x = t^e, y = sum c_k t^{E_k}` (or the two axis
//! branches `x = 0`, `y = 0`). The first Newton-polygon level is computed
//! exactly; deeper levels carry complex floating-point coefficients, each
//! paired with the sum of absolute values of the contributions that formed
//! it, so that cancellation to zero can be recognized.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_complex::Complex;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::param::{self, Parametrization};
use crate::polycore::{is_reduced, UniPoly};
use crate::roots::{self, RootCluster, DEFAULT_CLUSTER_TOL};
use crate::scalar::{self, Real};
use crate::{DoubleF64, Poly};

/// Default number of series terms per branch.
pub const DEFAULT_TERMS: usize = 12;
/// Maximal Newton-polygon recursion depth.
pub const MAX_DEPTH: usize = 64;

/// How a branch is parametrized.
#[derive(Clone, Debug, PartialEq)]
pub enum Orientation {
    /// `x = t^e`, `y = series`.
    XParam,
    /// `y = t^e`, `x = series` (the axis `x = 0`).
    YParam,
    /// Explicit parametrization in any number of variables.
    Explicit(Parametrization<f64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Branch<F> {
    /// Ramification index `e`.
    pub ramification: u32,
    pub orientation: Orientation,
    /// `(exponent, coefficient)` of the graph coordinate as a series in the
    /// parameter coordinate, exponents with denominator dividing `e`.
    pub series: Vec<(Ratio<i64>, Complex<F>)>,
    pub multiplicity: u32,
    /// Unit direction of the tangent line.
    pub tangent: Vec<Complex<F>>,
    /// Largest exponent known to be exact; `None` when the series is exact.
    pub truncation_order: Option<Ratio<i64>>,
}

#[derive(Clone, Debug)]
pub struct PuiseuxOptions {
    /// Series terms per branch before truncating.
    pub terms: usize,
    pub cluster_tol: f64,
    pub max_depth: usize,
}

impl Default for PuiseuxOptions {
    fn default() -> Self {
        PuiseuxOptions {
            terms: DEFAULT_TERMS,
            cluster_tol: DEFAULT_CLUSTER_TOL,
            max_depth: MAX_DEPTH,
        }
    }
}

impl<F: Real> Branch<F> {
    fn axis(orientation: Orientation, tangent: [f64; 2]) -> Self {
        Branch {
            ramification: 1,
            orientation,
            series: Vec::new(),
            multiplicity: 1,
            tangent: tangent.iter().map(|x| scalar::real(*x)).collect(),
            truncation_order: None,
        }
    }

    /// Branch given by an explicit parametrization (normalized to be
    /// primitive).
    pub fn from_parametrization(p: &Parametrization<f64>) -> Result<Self> {
        let p = p.primitive();
        let m = p.order().ok_or(Error::NotVanishing)?;
        if p.coords()
            .iter()
            .any(|c| c.first().is_some_and(|(k, _)| *k == 0))
        {
            return Err(Error::NotVanishing);
        }
        let tangent = p
            .tangent()
            .expect("nonzero")
            .iter()
            .map(|z| scalar::from_c64(*z))
            .collect();
        Ok(Branch {
            ramification: m,
            orientation: Orientation::Explicit(p.clone()),
            series: Vec::new(),
            multiplicity: m,
            tangent,
            truncation_order: p.precision().map(|k| Ratio::from_integer(k as i64 - 1)),
        })
    }

    pub fn nvars(&self) -> usize {
        self.tangent.len()
    }

    pub fn is_exact(&self) -> bool {
        self.truncation_order.is_none()
    }

    /// The parametrization `t -> psi(t)`.
    pub fn parametrization(&self) -> Parametrization<F> {
        let e = self.ramification as i64;
        let graph: Vec<(u32, Complex<F>)> = self
            .series
            .iter()
            .map(|(q, c)| ((q * e).to_integer() as u32, *c))
            .collect();
        let precision = self
            .truncation_order
            .map(|q| (q * e).floor().to_integer() as u32 + 1);
        let param = vec![(self.ramification, scalar::one())];
        match &self.orientation {
            Orientation::XParam => Parametrization::new(vec![param, graph], precision),
            Orientation::YParam => Parametrization::new(vec![graph, param], precision),
            Orientation::Explicit(p) => p.map_scalar(),
        }
    }

    pub fn map_scalar<G: Real>(&self) -> Branch<G> {
        let conv = |z: &Complex<F>| scalar::convert::<F, G>(z);
        Branch {
            ramification: self.ramification,
            orientation: self.orientation.clone(),
            series: self.series.iter().map(|(q, c)| (*q, conv(c))).collect(),
            multiplicity: self.multiplicity,
            tangent: self.tangent.iter().map(conv).collect(),
            truncation_order: self.truncation_order,
        }
    }

    fn sort_key(&self) -> (Vec<i64>, u32, Vec<i64>) {
        let lead: Vec<Complex<F>> = self
            .series
            .first()
            .map(|(_, c)| vec![*c])
            .unwrap_or_default();
        (
            scalar::direction_key(&self.tangent),
            self.multiplicity,
            scalar::direction_key(&lead),
        )
    }
}

/// `min(e, e * (lowest series exponent))`: the minimal vanishing order of
/// the coordinates of `psi(t)`.
pub fn branch_multiplicity<F: Real>(b: &Branch<F>) -> u32 {
    match &b.orientation {
        Orientation::Explicit(p) => p.order().unwrap_or(0),
        _ => match b.series.first() {
            None => b.ramification,
            Some((q, _)) => {
                let lowest = (q * b.ramification as i64).to_integer() as u32;
                b.ramification.min(lowest)
            }
        },
    }
}

/// One edge of a Newton polygon.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    /// `di / dj`, the exponent `gamma` of the leading term `y ~ c x^gamma`.
    pub slope: Ratio<i64>,
    /// Drop in `y`-degree along the edge (number of roots `y(x)` it carries).
    pub height: u32,
    /// Number of lattice steps on the edge.
    pub lattice_length: u32,
    /// `Psi(w) = sum a_{ij} w^{(j - j_end)/q}` over the support on the edge,
    /// where `slope = p/q`.
    pub face: UniPoly<GaussianRational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NewtonPolygon {
    pub segments: Vec<Segment>,
    /// Power of `y` divided out before building the polygon.
    pub y_factor: u32,
}

#[derive(Clone, Copy, Debug)]
struct Edge {
    start: (u32, u32),
    end: (u32, u32),
}

impl Edge {
    fn p_q(&self) -> (u32, u32) {
        let di = self.end.0 - self.start.0;
        let dj = self.start.1 - self.end.1;
        let g = di.gcd(&dj);
        (di / g, dj / g)
    }

    fn weight(&self) -> u64 {
        let (p, q) = self.p_q();
        q as u64 * self.start.0 as u64 + p as u64 * self.start.1 as u64
    }
}

/// Lower-left hull of the support from `(0, r0)` down to the `x`-axis.
fn lower_hull(points: &[(u32, u32)], r0: u32) -> Vec<Edge> {
    let mut edges = Vec::new();
    let mut cur = (0u32, r0);
    while cur.1 > 0 {
        let mut best: Option<(u32, u32)> = None;
        for &(i, j) in points {
            if j >= cur.1 || i < cur.0 {
                continue;
            }
            best = match best {
                None => Some((i, j)),
                Some(b) => {
                    // compare (i - cur.i)/(cur.j - j) with (b.i - cur.i)/(cur.j - b.j)
                    let lhs = (i - cur.0) as u64 * (cur.1 - b.1) as u64;
                    let rhs = (b.0 - cur.0) as u64 * (cur.1 - j) as u64;
                    match lhs.cmp(&rhs) {
                        Ordering::Less => Some((i, j)),
                        Ordering::Equal if j < b.1 => Some((i, j)),
                        _ => Some(b),
                    }
                }
            };
        }
        let next = best.expect("support reaches the x-axis");
        edges.push(Edge {
            start: cur,
            end: next,
        });
        cur = next;
    }
    edges
}

fn on_edge(e: &Edge, i: u32, j: u32) -> bool {
    let (p, q) = e.p_q();
    j >= e.end.1 && j <= e.start.1 && q as u64 * i as u64 + p as u64 * j as u64 == e.weight()
}

fn face_exponent(e: &Edge, j: u32) -> usize {
    let (_, q) = e.p_q();
    ((j - e.end.1) / q) as usize
}

fn check_plane(f: &Poly) -> Result<()> {
    if f.nvars() != 2 {
        return Err(Error::VariableCount {
            expected: 2,
            got: f.nvars(),
        });
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.constant_term().is_zero() {
        return Err(Error::NotVanishing);
    }
    Ok(())
}

/// Newton polygon of `f / y^b` where `y^b` is the largest power of `y`
/// dividing `f`.
pub fn newton_polygon(f: &Poly) -> Result<NewtonPolygon> {
    check_plane(f)?;
    if f.var_content(0) > 0 {
        return Err(Error::invalid(
            "f has the component x = 0; split it off first",
        ));
    }
    let b = f.var_content(1);
    let g = f.div_var_power(1, b);
    let support: Vec<(u32, u32)> = g.terms().map(|(e, _)| (e[0], e[1])).collect();
    let r0 = g
        .terms()
        .filter(|(e, _)| e[0] == 0)
        .map(|(e, _)| e[1])
        .min()
        .unwrap_or(0);
    let mut segments = Vec::new();
    for edge in lower_hull(&support, r0) {
        let (p, q) = edge.p_q();
        let height = edge.start.1 - edge.end.1;
        let mut coeffs = vec![GaussianRational::zero(); (height / q) as usize + 1];
        for (e, c) in g.terms() {
            if on_edge(&edge, e[0], e[1]) {
                coeffs[face_exponent(&edge, e[1])] = c.clone();
            }
        }
        segments.push(Segment {
            slope: Ratio::new(p as i64, q as i64),
            height,
            lattice_length: (edge.end.0 - edge.start.0).gcd(&height),
            face: UniPoly::new(coeffs),
        });
    }
    Ok(NewtonPolygon {
        segments,
        y_factor: b,
    })
}

/// Numeric polynomial in `(s, Y)`: coefficient and magnitude per monomial.
type Support<F> = BTreeMap<(u32, u32), (Complex<F>, F)>;

struct Node<F> {
    g: Support<F>,
    r0: u32,
    /// Series terms so far, exponents in the current parameter `s`.
    terms: Vec<(u64, Complex<F>)>,
    /// `y = sum terms + s^shift * Y`.
    shift: u64,
    /// `x = s^e`.
    e: u32,
    depth: usize,
}

struct Expander<'a, F> {
    opts: &'a PuiseuxOptions,
    out: Vec<Branch<F>>,
}

fn noise_factor<F: Real>() -> F {
    F::from_float(4096.0) * F::epsilon()
}

fn binomials(n: u32) -> Vec<Vec<f64>> {
    let mut rows = vec![vec![1.0]];
    for k in 1..=n as usize {
        let prev = &rows[k - 1];
        let mut row = vec![1.0; k + 1];
        for j in 1..k {
            row[j] = prev[j - 1] + prev[j];
        }
        rows.push(row);
    }
    rows
}

/// `s^{-m} G(s^q, s^p (c + Y))` with cancelled coefficients removed.
fn substitute<F: Real>(g: &Support<F>, p: u32, q: u32, m: u64, c: Complex<F>) -> Support<F> {
    let maxj = g.keys().map(|(_, j)| *j).max().unwrap_or(0);
    let binom = binomials(maxj);
    let mut cpow = vec![scalar::one::<F>()];
    let mut apow = vec![F::one()];
    let ac = scalar::abs(&c);
    for k in 1..=maxj as usize {
        cpow.push(cpow[k - 1] * c);
        apow.push(apow[k - 1] * ac);
    }
    let mut out: Support<F> = BTreeMap::new();
    for (&(i, j), &(a, mag)) in g {
        let w = q as u64 * i as u64 + p as u64 * j as u64;
        debug_assert!(w >= m, "support below the Newton polygon");
        let base = (w - m) as u32;
        for k in 0..=j {
            let b = F::from_float(binom[j as usize][k as usize]);
            let coef = a * cpow[(j - k) as usize] * Complex::new(b, F::zero());
            let cm = mag * apow[(j - k) as usize] * b;
            let slot = out.entry((base, k)).or_insert((scalar::zero(), F::zero()));
            slot.0 = slot.0 + coef;
            slot.1 += cm;
        }
    }
    let nf = noise_factor::<F>();
    out.retain(|_, (v, mag)| !v.is_zero() && scalar::abs(v) > nf * *mag);
    out
}

impl<F: Real> Expander<'_, F> {
    fn emit(&mut self, node: &Node<F>, exact: bool) {
        let e = node.e as i64;
        let series: Vec<(Ratio<i64>, Complex<F>)> = node
            .terms
            .iter()
            .map(|(k, c)| (Ratio::new(*k as i64, e), *c))
            .collect();
        let truncation_order = if exact {
            None
        } else {
            series.last().map(|(q, _)| *q).or(Some(Ratio::zero()))
        };
        let (multiplicity, tangent) = match node.terms.first() {
            None => (node.e, vec![scalar::one(), scalar::zero()]),
            Some((k, c)) => {
                let k = *k as u32;
                let t = match k.cmp(&node.e) {
                    Ordering::Greater => vec![scalar::one(), scalar::zero()],
                    Ordering::Equal => scalar::normalize_direction(&[scalar::one(), *c]),
                    Ordering::Less => vec![scalar::zero(), scalar::one()],
                };
                (node.e.min(k), t)
            }
        };
        self.out.push(Branch {
            ramification: node.e,
            orientation: Orientation::XParam,
            series,
            multiplicity,
            tangent,
            truncation_order,
        });
    }

    fn expand(&mut self, mut node: Node<F>, exact_face: Option<&Poly>) -> Result<()> {
        if node.depth > self.opts.max_depth {
            return Err(Error::DepthExceeded(self.opts.max_depth));
        }
        let has_y0 = node.g.keys().any(|(_, j)| *j == 0);
        if !has_y0 {
            let minj = node.g.keys().map(|(_, j)| *j).min().unwrap_or(0);
            if minj >= 2 || node.g.is_empty() {
                return Err(Error::NonReduced(
                    "repeated branch found during expansion".into(),
                ));
            }
            self.emit(&node, true);
            if node.r0 <= 1 {
                return Ok(());
            }
            node.g = node.g.iter().map(|(&(i, j), v)| ((i, j - 1), *v)).collect();
            node.r0 -= 1;
            return self.expand(node, None);
        }
        if node.r0 == 1 && node.terms.len() >= self.opts.terms {
            self.emit(&node, false);
            return Ok(());
        }
        let support: Vec<(u32, u32)> = node
            .g
            .keys()
            .copied()
            .filter(|(i, j)| *i > 0 || *j >= node.r0)
            .collect();
        for edge in lower_hull(&support, node.r0) {
            let (p, q) = edge.p_q();
            let height = edge.start.1 - edge.end.1;
            let nface = (height / q) as usize + 1;
            let clusters: Vec<RootCluster<F>> = match exact_face {
                Some(f) => {
                    let mut coeffs = vec![GaussianRational::zero(); nface];
                    for (e, c) in f.terms() {
                        if on_edge(&edge, e[0], e[1]) {
                            coeffs[face_exponent(&edge, e[1])] = c.clone();
                        }
                    }
                    roots::exact_roots(&UniPoly::new(coeffs))
                }
                None => {
                    let mut coeffs = vec![scalar::zero::<F>(); nface];
                    let mut scale = F::zero();
                    for (&(i, j), (a, mag)) in &node.g {
                        if on_edge(&edge, i, j) {
                            coeffs[face_exponent(&edge, j)] = *a;
                            scale = scale.max(*mag / scalar::abs(a).max(F::epsilon()));
                        }
                    }
                    let noise = (noise_factor::<F>() * scale).to_float();
                    roots::polynomial_roots(&coeffs, noise, self.opts.cluster_tol)
                }
            };
            let total: usize = clusters.iter().map(|c| c.multiplicity).sum();
            if total + 1 != nface {
                return Err(Error::numerical("face polynomial lost roots"));
            }
            for cl in clusters {
                if cl.value.is_zero() {
                    return Err(Error::numerical("zero root of a face polynomial"));
                }
                let c = scalar::principal_root(&cl.value, q);
                let mut g = substitute(&node.g, p, q, edge.weight(), c);
                let r = cl.multiplicity as u32;
                g.retain(|(i, j), _| *i > 0 || *j >= r);
                let mut terms: Vec<(u64, Complex<F>)> =
                    node.terms.iter().map(|(k, v)| (k * q as u64, *v)).collect();
                let shift = node.shift * q as u64 + p as u64;
                terms.push((shift, c));
                let child = Node {
                    g,
                    r0: r,
                    terms,
                    shift,
                    e: node.e * q,
                    depth: node.depth + 1,
                };
                self.expand(child, None)?;
            }
        }
        Ok(())
    }
}

/// Puiseux branches of a reduced plane curve germ, computed in precision
/// `F`.
pub fn puiseux_branches_in<F: Real>(f: &Poly, opts: &PuiseuxOptions) -> Result<Vec<Branch<F>>> {
    check_plane(f)?;
    if !is_reduced(f) {
        return Err(Error::NonReduced(
            "repeated factor through the origin".into(),
        ));
    }
    let mut out: Vec<Branch<F>> = Vec::new();
    let a = f.var_content(0);
    let b = f.var_content(1);
    if a > 0 {
        out.push(Branch::axis(Orientation::YParam, [0.0, 1.0]));
    }
    if b > 0 {
        out.push(Branch::axis(Orientation::XParam, [1.0, 0.0]));
    }
    let g = f.div_var_power(0, a).div_var_power(1, b);
    if g.constant_term().is_zero() {
        let r0 = g
            .terms()
            .filter(|(e, _)| e[0] == 0)
            .map(|(e, _)| e[1])
            .min()
            .expect("no x factor");
        let support: Support<F> = g
            .terms()
            .map(|(e, c)| {
                let z = c.to_complex::<F>();
                ((e[0], e[1]), (z, scalar::abs(&z)))
            })
            .collect();
        let root = Node {
            g: support,
            r0,
            terms: Vec::new(),
            shift: 0,
            e: 1,
            depth: 0,
        };
        let mut ex = Expander {
            opts,
            out: Vec::new(),
        };
        ex.expand(root, Some(&g))?;
        out.extend(ex.out);
    }
    out.sort_by_key(|x| x.sort_key());
    Ok(out)
}

/// Puiseux branches computed in double-double precision and reported in
/// `f64`.
pub fn puiseux_branches(f: &Poly, terms: usize) -> Result<Vec<Branch<f64>>> {
    let opts = PuiseuxOptions {
        terms,
        ..PuiseuxOptions::default()
    };
    let dd: Vec<Branch<DoubleF64>> = puiseux_branches_in(f, &opts)?;
    Ok(dd.iter().map(|b| b.map_scalar()).collect())
}

/// Decay exponent of `|f(psi(t))|` as `t -> 0`, by least squares on
/// `log|f(psi(t))|` against `log|t|` for `|t|` from `1e-1` to `1e-3`.
/// Returns `f64::INFINITY` when the residual is at the rounding level of
/// `F` throughout (exact parametrization).
pub fn residual_order<F: Real>(f: &Poly, b: &Branch<F>) -> f64 {
    let psi: Parametrization<DoubleF64> = b.map_scalar::<DoubleF64>().parametrization();
    let theta0 = 0.3f64;
    // coefficients carry the rounding error of F
    let unit = F::epsilon().to_float().max(DoubleF64::EPSILON);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for k in 0..9 {
        let logt = -1.0 - 2.0 * k as f64 / 8.0;
        let t = scalar::cis::<DoubleF64>(theta0)
            * Complex::new(DoubleF64::from(10f64.powf(logt)), DoubleF64::from(0.0));
        let z = psi.eval(t);
        let v = scalar::abs(&param::eval_poly(f, &z)).to_float();
        let floor = 64.0 * unit * param::eval_poly_abs(f, &z).to_float();
        if v > floor && v > 0.0 && v.is_finite() {
            xs.push(logt * std::f64::consts::LN_10);
            ys.push(v.ln());
        }
    }
    match xs.len() {
        0 => f64::INFINITY,
        1 => {
            // a single measurable point: bound the slope by the point itself
            ys[0] / xs[0]
        }
        n => {
            let nf = n as f64;
            let mx = xs.iter().sum::<f64>() / nf;
            let my = ys.iter().sum::<f64>() / nf;
            let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
            let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
            sxy / sxx
        }
    }
}

/// Exponent of the branch series as `[num, den]` integers plus the
/// coefficient, for reports.
pub fn series_entries(b: &Branch<f64>) -> Vec<(i64, i64, f64, f64)> {
    b.series
        .iter()
        .map(|(q, c)| (*q.numer(), *q.denom(), c.re, c.im))
        .collect()
}

/// Value of the truncation order as `f64` (`None` for exact branches).
pub fn truncation_as_f64(b: &Branch<f64>) -> Option<f64> {
    b.truncation_order.and_then(|q| q.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{parse, Variables};

    fn p(s: &str) -> Poly {
        parse(s, &Variables::Plane).unwrap()
    }

    fn branches(s: &str) -> Vec<Branch<f64>> {
        puiseux_branches(&p(s), DEFAULT_TERMS).unwrap()
    }

    #[test]
    fn polygon_examples() {
        let cusp = newton_polygon(&p("y^2 - x^3")).unwrap();
        assert_eq!(cusp.segments.len(), 1);
        assert_eq!(cusp.segments[0].slope, Ratio::new(3, 2));
        assert_eq!(cusp.segments[0].height, 2);
        assert_eq!(cusp.segments[0].lattice_length, 1);
        let node = newton_polygon(&p("y^2 - x^2")).unwrap();
        assert_eq!(node.segments[0].slope, Ratio::from_integer(1));
        assert_eq!(node.segments[0].height, 2);
        assert_eq!(node.segments[0].lattice_length, 2);
        let split = newton_polygon(&p("y*(y - x^2)")).unwrap();
        assert_eq!(split.y_factor, 1);
        assert_eq!(split.segments.len(), 1);
        assert_eq!(split.segments[0].slope, Ratio::from_integer(2));
        assert!(newton_polygon(&p("x*(y - x)")).is_err());
    }

    #[test]
    fn cusp_branch() {
        let b = branches("y^2 - x^3");
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].ramification, 2);
        assert_eq!(b[0].multiplicity, 2);
        assert!(b[0].is_exact());
        assert_eq!(b[0].series.len(), 1);
        assert_eq!(b[0].series[0].0, Ratio::new(3, 2));
        assert!((b[0].tangent[0].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn node_branches_follow_sqrt() {
        let b = branches("y^2 - x^2 - x^3");
        assert_eq!(b.len(), 2);
        // y = +-x (1 + x)^{1/2} = +-(x + x^2/2 - x^3/8 + x^4/16 ...)
        let expect = [1.0, 0.5, -0.125, 0.0625, -0.0390625];
        for br in &b {
            assert_eq!(br.ramification, 1);
            assert_eq!(br.multiplicity, 1);
            assert_eq!(br.series.len(), DEFAULT_TERMS);
            let sign = br.series[0].1.re.signum();
            for (k, want) in expect.iter().enumerate() {
                assert_eq!(br.series[k].0, Ratio::from_integer(k as i64 + 1));
                assert!((br.series[k].1.re - sign * want).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn mixed_product() {
        let b = branches("(y^2 - x^3)*(y - 2*x)");
        let mults: Vec<u32> = b.iter().map(|x| x.multiplicity).collect();
        assert_eq!(mults.iter().sum::<u32>(), 3);
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn axis_branches() {
        let b = branches("x*y");
        assert_eq!(b.len(), 2);
        assert!(b.iter().any(|x| x.orientation == Orientation::YParam));
        let c = branches("x - y^2");
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].ramification, 2);
        assert_eq!(c[0].multiplicity, 1);
        assert!(c[0].tangent[0].norm() < 1e-15);
    }

    #[test]
    fn swapped_cusp_multiplicity() {
        // x^3 = y^2 * unit: x = t^2, y = t^3 read as y-graph x^{2/3}
        let b = branches("x^3 - y^2 - y^3");
        assert_eq!(b.len(), 1);
        assert_eq!(branch_multiplicity(&b[0]), 2);
    }

    #[test]
    fn non_reduced_rejected() {
        assert!(matches!(
            puiseux_branches(&p("y^2"), 12),
            Err(Error::NonReduced(_))
        ));
        assert!(matches!(
            puiseux_branches(&p("x + 1"), 12),
            Err(Error::NotVanishing)
        ));
    }

    #[test]
    fn residual_orders() {
        let cusp = branches("y^2 - x^3");
        assert_eq!(residual_order(&p("y^2 - x^3"), &cusp[0]), f64::INFINITY);
        let line = branches("y");
        assert_eq!(residual_order(&p("y"), &line[0]), f64::INFINITY);
        let f = p("y^2 - x^2 - x^3");
        let short = puiseux_branches(&f, 4).unwrap();
        for b in &short {
            assert!(
                residual_order(&f, b) >= 5.0 - 1e-6,
                "{}",
                residual_order(&f, b)
            );
        }
    }
}
