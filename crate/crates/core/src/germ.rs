//! Full invariant report of a germ: multiplicity, tangent cone, branches,
//! the multiplicity identity and the regularity obstruction.

use num_complex::Complex;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::param::{Parametrization, SparseSeries};
use crate::polycore::is_reduced;
use crate::puiseux::{self, Branch, Orientation, PuiseuxOptions};
use crate::tangentcone::{self, ConeComponent, TangentCone, LINE_TOL, UNVERIFIED_NOTE};
use crate::{parse, DoubleF64, Poly, Variables};

/// Parsed germ input: an implicit equation or a list of branch
/// parametrizations.
#[derive(Clone, Debug)]
pub enum GermInput {
    Implicit { poly: Poly, vars: Variables },
    Parametrized(Vec<Parametrization<f64>>),
}

impl GermInput {
    /// Parse a germ file. Lines starting with `branch:` give comma-separated
    /// coordinates as polynomials in `t`; otherwise the non-comment lines
    /// form one polynomial. `#` starts a comment line.
    pub fn parse(text: &str) -> Result<GermInput> {
        let lines: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        if lines.iter().any(|l| l.starts_with("branch:")) {
            let tvars = Variables::Named(vec!["t".into()]);
            let mut out = Vec::new();
            let mut offset = 0usize;
            for line in text.lines() {
                let trimmed = line.trim();
                let lead = line.len() - line.trim_start().len();
                if let Some(rest) = trimmed.strip_prefix("branch:") {
                    let mut col = offset + lead + "branch:".len();
                    let mut coords = Vec::new();
                    for piece in rest.split(',') {
                        let p = parse(piece, &tvars).map_err(|e| shift_position(e, col))?;
                        coords.push(series_of(&p));
                        col += piece.len() + 1;
                    }
                    out.push(Parametrization::new(coords, None));
                } else if !trimmed.is_empty() && !trimmed.starts_with('#') {
                    return Err(Error::Syntax {
                        pos: offset + lead,
                        msg: "expected 'branch:'".into(),
                    });
                }
                offset += line.len() + 1;
            }
            return Ok(GermInput::Parametrized(out));
        }
        let joined = lines.join(" ");
        let vars = Variables::detect(&joined, &[]);
        let poly = parse(&joined, &vars)?;
        Ok(GermInput::Implicit { poly, vars })
    }

    /// Implicit plane curve input.
    pub fn plane(poly: Poly) -> GermInput {
        let vars = Variables::for_nvars(poly.nvars());
        GermInput::Implicit { poly, vars }
    }
}

fn shift_position(e: Error, by: usize) -> Error {
    match e {
        Error::Syntax { pos, msg } => Error::Syntax { pos: pos + by, msg },
        Error::UnknownVariable { pos, name } => Error::UnknownVariable {
            pos: pos + by,
            name,
        },
        Error::ZeroDenominator { pos } => Error::ZeroDenominator { pos: pos + by },
        other => other,
    }
}

fn series_of(p: &Poly) -> SparseSeries<f64> {
    p.terms()
        .map(|(e, c)| (e[0], c.to_complex::<f64>()))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GermKind {
    PlaneCurve,
    Hypersurface,
    ParametrizedCurve,
}

impl GermKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GermKind::PlaneCurve => "plane-curve",
            GermKind::Hypersurface => "hypersurface",
            GermKind::ParametrizedCurve => "parametrized-curve",
        }
    }

    pub fn is_curve(self) -> bool {
        self != GermKind::Hypersurface
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regularity {
    Smooth,
    NotBlowSphericalRegular,
}

impl Regularity {
    pub fn as_str(self) -> &'static str {
        match self {
            Regularity::Smooth => "smooth",
            Regularity::NotBlowSphericalRegular => "not-blow-spherical-regular",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Cone {
    /// Lines with relative multiplicities (curves).
    Lines(TangentCone<f64>),
    /// Squarefree components of the initial form (hypersurfaces).
    Components(Vec<ConeComponent>),
}

#[derive(Clone, Debug)]
pub struct GermReport {
    pub source: String,
    pub kind: GermKind,
    pub variables: Variables,
    pub multiplicity: u32,
    pub cone: Cone,
    pub branches: Vec<Branch<f64>>,
    /// Residual decay exponent per branch (implicit curves only).
    pub residual_orders: Vec<f64>,
    pub identity_ok: bool,
    pub smooth: bool,
    pub regularity: Regularity,
}

impl GermReport {
    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    /// The tangent cone of a curve report.
    pub fn lines(&self) -> Option<&TangentCone<f64>> {
        match &self.cone {
            Cone::Lines(c) => Some(c),
            Cone::Components(_) => None,
        }
    }

    /// Index of the cone line each branch is tangent to.
    pub fn branch_lines(&self) -> Vec<usize> {
        let cone = match self.lines() {
            Some(c) => c,
            None => return Vec::new(),
        };
        self.branches
            .iter()
            .map(|b| {
                cone.find(&b.tangent, LINE_TOL)
                    .expect("every branch lies on a cone line")
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    /// Puiseux terms per branch.
    pub terms: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            terms: puiseux::DEFAULT_TERMS,
        }
    }
}

/// `Smooth` when `m = 1`; otherwise `m > 1` certifies the germ is not
/// blow-spherical regular.
pub fn regularity_obstruction(report: &GermReport) -> Regularity {
    if report.multiplicity == 1 {
        Regularity::Smooth
    } else {
        Regularity::NotBlowSphericalRegular
    }
}

pub fn analyze(input: &GermInput, opts: &AnalyzeOptions) -> Result<GermReport> {
    let mut report = match input {
        GermInput::Implicit { poly, vars } => analyze_implicit(poly, vars, opts)?,
        GermInput::Parametrized(ps) => analyze_parametrized(ps)?,
    };
    report.smooth = report.multiplicity == 1;
    report.regularity = regularity_obstruction(&report);
    Ok(report)
}

/// Analyze an implicit polynomial with the default variable convention.
pub fn analyze_poly(f: &Poly) -> Result<GermReport> {
    analyze(&GermInput::plane(f.clone()), &AnalyzeOptions::default())
}

fn analyze_implicit(f: &Poly, vars: &Variables, opts: &AnalyzeOptions) -> Result<GermReport> {
    let n = f.nvars();
    if n < 2 {
        return Err(Error::invalid("a germ needs at least two variables"));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.constant_term().is_zero() {
        return Err(Error::NotVanishing);
    }
    if !is_reduced(f) {
        return Err(Error::NonReduced(
            "repeated factor through the origin".into(),
        ));
    }
    let m = f.order_at_origin()?;
    let source = f.to_text(vars);
    if n == 2 {
        let popts = PuiseuxOptions {
            terms: opts.terms,
            ..PuiseuxOptions::default()
        };
        let precise: Vec<Branch<DoubleF64>> = puiseux::puiseux_branches_in(f, &popts)?;
        let residual_orders = precise
            .iter()
            .map(|b| puiseux::residual_order(f, b))
            .collect();
        let branches: Vec<Branch<f64>> = precise.iter().map(Branch::map_scalar).collect();
        let cone = tangentcone::curve_cone(f, &branches, LINE_TOL)?;
        let identity_ok = tangentcone::multiplicity_identity_check(f, &cone);
        if !identity_ok {
            return Err(Error::numerical(
                "branch multiplicities do not add up to the order",
            ));
        }
        return Ok(GermReport {
            source,
            kind: GermKind::PlaneCurve,
            variables: vars.clone(),
            multiplicity: m,
            cone: Cone::Lines(cone),
            branches,
            residual_orders,
            identity_ok,
            smooth: false,
            regularity: Regularity::Smooth,
        });
    }
    let comps = tangentcone::hypersurface_cone(f)?;
    let identity_ok = tangentcone::hypersurface_identity(f, &comps);
    if !identity_ok {
        return Err(Error::numerical(
            "cone component degrees do not add up to the order",
        ));
    }
    Ok(GermReport {
        source,
        kind: GermKind::Hypersurface,
        variables: vars.clone(),
        multiplicity: m,
        cone: Cone::Components(comps),
        branches: Vec::new(),
        residual_orders: Vec::new(),
        identity_ok,
        smooth: false,
        regularity: Regularity::Smooth,
    })
}

fn analyze_parametrized(ps: &[Parametrization<f64>]) -> Result<GermReport> {
    if ps.is_empty() {
        return Err(Error::EmptyBranches);
    }
    let n = ps[0].nvars();
    if n < 2 {
        return Err(Error::invalid("a germ needs at least two variables"));
    }
    let mut branches: Vec<Branch<f64>> = Vec::new();
    for p in ps {
        if p.nvars() != n {
            return Err(Error::VariableCount {
                expected: n,
                got: p.nvars(),
            });
        }
        let b = Branch::from_parametrization(p)?;
        if branches.iter().any(|o| o.orientation == b.orientation) {
            return Err(Error::NonReduced("repeated branch".into()));
        }
        branches.push(b);
    }
    let cone = tangentcone::relative_multiplicities(&branches)?;
    let m: u32 = branches.iter().map(puiseux::branch_multiplicity).sum();
    let identity_ok = m == cone.total();
    let vars = Variables::for_nvars(n);
    let source = ps
        .iter()
        .map(|p| format!("branch: {}", param_text(p)))
        .collect::<Vec<_>>()
        .join("; ");
    Ok(GermReport {
        source,
        kind: GermKind::ParametrizedCurve,
        variables: vars,
        multiplicity: m,
        cone: Cone::Lines(cone),
        branches,
        residual_orders: Vec::new(),
        identity_ok,
        smooth: false,
        regularity: Regularity::Smooth,
    })
}

fn param_text(p: &Parametrization<f64>) -> String {
    p.coords()
        .iter()
        .map(|c| {
            if c.is_empty() {
                return "0".to_string();
            }
            c.iter()
                .map(|(k, a)| format!("({})*t^{k}", complex_text(a)))
                .collect::<Vec<_>>()
                .join(" + ")
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn complex_text(z: &Complex<f64>) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

/// JSON number with `-0.0` folded to `0.0`; non-finite values become null.
pub(crate) fn num(x: f64) -> Value {
    if !x.is_finite() {
        Value::Null
    } else if x == 0.0 {
        json!(0.0)
    } else {
        json!(x)
    }
}

pub(crate) fn complex_vec_json(v: &[Complex<f64>]) -> Value {
    Value::Array(
        tangentcone::flatten_direction(v)
            .into_iter()
            .map(num)
            .collect(),
    )
}

pub(crate) fn sparse_json(s: &[(u32, Complex<f64>)]) -> Value {
    Value::Array(
        s.iter()
            .map(|(k, a)| json!([k, num(a.re), num(a.im)]))
            .collect(),
    )
}

pub fn branch_json(b: &Branch<f64>, residual: Option<f64>) -> Value {
    let orientation = match &b.orientation {
        Orientation::XParam => "x-param",
        Orientation::YParam => "y-param",
        Orientation::Explicit(_) => "explicit",
    };
    let series: Vec<Value> = puiseux::series_entries(b)
        .into_iter()
        .map(|(n, d, re, im)| json!([n, d, num(re), num(im)]))
        .collect();
    let mut v = json!({
        "e": b.ramification,
        "multiplicity": b.multiplicity,
        "tangent": complex_vec_json(&b.tangent),
        "orientation": orientation,
        "series": series,
        "truncation_order": b.truncation_order.map(|q| json!([q.numer(), q.denom()])),
    });
    if let Orientation::Explicit(p) = &b.orientation {
        v["coordinates"] = Value::Array(p.coords().iter().map(|c| sparse_json(c)).collect());
    }
    if let Some(r) = residual {
        v["residual_order"] = num(r);
    }
    v
}

pub fn report_json(r: &GermReport) -> Value {
    let cone = match &r.cone {
        Cone::Lines(c) => Value::Array(
            c.lines
                .iter()
                .zip(&c.relative_mult)
                .map(|(l, k)| json!({"direction": complex_vec_json(&l.direction), "k": k}))
                .collect(),
        ),
        Cone::Components(comps) => Value::Array(
            comps
                .iter()
                .map(|c| {
                    json!({
                        "component": c.form.to_text(&r.variables),
                        "k": c.exponent,
                        "note": UNVERIFIED_NOTE,
                    })
                })
                .collect(),
        ),
    };
    let branches: Vec<Value> = r
        .branches
        .iter()
        .enumerate()
        .map(|(i, b)| branch_json(b, r.residual_orders.get(i).copied()))
        .collect();
    json!({
        "source": r.source,
        "kind": r.kind.as_str(),
        "nvars": r.nvars(),
        "multiplicity": r.multiplicity,
        "cone": cone,
        "branches": branches,
        "identity_ok": r.identity_ok,
        "smooth": r.smooth,
        "regularity": r.regularity.as_str(),
    })
}
