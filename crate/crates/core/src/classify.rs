//! Blow-spherical equivalence of curve germs: signatures, branch bijections
//! and witness parametrization pairs.

use std::fmt;

use num_complex::Complex;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::germ::{self, GermReport};
use crate::param::{NormalForm, Parametrization};

/// Series length used for witness normal forms.
pub const WITNESS_TERMS: usize = 24;

/// For each tangent line, the sorted multiplicities of the branches tangent
/// to it; the groups themselves sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    pub groups: Vec<Vec<u32>>,
}

impl Signature {
    pub fn total_multiplicity(&self) -> u32 {
        self.groups.iter().flatten().sum()
    }

    pub fn branch_count(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    pub fn line_count(&self) -> usize {
        self.groups.len()
    }

    /// All branch multiplicities, sorted.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.groups.iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.groups.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            let items: Vec<String> = g.iter().map(u32::to_string).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        write!(f, "}}")
    }
}

fn require_curve(r: &GermReport) -> Result<()> {
    if r.kind.is_curve() {
        Ok(())
    } else {
        Err(Error::invalid("classification needs curve germs"))
    }
}

/// Branch indices grouped by tangent line, each group sorted by
/// (multiplicity, index).
fn line_groups(r: &GermReport) -> Vec<Vec<usize>> {
    let nlines = r.lines().map(|c| c.lines.len()).unwrap_or(0);
    let mut groups = vec![Vec::new(); nlines];
    for (b, l) in r.branch_lines().into_iter().enumerate() {
        groups[l].push(b);
    }
    for g in &mut groups {
        g.sort_by_key(|&b| (r.branches[b].multiplicity, b));
    }
    groups
}

fn group_mults(r: &GermReport, g: &[usize]) -> Vec<u32> {
    g.iter().map(|&b| r.branches[b].multiplicity).collect()
}

pub fn signature(report: &GermReport) -> Signature {
    let mut groups: Vec<Vec<u32>> = line_groups(report)
        .iter()
        .map(|g| group_mults(report, g))
        .collect();
    groups.sort();
    Signature { groups }
}

/// A pair of matched branches with their aligned normal forms; the witness
/// homeomorphism on this branch is `psi_y o psi_x^{-1}` in the normal-form
/// parameter.
#[derive(Clone, Debug)]
pub struct WitnessPair {
    pub x: usize,
    pub y: usize,
    pub multiplicity: u32,
    pub x_param: Parametrization<f64>,
    pub y_param: Parametrization<f64>,
    pub x_form: NormalForm<f64>,
    pub y_form: NormalForm<f64>,
}

/// Worst values over one sampling circle `|z| = r`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WitnessSample {
    pub r: f64,
    /// `max |phi(z)|`.
    pub image_norm: f64,
    /// `max | phi(z)/|phi(z)| - z/|z| |` in aligned coordinates.
    pub drift: f64,
}

impl WitnessPair {
    /// `(z, phi(z))` at normal-form parameter `s`.
    pub fn map_at(&self, s: Complex<f64>) -> (Vec<Complex<f64>>, Vec<Complex<f64>>) {
        (self.x_form.point(s), self.y_form.point(s))
    }

    /// Normal-form parameter on the ray `arg s = theta` with `|psi_x(s)| = r`.
    pub fn parameter_for(&self, r: f64, theta: f64) -> Complex<f64> {
        // |psi_x(s)| >= |s|^m, so the root lies below r^{1/m}
        let mut lo = 0.0f64;
        let mut hi = r.powf(1.0 / self.multiplicity as f64);
        let dir = Complex::from_polar(1.0, theta);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if norm(&self.x_form.point(dir * mid)) < r {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        dir * (0.5 * (lo + hi))
    }

    /// Sample `count` points of the circle `|z| = r` on the source branch.
    pub fn sample(&self, r: f64, count: usize) -> WitnessSample {
        let mut image_norm = 0.0f64;
        let mut drift = 0.0f64;
        for k in 0..count {
            let theta = 0.1 + std::f64::consts::TAU * k as f64 / count as f64;
            let s = self.parameter_for(r, theta);
            let (z, w) = self.map_at(s);
            let nz = norm(&z);
            let nw = norm(&w);
            image_norm = image_norm.max(nw);
            let az = self.x_form.aligned(&z);
            let aw = self.y_form.aligned(&w);
            let d = az
                .iter()
                .zip(&aw)
                .map(|(a, b)| (*b / nw - *a / nz).norm_sqr())
                .sum::<f64>()
                .sqrt();
            drift = drift.max(d);
        }
        WitnessSample {
            r,
            image_norm,
            drift,
        }
    }
}

fn norm(v: &[Complex<f64>]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[derive(Clone, Debug)]
pub struct EquivalenceDecision {
    pub equivalent: bool,
    /// `(branch of X, branch of Y)` pairs.
    pub sigma: Option<Vec<(usize, usize)>>,
    pub witness: Option<Vec<WitnessPair>>,
    /// First invariant layer on which the germs differ.
    pub certificate: Option<String>,
}

fn mismatch(x: &GermReport, y: &GermReport) -> Option<String> {
    let (sx, sy) = (signature(x), signature(y));
    if sx.total_multiplicity() != sy.total_multiplicity() {
        return Some(format!(
            "multiplicity differs: {} vs {}",
            sx.total_multiplicity(),
            sy.total_multiplicity()
        ));
    }
    if sx.branch_count() != sy.branch_count() {
        return Some(format!(
            "branch count differs: {} vs {}",
            sx.branch_count(),
            sy.branch_count()
        ));
    }
    if sx.line_count() != sy.line_count() {
        return Some(format!(
            "tangent line count differs: {} vs {}",
            sx.line_count(),
            sy.line_count()
        ));
    }
    if sx.multiplicities() != sy.multiplicities() {
        return Some(format!(
            "branch multiplicities differ: {:?} vs {:?}",
            sx.multiplicities(),
            sy.multiplicities()
        ));
    }
    if sx != sy {
        return Some(format!("grouping by tangent line differs: {sx} vs {sy}"));
    }
    None
}

/// Bijection between branches preserving multiplicities and the grouping
/// by tangent line; `None` when the signatures differ.
fn matching(x: &GermReport, y: &GermReport) -> Option<Vec<(usize, usize)>> {
    let sorted = |r: &GermReport| {
        let mut g = line_groups(r);
        g.sort_by_key(|grp| (group_mults(r, grp), grp.first().copied()));
        g
    };
    let (gx, gy) = (sorted(x), sorted(y));
    if gx.len() != gy.len() {
        return None;
    }
    let mut sigma = Vec::new();
    for (a, b) in gx.iter().zip(&gy) {
        if group_mults(x, a) != group_mults(y, b) {
            return None;
        }
        sigma.extend(a.iter().copied().zip(b.iter().copied()));
    }
    sigma.sort_unstable();
    Some(sigma)
}

pub fn equivalent(x: &GermReport, y: &GermReport) -> Result<EquivalenceDecision> {
    require_curve(x)?;
    require_curve(y)?;
    if let Some(cert) = mismatch(x, y) {
        return Ok(EquivalenceDecision {
            equivalent: false,
            sigma: None,
            witness: None,
            certificate: Some(cert),
        });
    }
    let sigma =
        matching(x, y).ok_or_else(|| Error::numerical("equal signatures without a matching"))?;
    let (sx, sy) = (signature(x), signature(y));
    if x.multiplicity != y.multiplicity
        || sx.branch_count() != sy.branch_count()
        || sx.line_count() != sy.line_count()
    {
        return Err(Error::numerical(
            "equivalent germs with different invariants",
        ));
    }
    let pairs = witness(x, y, &sigma)?;
    Ok(EquivalenceDecision {
        equivalent: true,
        sigma: Some(sigma),
        witness: Some(pairs),
        certificate: None,
    })
}

/// Paired parametrizations realizing `sigma`.
pub fn witness(
    x: &GermReport,
    y: &GermReport,
    sigma: &[(usize, usize)],
) -> Result<Vec<WitnessPair>> {
    require_curve(x)?;
    require_curve(y)?;
    if mismatch(x, y).is_some() {
        return Err(Error::NotEquivalent);
    }
    let mut out = Vec::with_capacity(sigma.len());
    for &(i, j) in sigma {
        let (bx, by) = match (x.branches.get(i), y.branches.get(j)) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(Error::invalid(format!(
                    "branch pair ({i}, {j}) out of range"
                )))
            }
        };
        if bx.multiplicity != by.multiplicity {
            return Err(Error::NotEquivalent);
        }
        let x_param = bx.parametrization();
        let y_param = by.parametrization();
        out.push(WitnessPair {
            x: i,
            y: j,
            multiplicity: bx.multiplicity,
            x_form: NormalForm::of(&x_param, WITNESS_TERMS)?,
            y_form: NormalForm::of(&y_param, WITNESS_TERMS)?,
            x_param,
            y_param,
        });
    }
    Ok(out)
}

fn matrix_json(rows: &[Vec<Complex<f64>>]) -> Value {
    Value::Array(rows.iter().map(|r| germ::complex_vec_json(r)).collect())
}

fn side_json(p: &Parametrization<f64>, nf: &NormalForm<f64>) -> Value {
    json!({
        "coordinates": Value::Array(p.coords().iter().map(|c| germ::sparse_json(c)).collect()),
        "align": matrix_json(&nf.align),
    })
}

pub fn witness_json(w: &WitnessPair) -> Value {
    json!({
        "pair": [w.x, w.y],
        "multiplicity": w.multiplicity,
        "x": side_json(&w.x_param, &w.x_form),
        "y": side_json(&w.y_param, &w.y_form),
    })
}

pub fn decision_json(d: &EquivalenceDecision) -> Value {
    json!({
        "equivalent": d.equivalent,
        "sigma": d.sigma.as_ref().map(|s| s.iter().map(|(i, j)| json!([i, j])).collect::<Vec<_>>()),
        "certificate": d.certificate,
        "witness": d.witness.as_ref().map(|w| w.iter().map(witness_json).collect::<Vec<_>>()),
    })
}
