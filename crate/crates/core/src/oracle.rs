//! Numerical spherical blow-up of curve germs.
//!
//! Branches are sampled on circles `|z| = r` and mapped to
//! `(z/|z|, |z|)`. Counting the sheets of the strict transform that pass
//! near a generic boundary point gives an estimate of `k_X` that does not
//! use the symbolic formula.

use std::fmt::Write as _;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::param::Parametrization;
use crate::puiseux::Branch;
use crate::scalar;
use crate::tangentcone::{ConeLine, TangentCone};

pub const DEFAULT_DELTA: f64 = 0.05;
pub const DEFAULT_RADII: [f64; 3] = [1e-2, 1e-3, 1e-4];
pub const DEFAULT_PER_RADIUS: usize = 1024;

/// Largest allowed ratio between the last known series term and `|psi(t)|`.
const TAIL_RATIO: f64 = 1e-6;
/// Points of one sheet further apart than this many steps start a new arc.
const LINK_STEPS: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct SamplePoint {
    pub branch: usize,
    pub radius_index: usize,
    /// Index of the sample on its circle.
    pub step: usize,
    /// Argument of the branch parameter.
    pub angle: f64,
    /// `z/|z|`.
    pub direction: Vec<Complex<f64>>,
    /// `|z|`.
    pub r: f64,
}

#[derive(Clone, Debug)]
pub struct TransformSample {
    pub points: Vec<SamplePoint>,
    pub radii: Vec<f64>,
    pub per_radius: usize,
    pub seed: u64,
    /// Tangent direction of every sampled branch.
    pub tangents: Vec<Vec<Complex<f64>>>,
}

#[derive(Clone, Debug)]
pub struct BoundaryCircle {
    pub line: ConeLine<f64>,
    /// Points `e^{i beta} d` of the circle.
    pub points: Vec<Vec<Complex<f64>>>,
}

#[derive(Clone, Debug)]
pub struct BoundaryEstimate {
    pub circles: Vec<BoundaryCircle>,
    /// Estimated sheet count for each circle.
    pub sheet_counts: Vec<u32>,
}

fn norm(v: &[Complex<f64>]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Distance from a unit vector to the circle `{e^{i b} d}`.
fn circle_distance(d: &[Complex<f64>], u: &[Complex<f64>]) -> f64 {
    (2.0 - 2.0 * scalar::inner(d, u).norm()).max(0.0).sqrt()
}

/// `tau > 0` with `|psi(tau e^{i theta})| = r`, by safeguarded Newton.
fn solve_radius(p: &Parametrization<f64>, lead: f64, m: u32, r: f64, theta: f64) -> Result<f64> {
    let dir = Complex::from_polar(1.0, theta);
    let g = |tau: f64| norm(&p.eval(dir * tau)) - r;
    let mut hi = (r / lead).powf(1.0 / m as f64);
    let mut grow = 0;
    while g(hi) < 0.0 {
        hi *= 2.0;
        grow += 1;
        if grow > 60 {
            return Err(Error::TruncationTooCoarse(format!(
                "no point of norm {r} on the branch"
            )));
        }
    }
    let mut lo = 0.0f64;
    let mut tau = hi;
    for _ in 0..100 {
        let z = p.eval(dir * tau);
        let nz = norm(&z);
        let val = nz - r;
        if val.abs() <= 1e-15 * r {
            break;
        }
        if val < 0.0 {
            lo = tau;
        } else {
            hi = tau;
        }
        let dz = p.eval_derivative(dir * tau);
        let slope = scalar::inner(&z, &dz.iter().map(|w| *w * dir).collect::<Vec<_>>()).re / nz;
        let newton = tau - val / slope;
        tau = if slope > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo <= 1e-16 * hi {
            break;
        }
    }
    Ok(tau)
}

/// Sample each branch on `per_radius` points of the circles `|z| = r`.
pub fn sample_strict_transform(
    branches: &[Branch<f64>],
    radii: &[f64],
    per_radius: usize,
    seed: u64,
) -> Result<TransformSample> {
    if branches.is_empty() {
        return Err(Error::EmptyBranches);
    }
    if radii.is_empty() || radii.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
        return Err(Error::invalid("radii must lie in (0, 1)"));
    }
    if radii.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::invalid("radii must be strictly decreasing"));
    }
    if per_radius == 0 {
        return Err(Error::invalid("per_radius must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(branches.len() * radii.len() * per_radius);
    for (bi, b) in branches.iter().enumerate() {
        let p = b.parametrization();
        let m = p.order().ok_or(Error::NotVanishing)?;
        let lead = norm(
            &p.coords()
                .iter()
                .map(|c| {
                    c.iter()
                        .find(|(k, _)| *k == m)
                        .map(|(_, a)| *a)
                        .unwrap_or_default()
                })
                .collect::<Vec<_>>(),
        );
        let tail = p.precision().map(|_| {
            p.coords()
                .iter()
                .filter_map(|c| c.last().copied())
                .max_by_key(|(k, _)| *k)
                .expect("nonzero parametrization")
        });
        for (ri, &r) in radii.iter().enumerate() {
            let offset: f64 = rng.gen::<f64>() * std::f64::consts::TAU / per_radius as f64;
            for k in 0..per_radius {
                let angle = offset + std::f64::consts::TAU * k as f64 / per_radius as f64;
                let tau = solve_radius(&p, lead, m, r, angle)?;
                if let Some((kt, ct)) = tail {
                    if ct.norm() * tau.powi(kt as i32) > TAIL_RATIO * r {
                        return Err(Error::TruncationTooCoarse(format!(
                            "branch {bi} at radius {r}: series tail is not negligible"
                        )));
                    }
                }
                let z = p.eval(Complex::from_polar(tau, angle));
                let nz = norm(&z);
                let direction = z.iter().map(|w| *w / nz).collect();
                points.push(SamplePoint {
                    branch: bi,
                    radius_index: ri,
                    step: k,
                    angle,
                    direction,
                    r: nz,
                });
            }
        }
    }
    Ok(TransformSample {
        points,
        radii: radii.to_vec(),
        per_radius,
        seed,
        tangents: branches.iter().map(|b| b.tangent.clone()).collect(),
    })
}

/// A run of consecutive samples of one branch on one circle.
struct Arc {
    branch: usize,
    radius_index: usize,
    /// Circular mean of the parameter arguments.
    angle: f64,
}

fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}

fn arcs_near(sample: &TransformSample, p: &[Complex<f64>], delta: f64) -> Vec<Arc> {
    let n = sample.per_radius;
    let mut hits: std::collections::BTreeMap<(usize, usize), Vec<(usize, f64)>> =
        Default::default();
    for pt in &sample.points {
        let d2: f64 = pt
            .direction
            .iter()
            .zip(p)
            .map(|(a, b)| (*a - *b).norm_sqr())
            .sum::<f64>()
            + pt.r * pt.r;
        if d2 < delta * delta {
            hits.entry((pt.branch, pt.radius_index))
                .or_default()
                .push((pt.step, pt.angle));
        }
    }
    let mut arcs = Vec::new();
    for ((branch, radius_index), mut steps) in hits {
        steps.sort_by_key(|s| s.0);
        let mut runs: Vec<Vec<(usize, f64)>> = Vec::new();
        for s in steps {
            match runs.last_mut() {
                Some(run) if s.0 - run.last().expect("nonempty").0 <= LINK_STEPS => run.push(s),
                _ => runs.push(vec![s]),
            }
        }
        if runs.len() > 1 {
            let first = runs[0][0].0;
            let last = runs.last().expect("nonempty").last().expect("nonempty").0;
            if first + n - last <= LINK_STEPS {
                let head = runs.remove(0);
                runs.last_mut().expect("nonempty").extend(head);
            }
        }
        for run in runs {
            let mean: Complex<f64> = run.iter().map(|(_, a)| Complex::from_polar(1.0, *a)).sum();
            arcs.push(Arc {
                branch,
                radius_index,
                angle: mean.arg(),
            });
        }
    }
    arcs
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    parent[i] = r;
    r
}

/// Number of sheets through the ball of radius `delta` around `(p, 0)`:
/// arcs of the same branch on successive sampled circles are linked when
/// they are mutually nearest in parameter angle.
fn count_sheets(sample: &TransformSample, p: &[Complex<f64>], delta: f64) -> usize {
    let arcs = arcs_near(sample, p, delta);
    let mut parent: Vec<usize> = (0..arcs.len()).collect();
    for b in 0..sample.tangents.len() {
        let levels: Vec<Vec<usize>> = (0..sample.radii.len())
            .map(|ri| {
                (0..arcs.len())
                    .filter(|&a| arcs[a].branch == b && arcs[a].radius_index == ri)
                    .collect()
            })
            .filter(|v: &Vec<usize>| !v.is_empty())
            .collect();
        for pair in levels.windows(2) {
            let (upper, lower) = (&pair[0], &pair[1]);
            let nearest = |a: usize, among: &[usize]| {
                *among
                    .iter()
                    .min_by(|x, y| {
                        angle_gap(arcs[a].angle, arcs[**x].angle)
                            .total_cmp(&angle_gap(arcs[a].angle, arcs[**y].angle))
                    })
                    .expect("nonempty level")
            };
            for &a in upper {
                let b2 = nearest(a, lower);
                if nearest(b2, upper) == a {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b2));
                    parent[ra] = rb;
                }
            }
        }
    }
    (0..arcs.len())
        .filter(|&a| find(&mut parent, a) == a)
        .count()
}

/// Estimated number of sheets of the strict transform over a generic point
/// of the boundary circle of `direction`.
pub fn estimate_k(sample: &TransformSample, direction: &[Complex<f64>], delta: f64) -> Result<u32> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(Error::invalid("delta must be positive"));
    }
    let d = scalar::normalize_direction(direction);
    // keep the neighbourhood well away from the circles of other lines
    let separation = sample
        .tangents
        .iter()
        .map(|t| circle_distance(&d, t))
        .filter(|&s| s > 1e-6)
        .fold(f64::INFINITY, f64::min);
    let delta = delta.min(separation / 10.0);
    let key = scalar::direction_key(&d).iter().fold(sample.seed, |h, k| {
        h.wrapping_mul(1_000_003).wrapping_add(*k as u64)
    });
    let alpha: f64 = ChaCha8Rng::seed_from_u64(key).gen::<f64>() * std::f64::consts::TAU;
    let phase = Complex::from_polar(1.0, alpha);
    let p: Vec<Complex<f64>> = d.iter().map(|z| *z * phase).collect();
    let k1 = count_sheets(sample, &p, delta);
    let k2 = count_sheets(sample, &p, 2.0 * delta);
    if k1 != k2 {
        return Err(Error::UnstableSampling(format!(
            "sheet counts {k1} and {k2} at neighbourhood radii {delta} and {}",
            2.0 * delta
        )));
    }
    if k1 == 0 {
        return Err(Error::UnstableSampling(
            "no sampled sheet passes near the boundary point".into(),
        ));
    }
    Ok(k1 as u32)
}

/// Boundary circles of every cone line with their sheet counts.
pub fn estimate_boundary(
    sample: &TransformSample,
    cone: &TangentCone<f64>,
    delta: f64,
) -> Result<BoundaryEstimate> {
    let mut circles = Vec::with_capacity(cone.lines.len());
    let mut sheet_counts = Vec::with_capacity(cone.lines.len());
    for line in &cone.lines {
        let points = (0..64)
            .map(|j| {
                let w = Complex::from_polar(1.0, std::f64::consts::TAU * j as f64 / 64.0);
                line.direction.iter().map(|z| *z * w).collect()
            })
            .collect();
        sheet_counts.push(estimate_k(sample, &line.direction, delta)?);
        circles.push(BoundaryCircle {
            line: line.clone(),
            points,
        });
    }
    Ok(BoundaryEstimate {
        circles,
        sheet_counts,
    })
}

/// Largest distance from a sampled direction to the nearest boundary
/// circle, for each radius of the schedule.
pub fn cone_deviation(sample: &TransformSample, cone: &TangentCone<f64>) -> Vec<(f64, f64)> {
    let mut worst = vec![0.0f64; sample.radii.len()];
    for pt in &sample.points {
        let d = cone
            .lines
            .iter()
            .map(|l| circle_distance(&l.direction, &pt.direction))
            .fold(f64::INFINITY, f64::min);
        worst[pt.radius_index] = worst[pt.radius_index].max(d);
    }
    sample.radii.iter().copied().zip(worst).collect()
}

/// Point cloud as CSV: `branch_id, r`, then real and imaginary parts of the
/// unit vector.
pub fn to_csv(sample: &TransformSample) -> String {
    let n = sample.tangents.first().map(Vec::len).unwrap_or(0);
    let mut out = String::from("branch_id,r");
    for i in 1..=n {
        let _ = write!(out, ",u{i}_re,u{i}_im");
    }
    out.push('\n');
    for pt in &sample.points {
        let _ = write!(out, "{},{:e}", pt.branch, pt.r);
        for z in &pt.direction {
            let _ = write!(out, ",{:e},{:e}", z.re, z.im);
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puiseux::puiseux_branches;
    use crate::tangentcone::relative_multiplicities;
    use crate::{parse, Variables};

    fn branches(s: &str) -> Vec<Branch<f64>> {
        puiseux_branches(&parse(s, &Variables::Plane).unwrap(), 12).unwrap()
    }

    #[test]
    fn line_samples_are_exact_circle() {
        let s = sample_strict_transform(&branches("y"), &[0.1], 8, 0).unwrap();
        assert_eq!(s.points.len(), 8);
        for pt in &s.points {
            assert!((pt.r - 0.1).abs() < 1e-15);
            assert!((norm(&pt.direction) - 1.0).abs() < 1e-12);
            assert!(pt.direction[1].norm() == 0.0);
        }
    }

    #[test]
    fn sheet_counts_match_symbolic() {
        for f in [
            "y^2 - x^3",
            "(y^2 - x^3)*(y - 2*x)",
            "y*(y - x^2)",
            "y^3 - x^5",
            "y*(y - x)",
        ] {
            let b = branches(f);
            let cone = relative_multiplicities(&b).unwrap();
            for seed in [0, 1, 2] {
                let s =
                    sample_strict_transform(&b, &DEFAULT_RADII, DEFAULT_PER_RADIUS, seed).unwrap();
                let est = estimate_boundary(&s, &cone, DEFAULT_DELTA).unwrap();
                assert_eq!(est.sheet_counts, cone.relative_mult, "{f} seed {seed}");
            }
        }
    }

    #[test]
    fn cusp_directions_approach_the_line() {
        let b = branches("y^2 - x^3");
        let cone = relative_multiplicities(&b).unwrap();
        let s = sample_strict_transform(&b, &DEFAULT_RADII, 64, 5).unwrap();
        let dev = cone_deviation(&s, &cone);
        for (r, d) in dev {
            assert!(d < 2.0 * r.sqrt(), "r = {r}, deviation {d}");
        }
    }

    #[test]
    fn rejects_bad_schedules() {
        let b = branches("y");
        assert!(sample_strict_transform(&b, &[1e-3, 1e-2], 8, 0).is_err());
        assert!(sample_strict_transform(&[], &[1e-2], 8, 0).is_err());
        let node = branches("y^2 - x^2 - x^3");
        assert!(matches!(
            sample_strict_transform(&node, &[0.9], 8, 0),
            Err(Error::TruncationTooCoarse(_))
        ));
    }

    #[test]
    fn csv_layout() {
        let s = sample_strict_transform(&branches("y"), &[0.1], 2, 0).unwrap();
        let csv = to_csv(&s);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "branch_id,r,u1_re,u1_im,u2_re,u2_im");
        assert_eq!(lines.len(), 3);
    }
}
