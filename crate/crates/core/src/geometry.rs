//! Geometric loci in p-, λ- and t-space: simplex edges and medians,
//! constant-invariant curves and surfaces, the physical boundary of qutrit
//! t-space, and permuted ("flower") copies of a curve.

use std::f64::consts::{FRAC_PI_6, PI, SQRT_2};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gellmann::{simplex_frame, SimplexFrame};
use crate::roots::smallest_nonnegative_root;
use crate::states::{in_simplex, power_sums, DiagonalMap};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    P,
    Lambda,
    T,
}

/// Sample counts for curves and `(θ, φ)` surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Sampling {
    pub curve: usize,
    pub theta: usize,
    pub phi: usize,
}

impl Default for Sampling {
    fn default() -> Self {
        Self { curve: 512, theta: 128, phi: 256 }
    }
}

/// An ordered set of points with the parameter that generated each one.
/// Nodes without a solution carry NaN coordinates and `physical = false`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamCurve {
    pub space: Space,
    pub label: String,
    pub parameter: Vec<f64>,
    pub points: Vec<Vec<f64>>,
    pub physical: Vec<bool>,
    /// Polar radius per node, for curves built from a radial equation.
    pub radius: Option<Vec<f64>>,
}

impl ParamCurve {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Re-expresses a p-space curve in another space.
    pub fn to_space(&self, target: Space) -> Result<ParamCurve> {
        Ok(ParamCurve { space: target, points: convert_points(self.space, target, &self.points)?, ..self.clone() })
    }
}

/// A two-parameter family of points in row-major order (`u` outer, `v` inner).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceMesh {
    pub space: Space,
    pub label: String,
    pub param_names: [&'static str; 2],
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub points: Vec<Vec<f64>>,
    pub physical: Vec<bool>,
    pub radius: Option<Vec<f64>>,
}

impl SurfaceMesh {
    pub fn node(&self, i: usize, j: usize) -> &[f64] {
        &self.points[i * self.v.len() + j]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn to_space(&self, target: Space) -> Result<SurfaceMesh> {
        Ok(SurfaceMesh { space: target, points: convert_points(self.space, target, &self.points)?, ..self.clone() })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Locus {
    Curve(ParamCurve),
    Surface(SurfaceMesh),
}

fn convert_points(from: Space, to: Space, points: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    if from == to {
        return Ok(points.to_vec());
    }
    if from != Space::P {
        return Err(Error::domain("only p-space data can be converted"));
    }
    let Some(n) = points.first().map(Vec::len) else {
        return Ok(Vec::new());
    };
    let map = DiagonalMap::new(n)?;
    Ok(points
        .iter()
        .map(|p| match to {
            Space::Lambda => map.raw_p_to_lambda(p),
            Space::T => power_sums(p),
            Space::P => unreachable!(),
        })
        .collect())
}

fn physical(p: &[f64]) -> bool {
    in_simplex(p, Tolerances::DEFAULT.probability)
}

/// `count` evenly spaced values in `[lo, hi]` including both ends.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (count - 1) as f64;
            let mut v: Vec<f64> = (0..count).map(|i| lo + step * i as f64).collect();
            v[count - 1] = hi;
            v
        }
    }
}

fn segment(label: String, from: &[f64], to: &[f64], samples: usize) -> ParamCurve {
    let xs = linspace(0.0, 1.0, samples);
    let points: Vec<Vec<f64>> =
        xs.iter().map(|&x| from.iter().zip(to).map(|(a, b)| a + (b - a) * x).collect()).collect();
    let physical = points.iter().map(|p| physical(p)).collect();
    ParamCurve { space: Space::P, label, parameter: xs, points, physical, radius: None }
}

fn vertex(n: usize, k: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    v[k] = 1.0;
    v
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < 2 {
        return Err(Error::domain(format!("need at least 2 samples, got {samples}")));
    }
    Ok(())
}

/// One segment `p_j + (p_k - p_j)x` per vertex pair, pairs in lexicographic order.
pub fn simplex_edges(n: usize, samples: usize) -> Result<Vec<ParamCurve>> {
    if n < 3 {
        return Err(Error::InvalidDimension(n));
    }
    check_samples(samples)?;
    Ok((0..n)
        .tuple_combinations()
        .map(|(j, k)| segment(format!("edge-{}{}", j + 1, k + 1), &vertex(n, j), &vertex(n, k), samples))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Medians {
    Curves(Vec<ParamCurve>),
    Planes(Vec<SurfaceMesh>),
}

/// Equal-probability loci: the three medians of the qutrit triangle, or the
/// six `p_m = p_ℓ` cut planes of the ququart tetrahedron.
pub fn simplex_medians(n: usize, samples: usize) -> Result<Medians> {
    check_samples(samples)?;
    match n {
        3 => Ok(Medians::Curves(
            (0..3)
                .map(|j| {
                    let (k, l) = ((j + 1) % 3, (j + 2) % 3);
                    let (k, l) = (k.min(l), k.max(l));
                    let mid: Vec<f64> = (0..3).map(|i| if i == k || i == l { 0.5 } else { 0.0 }).collect();
                    segment(format!("median-{}{}{}", j + 1, k + 1, l + 1), &vertex(3, j), &mid, samples)
                })
                .collect(),
        )),
        4 => Ok(Medians::Planes((0..4).tuple_combinations().map(|(m, l)| cut_plane(m, l, samples)).collect())),
        _ => Err(Error::InvalidDimension(n)),
    }
}

/// Triangle `p_m = p_ℓ` spanned by the two other vertices and the midpoint of
/// edge `mℓ`, as `(1-s)·p_j + s·[(1-w)·p_k + w·mid]`.
fn cut_plane(m: usize, l: usize, samples: usize) -> SurfaceMesh {
    let others: Vec<usize> = (0..4).filter(|&i| i != m && i != l).collect();
    let (vj, vk) = (vertex(4, others[0]), vertex(4, others[1]));
    let mid: Vec<f64> = (0..4).map(|i| if i == m || i == l { 0.5 } else { 0.0 }).collect();
    let s = linspace(0.0, 1.0, samples);
    let w = linspace(0.0, 1.0, samples);
    let mut points = Vec::with_capacity(samples * samples);
    for &si in &s {
        for &wi in &w {
            points.push((0..4).map(|c| (1.0 - si) * vj[c] + si * ((1.0 - wi) * vk[c] + wi * mid[c])).collect::<Vec<_>>());
        }
    }
    let physical = points.iter().map(|p| physical(p)).collect();
    SurfaceMesh {
        space: Space::P,
        label: format!("cut-p{}=p{}", m + 1, l + 1),
        param_names: ["s", "w"],
        u: s,
        v: w,
        points,
        physical,
        radius: None,
    }
}

/// `count` angles `2πj/(count-1)`, closing the loop.
fn full_turn(count: usize) -> Vec<f64> {
    linspace(0.0, 2.0 * PI, count)
}

/// `sin(3φ_j)` on the closed grid `φ_j = 2πj/m`. When `3 | m` the argument is
/// reduced on integers so nodes `2π/3` apart get identical values.
fn sin_three_phi(j: usize, m: usize) -> f64 {
    if m.is_multiple_of(3) {
        (2.0 * PI * ((3 * j) % m) as f64 / m as f64).sin()
    } else {
        (3.0 * 2.0 * PI * j as f64 / m as f64).sin()
    }
}

fn qutrit_point(frame: &SimplexFrame, radius: f64, angle: f64) -> Vec<f64> {
    frame.expand(&[radius * angle.cos(), radius * angle.sin()])
}

fn check_range(name: &str, value: f64, lo: f64, hi: f64) -> Result<()> {
    let slack = 1e-12;
    if !(value >= lo - slack && value <= hi + slack) {
        return Err(Error::domain(format!("{name} = {value} outside [{lo}, {hi}]")));
    }
    Ok(())
}

/// Points of fixed purity: a circle around `p_e` for n = 3 (parameter α, the
/// frame angle), a sphere for n = 4 (parameters θ, φ).
pub fn constant_t2_locus(n: usize, t2: f64, sampling: &Sampling) -> Result<Locus> {
    match n {
        3 => {
            check_range("t2", t2, 1.0 / 3.0, 1.0)?;
            check_samples(sampling.curve)?;
            let frame = simplex_frame(3)?;
            let radius = ((3.0 * t2 - 1.0) / 3.0).max(0.0).sqrt();
            let alpha = full_turn(sampling.curve);
            let points: Vec<Vec<f64>> = alpha.iter().map(|&a| qutrit_point(&frame, radius, a)).collect();
            let physical = points.iter().map(|p| physical(p)).collect();
            Ok(Locus::Curve(ParamCurve {
                space: Space::P,
                label: format!("t2={t2}"),
                radius: Some(vec![radius; alpha.len()]),
                parameter: alpha,
                points,
                physical,
            }))
        }
        4 => {
            check_range("t2", t2, 0.25, 1.0)?;
            // t₂ = (1 + 2r²)/4 with p = p_e + (r/√2)(…); Euclidean radius √(4t₂-1)/2
            let r = ((4.0 * t2 - 1.0) / 2.0).max(0.0).sqrt();
            ququart_surface(format!("t2={t2}"), sampling, |_, _| Some(r))
        }
        _ => Err(Error::InvalidDimension(n)),
    }
}

/// Radius of the qutrit `t₃ = const` curve at angle `alpha` (measured from the
/// direction of vertex `p₁`): smallest root `r ≥ 0` of
/// `1/9 + r² + cos(3α) r³/√6 = t₃`.
pub fn qutrit_t3_radius(t3: f64, alpha: f64) -> Option<f64> {
    qutrit_t3_radius_cos(t3, (3.0 * alpha).cos())
}

fn qutrit_t3_radius_cos(t3: f64, cos3a: f64) -> Option<f64> {
    smallest_nonnegative_root(&[cos3a / 6f64.sqrt(), 1.0, 0.0, 1.0 / 9.0 - t3])
}

/// The curve `Σp³ = t₃` around `p_e`, parametrised by α ∈ [0, 2π] with α = 0
/// pointing at vertex `p₁`.
pub fn constant_t3_locus_qutrit(t3: f64, alpha_samples: usize) -> Result<ParamCurve> {
    check_range("t3", t3, 1.0 / 9.0, 1.0)?;
    check_samples(alpha_samples)?;
    let frame = simplex_frame(3)?;
    let m = alpha_samples - 1;
    let alpha = full_turn(alpha_samples);
    let mut points = Vec::with_capacity(alpha_samples);
    let mut radius = Vec::with_capacity(alpha_samples);
    let mut mask = Vec::with_capacity(alpha_samples);
    for (j, &a) in alpha.iter().enumerate() {
        // cos 3α = sin(3α + π/2); reduce on the integer grid when possible
        let cos3a = if m.is_multiple_of(3) { (2.0 * PI * ((3 * j) % m) as f64 / m as f64).cos() } else { (3.0 * a).cos() };
        match qutrit_t3_radius_cos(t3, cos3a) {
            Some(r) => {
                let p = qutrit_point(&frame, r, a + FRAC_PI_6);
                mask.push(physical(&p));
                points.push(p);
                radius.push(r);
            }
            None => {
                points.push(vec![f64::NAN; 3]);
                radius.push(f64::NAN);
                mask.push(false);
            }
        }
    }
    Ok(ParamCurve { space: Space::P, label: format!("t3={t3}"), parameter: alpha, points, physical: mask, radius: Some(radius) })
}

/// Angular coefficient of `r³` in the ququart polar form of `t₃` and `t₄`.
pub fn ququart_a3(theta: f64, sin3phi: f64) -> f64 {
    -6f64.sqrt() * (3.0 * theta.cos() + 5.0 * (3.0 * theta).cos()) + 8.0 * 3f64.sqrt() * theta.sin().powi(3) * sin3phi
}

/// Angular coefficient of `r⁴` in the ququart polar form of `t₄`.
pub fn ququart_b4(theta: f64, sin3phi: f64) -> f64 {
    45.0 + 4.0 * (2.0 * theta).cos()
        + 7.0 * (4.0 * theta).cos()
        + 32.0 * SQRT_2 * theta.cos() * theta.sin().powi(3) * sin3phi
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuquartInvariant {
    T3,
    T4,
}

/// Radius of the ququart surface `t_k = value` along direction `(θ, φ)`,
/// given `sin 3φ`.
pub fn ququart_radius(which: QuquartInvariant, value: f64, theta: f64, sin3phi: f64) -> Option<f64> {
    let a3 = ququart_a3(theta, sin3phi);
    match which {
        QuquartInvariant::T3 => smallest_nonnegative_root(&[a3 / 96.0, 3.0 / 8.0, 0.0, 1.0 / 16.0 - value]),
        QuquartInvariant::T4 => {
            let b4 = ququart_b4(theta, sin3phi);
            smallest_nonnegative_root(&[b4 / 384.0, a3 / 96.0, 3.0 / 16.0, 0.0, 1.0 / 64.0 - value])
        }
    }
}

fn ququart_surface(label: String, sampling: &Sampling, radius_at: impl Fn(f64, f64) -> Option<f64> + Sync) -> Result<Locus> {
    check_samples(sampling.theta)?;
    check_samples(sampling.phi)?;
    let frame = simplex_frame(4)?;
    let theta = linspace(0.0, PI, sampling.theta);
    let phi = full_turn(sampling.phi);
    let m = sampling.phi - 1;
    let rows: Vec<Vec<(Vec<f64>, f64, bool)>> = theta
        .par_iter()
        .map(|&th| {
            let (st, ct) = th.sin_cos();
            phi.iter()
                .enumerate()
                .map(|(j, &ph)| match radius_at(th, sin_three_phi(j, m)) {
                    Some(r) => {
                        let (sp, cp) = ph.sin_cos();
                        let s = r / SQRT_2;
                        let p = frame.expand(&[s * cp * st, s * sp * st, s * ct]);
                        let ok = physical(&p);
                        (p, r, ok)
                    }
                    None => (vec![f64::NAN; 4], f64::NAN, false),
                })
                .collect()
        })
        .collect();
    let (mut points, mut radius, mut mask) = (Vec::new(), Vec::new(), Vec::new());
    for (p, r, ok) in rows.into_iter().flatten() {
        points.push(p);
        radius.push(r);
        mask.push(ok);
    }
    Ok(Locus::Surface(SurfaceMesh {
        space: Space::P,
        label,
        param_names: ["theta", "phi"],
        u: theta,
        v: phi,
        points,
        physical: mask,
        radius: Some(radius),
    }))
}

/// The ququart surface `t₃ = value` or `t₄ = value` on a `(θ, φ)` grid.
pub fn constant_invariant_surface_ququart(which: QuquartInvariant, value: f64, sampling: &Sampling) -> Result<SurfaceMesh> {
    let (name, lo) = match which {
        QuquartInvariant::T3 => ("t3", 1.0 / 16.0),
        QuquartInvariant::T4 => ("t4", 1.0 / 64.0),
    };
    check_range(name, value, lo, 1.0)?;
    match ququart_surface(format!("{name}={value}"), sampling, |th, s3| ququart_radius(which, value, th, s3))? {
        Locus::Surface(s) => Ok(s),
        Locus::Curve(_) => unreachable!(),
    }
}

/// Upper (two equal eigenvalues) branch `t₃ = t₂ - 2/9 + (3t₂-1)^{3/2}/(9√2)`.
pub fn boundary_upper(t2: f64) -> f64 {
    t2 - 2.0 / 9.0 + (3.0 * t2 - 1.0).max(0.0).powf(1.5) / (9.0 * SQRT_2)
}

/// Short lower (two equal eigenvalues) branch.
pub fn boundary_lower(t2: f64) -> f64 {
    t2 - 2.0 / 9.0 - (3.0 * t2 - 1.0).max(0.0).powf(1.5) / (9.0 * SQRT_2)
}

/// One vanishing eigenvalue: `t₃ = (3t₂ - 1)/2`.
pub fn boundary_zero(t2: f64) -> f64 {
    0.5 * (3.0 * t2 - 1.0)
}

/// Bisection for a sign change of `f` on `[lo, hi]`.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `t₂` where the short lower branch meets the zero-eigenvalue branch.
pub fn lower_zero_intersection() -> f64 {
    bisect(|t2| boundary_lower(t2) - boundary_zero(t2), 1.0 / 3.0, 1.0)
}

/// The three arcs bounding the physical qutrit region in `(t₂, t₃)`:
/// upper, short lower, and zero-eigenvalue, each parametrised by `t₂`.
pub fn t_space_boundary_qutrit(t2_samples: usize) -> Result<[ParamCurve; 3]> {
    check_samples(t2_samples)?;
    let meet = lower_zero_intersection();
    let arc = |label: &str, lo: f64, hi: f64, f: fn(f64) -> f64| {
        let t2 = linspace(lo, hi, t2_samples);
        ParamCurve {
            space: Space::T,
            label: label.to_string(),
            points: t2.iter().map(|&x| vec![x, f(x)]).collect(),
            physical: vec![true; t2.len()],
            parameter: t2,
            radius: None,
        }
    };
    Ok([
        arc("upper", 1.0 / 3.0, 1.0, boundary_upper),
        arc("lower", 1.0 / 3.0, meet, boundary_lower),
        arc("zero-eigenvalue", meet, 1.0, boundary_zero),
    ])
}

/// A straight λ-space segment and its t-space image.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SegmentImage {
    pub label: &'static str,
    pub lambda_curve: ParamCurve,
    /// Image computed from the invariants of each point.
    pub t_curve: ParamCurve,
    /// The closed form as printed in the source text.
    pub printed_form: &'static str,
    /// Largest deviation of the printed closed form from the computed image.
    pub printed_max_deviation: f64,
}

impl SegmentImage {
    pub fn printed_agrees(&self, tol: f64) -> bool {
        self.printed_max_deviation <= tol
    }
}

/// Images of the qutrit segments centre→vertex (`ep`), centre→edge-midpoint
/// (`em`) and midpoint→vertex (`mp`) in t-space.
pub fn lambda_segment_images(samples: usize) -> Result<Vec<SegmentImage>> {
    check_samples(samples)?;
    let map = DiagonalMap::new(3)?;
    let e = [1.0 / 3.0; 3];
    let p1 = [1.0, 0.0, 0.0];
    let p2 = [0.0, 1.0, 0.0];
    let m12 = [0.5, 0.5, 0.0];
    type Family = (&'static str, [f64; 3], [f64; 3], f64, f64, &'static str, fn(f64) -> [f64; 2]);
    let families: [Family; 3] = [
        ("t1-ep", e, p1, 0.0, 1.0, "((3 + 6x^2)/9, (1 + 6x^2 + 2x^3)/9)", |x| {
            [(3.0 + 6.0 * x * x) / 9.0, (1.0 + 6.0 * x * x + 2.0 * x.powi(3)) / 9.0]
        }),
        ("t12-em", e, m12, 0.0, 1.0, "((1 + x^2/2)/3, (1/3 + x^2/2 - x^3/12)/3)", |x| {
            [(1.0 + x * x / 2.0) / 3.0, (1.0 / 3.0 + x * x / 2.0 - x.powi(3) / 12.0) / 3.0]
        }),
        ("t21-mp", p2, p1, 0.5, 1.0, "(1 - 2x + 2x^2, 1 - 3x + x^2)", |x| [1.0 - 2.0 * x + 2.0 * x * x, 1.0 - 3.0 * x + x * x]),
    ];
    Ok(families
        .into_iter()
        .map(|(label, from, to, lo, hi, printed_form, printed)| {
            let xs = linspace(lo, hi, samples);
            let ps: Vec<Vec<f64>> = xs.iter().map(|&x| (0..3).map(|i| from[i] + (to[i] - from[i]) * x).collect()).collect();
            let ts: Vec<Vec<f64>> = ps.iter().map(|p| power_sums(p)).collect();
            let printed_max_deviation = xs
                .iter()
                .zip(&ts)
                .map(|(&x, t)| {
                    let pr = printed(x);
                    (pr[0] - t[0]).abs().max((pr[1] - t[1]).abs())
                })
                .fold(0.0, f64::max);
            let curve = |space, points| ParamCurve {
                space,
                label: label.to_string(),
                parameter: xs.clone(),
                physical: vec![true; xs.len()],
                points,
                radius: None,
            };
            SegmentImage {
                label,
                lambda_curve: curve(Space::Lambda, ps.iter().map(|p| map.raw_p_to_lambda(p)).collect()),
                t_curve: curve(Space::T, ts),
                printed_form,
                printed_max_deviation,
            }
        })
        .collect())
}

/// All `n!` coordinate permutations of a p-space curve, lexicographic with the
/// identity first. Entry `i` of a permuted point is `p[perm[i]]`.
pub fn permutation_images(curve: &ParamCurve) -> Result<Vec<(Vec<usize>, ParamCurve)>> {
    if curve.space != Space::P {
        return Err(Error::domain("permutation images need a p-space curve"));
    }
    let Some(n) = curve.points.first().map(Vec::len) else {
        return Ok(Vec::new());
    };
    Ok((0..n)
        .permutations(n)
        .map(|perm| {
            let points = curve.points.iter().map(|p| perm.iter().map(|&k| p[k]).collect()).collect();
            let label = format!("{}[{}]", curve.label, perm.iter().map(|k| (k + 1).to_string()).join(""));
            (perm, ParamCurve { label, points, ..curve.clone() })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Sampling {
        Sampling { curve: 181, theta: 25, phi: 64 }
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn edges() {
        let e = simplex_edges(3, 3).unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(e[0].points[0], vec![1.0, 0.0, 0.0]);
        assert_eq!(e[0].points[1], vec![0.5, 0.5, 0.0]);
        assert!(close(&power_sums(&e[0].points[1]), &[0.5, 0.25], 1e-15));
        assert_eq!(simplex_edges(4, 2).unwrap().len(), 6);
        assert!(simplex_edges(2, 5).is_err());
        assert!(simplex_edges(3, 1).is_err());
    }

    #[test]
    fn medians() {
        let Medians::Curves(m) = simplex_medians(3, 4).unwrap() else { panic!() };
        assert_eq!(m.len(), 3);
        assert_eq!(m[0].points[3], vec![0.0, 0.5, 0.5]);
        for c in &m {
            assert!(close(&c.points[2], &[1.0 / 3.0; 3], 1e-15), "{:?}", c.points[2]);
        }
        let Medians::Planes(planes) = simplex_medians(4, 9).unwrap() else { panic!() };
        assert_eq!(planes.len(), 6);
        for pl in &planes {
            assert!(pl.physical.iter().all(|&b| b));
        }
        // plane p₃ = p₄
        let pl = &planes[5];
        assert!(pl.points.iter().all(|p| (p[2] - p[3]).abs() < 1e-15));
        assert!(simplex_medians(5, 9).is_err());
    }

    #[test]
    fn t2_circle() {
        let Locus::Curve(c) = constant_t2_locus(3, 1.0 / 3.0, &small()).unwrap() else { panic!() };
        assert!(c.points.iter().all(|p| close(p, &[1.0 / 3.0; 3], 1e-15)));
        let s = Sampling { curve: 13, ..small() };
        let Locus::Curve(c) = constant_t2_locus(3, 1.0, &s).unwrap() else { panic!() };
        // node 1 is α = π/6
        assert!(close(&c.points[1], &[1.0, 0.0, 0.0], 1e-15), "{:?}", c.points[1]);
        let Locus::Curve(c) = constant_t2_locus(3, 0.5, &small()).unwrap() else { panic!() };
        assert!(c.points.iter().all(|p| (power_sums(p)[0] - 0.5).abs() < 1e-12));
        assert!(constant_t2_locus(3, 0.2, &small()).is_err());
        assert!(constant_t2_locus(3, 1.1, &small()).is_err());
    }

    #[test]
    fn t2_sphere() {
        let Locus::Surface(s) = constant_t2_locus(4, 0.5, &small()).unwrap() else { panic!() };
        assert!(s.points.iter().all(|p| (power_sums(p)[0] - 0.5).abs() < 1e-12));
        // radius 1/2 exceeds the inradius 1/√12, so part of it is unphysical
        assert!(s.physical.iter().any(|&b| b) && s.physical.iter().any(|&b| !b));
        // t₂ = 1/3 is the inscribed sphere
        let Locus::Surface(s) = constant_t2_locus(4, 1.0 / 3.0, &small()).unwrap() else { panic!() };
        assert!(s.physical.iter().all(|&b| b));
        let Locus::Surface(s) = constant_t2_locus(4, 0.25, &small()).unwrap() else { panic!() };
        assert!(s.points.iter().all(|p| close(p, &[0.25; 4], 1e-15)));
        // Euclidean distance from the centre is √(4t₂-1)/2
        let Locus::Surface(s) = constant_t2_locus(4, 0.7, &small()).unwrap() else { panic!() };
        let want = (4.0f64 * 0.7 - 1.0).sqrt() / 2.0;
        for p in &s.points {
            let d = p.iter().map(|x| (x - 0.25).powi(2)).sum::<f64>().sqrt();
            assert!((d - want).abs() < 1e-14);
        }
    }

    #[test]
    fn t3_curve_values() {
        let c = constant_t3_locus_qutrit(1.0 / 9.0, 64).unwrap();
        assert!(c.radius.as_ref().unwrap().iter().all(|&r| r == 0.0));
        let r = qutrit_t3_radius(1.0, 0.0).unwrap();
        assert!((r - (2.0f64 / 3.0).sqrt()).abs() < 1e-14);
        let c = constant_t3_locus_qutrit(1.0, 4).unwrap();
        assert!(close(&c.points[0], &[1.0, 0.0, 0.0], 1e-14), "{:?}", c.points[0]);
        let c = constant_t3_locus_qutrit(0.25, 512).unwrap();
        for p in &c.points {
            let s: f64 = p.iter().map(|x| x.powi(3)).sum();
            assert!((s - 0.25).abs() < 1e-10);
        }
        assert!(constant_t3_locus_qutrit(0.1, 8).is_err());
    }

    #[test]
    fn t3_curve_symmetry_and_stability() {
        for &t3 in &[109.0 / 600.0, 0.25, 11.0 / 18.0] {
            for i in 0..200 {
                let a = 2.0 * PI * i as f64 / 200.0;
                let r0 = qutrit_t3_radius(t3, a).unwrap();
                let r1 = qutrit_t3_radius(t3, a + 2.0 * PI / 3.0).unwrap();
                assert!((r0 - r1).abs() < 1e-12);
                let r2 = qutrit_t3_radius(t3 + 1e-9, a).unwrap();
                assert!((r2 - r0).abs() < 1e-5);
            }
        }
        // 3 | 510: nodes 170 apart are bitwise equal
        let c = constant_t3_locus_qutrit(0.25, 511).unwrap();
        let r = c.radius.unwrap();
        for j in 0..340 {
            assert_eq!(r[j], r[j + 170]);
        }
    }

    #[test]
    fn t3_curve_masks_continuations() {
        // 11/18 pokes outside the triangle between the vertices
        let c = constant_t3_locus_qutrit(11.0 / 18.0, 360).unwrap();
        assert!(c.physical.iter().any(|&b| b) && c.physical.iter().any(|&b| !b));
        for (p, &ok) in c.points.iter().zip(&c.physical) {
            if ok {
                assert!(p.iter().all(|&x| x >= -1e-12));
                assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn ququart_coefficients_match_direct_expansion() {
        // oracle: expand p along the frame and sum powers directly
        let frame = simplex_frame(4).unwrap();
        for &(th, ph, r) in &[(0.3_f64, 1.1_f64, 0.4_f64), (2.0, -0.7, 0.9), (1.2, 2.5, 1.1)] {
            let s = r / SQRT_2;
            let p = frame.expand(&[s * ph.cos() * th.sin(), s * ph.sin() * th.sin(), s * th.cos()]);
            let t = power_sums(&p);
            let s3 = (3.0 * ph).sin();
            let a3 = ququart_a3(th, s3);
            let b4 = ququart_b4(th, s3);
            assert!((t[1] - (1.0 / 16.0 + 3.0 * r * r / 8.0 + a3 * r.powi(3) / 96.0)).abs() < 1e-14);
            let t4 = 1.0 / 64.0 + 3.0 * r * r / 16.0 + a3 * r.powi(3) / 96.0 + b4 * r.powi(4) / 384.0;
            assert!((t[2] - t4).abs() < 1e-14);
        }
    }

    #[test]
    fn ququart_surfaces() {
        let s = constant_invariant_surface_ququart(QuquartInvariant::T3, 1.0 / 16.0, &small()).unwrap();
        assert!(s.points.iter().all(|p| close(p, &[0.25; 4], 1e-12)));
        let s = constant_invariant_surface_ququart(QuquartInvariant::T4, 1.0 / 64.0, &small()).unwrap();
        assert!(s.points.iter().all(|p| close(p, &[0.25; 4], 1e-12)));
        for (which, v, k) in [(QuquartInvariant::T3, 7.0 / 40.0, 1), (QuquartInvariant::T3, 0.1, 1), (QuquartInvariant::T4, 1.0 / 32.0, 2), (QuquartInvariant::T4, 5.0 / 64.0, 2)] {
            let s = constant_invariant_surface_ququart(which, v, &small()).unwrap();
            let mut solved = 0;
            for p in &s.points {
                if p[0].is_nan() {
                    continue;
                }
                solved += 1;
                assert!((power_sums(p)[k] - v).abs() < 1e-9, "{which:?} {v}");
            }
            assert!(solved > 0);
        }
        assert!(constant_invariant_surface_ququart(QuquartInvariant::T4, 0.01, &small()).is_err());
    }

    #[test]
    fn ququart_phi_symmetry() {
        // 3 | 63, so φ and φ + 2π/3 are both grid nodes (21 apart)
        let s = constant_invariant_surface_ququart(QuquartInvariant::T3, 7.0 / 40.0, &small()).unwrap();
        let r = s.radius.as_ref().unwrap();
        let nv = s.v.len();
        for i in 0..s.u.len() {
            for j in 0..nv - 22 {
                let (a, b) = (r[i * nv + j], r[i * nv + j + 21]);
                assert!(a == b || (a.is_nan() && b.is_nan()));
                // the rotated node is a cyclic relabelling of p₁, p₂, p₃
                let (p, q) = (s.node(i, j), s.node(i, j + 21));
                if p[0].is_nan() {
                    continue;
                }
                let mut x = [p[0], p[1], p[2]];
                let mut y = [q[0], q[1], q[2]];
                x.sort_by(f64::total_cmp);
                y.sort_by(f64::total_cmp);
                assert!(close(&x, &y, 1e-12) && (p[3] - q[3]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn boundary_closes_at_vertices() {
        let [up, lo, zero] = t_space_boundary_qutrit(100).unwrap();
        let first = |c: &ParamCurve| c.points[0].clone();
        let last = |c: &ParamCurve| c.points[c.len() - 1].clone();
        assert!(close(&first(&up), &[1.0 / 3.0, 1.0 / 9.0], 1e-10));
        assert!(close(&first(&lo), &[1.0 / 3.0, 1.0 / 9.0], 1e-10));
        assert!(close(&last(&lo), &[0.5, 0.25], 1e-10));
        assert!(close(&first(&zero), &[0.5, 0.25], 1e-10));
        assert!(close(&last(&zero), &[1.0, 1.0], 1e-10));
        assert!(close(&last(&up), &[1.0, 1.0], 1e-10));
        assert!((boundary_upper(1.0) - 1.0).abs() < 1e-15);
        assert!((boundary_upper(1.0 / 3.0) - 1.0 / 9.0).abs() < 1e-15);
        assert_eq!(boundary_zero(0.5), 0.25);
    }

    #[test]
    fn boundary_arcs_are_images_of_edges_and_medians() {
        // (a, a, 1-2a): the larger pair gives the upper arc, the smaller the lower arc
        for i in 0..=50 {
            let a = i as f64 / 150.0 + 1.0 / 3.0 * (i as f64 / 50.0);
            let a = a.min(0.5);
            let t = power_sums(&[a, a, 1.0 - 2.0 * a]);
            let on_upper = (t[1] - boundary_upper(t[0])).abs() < 1e-12;
            let on_lower = (t[1] - boundary_lower(t[0])).abs() < 1e-12;
            assert!(on_upper || on_lower);
        }
        for i in 0..=20 {
            let x = i as f64 / 20.0;
            let t = power_sums(&[x, 1.0 - x, 0.0]);
            assert!((t[1] - boundary_zero(t[0])).abs() < 1e-14);
        }
    }

    #[test]
    fn segment_images() {
        let imgs = lambda_segment_images(101).unwrap();
        assert_eq!(imgs.len(), 3);
        let ep = &imgs[0];
        assert!(close(&ep.t_curve.points[0], &[1.0 / 3.0, 1.0 / 9.0], 1e-15));
        assert!(close(&ep.t_curve.points[100], &[1.0, 1.0], 1e-15));
        assert!(ep.printed_agrees(1e-12));
        assert!(imgs[1].printed_agrees(1e-12));
        // the printed mp form misses the t₂ vertex; the computed image hits it
        let mp = &imgs[2];
        assert!(!mp.printed_agrees(1e-12));
        assert!(close(&mp.t_curve.points[0], &[0.5, 0.25], 1e-15));
        for (x, t) in mp.t_curve.parameter.iter().zip(&mp.t_curve.points) {
            assert!((t[1] - (1.0 - 3.0 * x + 3.0 * x * x)).abs() < 1e-12);
        }
        // λ endpoints: centre and vertex 1
        assert!(close(&ep.lambda_curve.points[100], &[1.0, 1.0 / 3f64.sqrt()], 1e-15));
    }

    #[test]
    fn permutations() {
        let c = constant_t3_locus_qutrit(0.25, 64).unwrap();
        let imgs = permutation_images(&c).unwrap();
        assert_eq!(imgs.len(), 6);
        assert_eq!(imgs[0].0, vec![0, 1, 2]);
        assert_eq!(imgs[0].1.points, c.points);
        let t0 = c.to_space(Space::T).unwrap();
        for (_, img) in &imgs {
            let t = img.to_space(Space::T).unwrap();
            for (a, b) in t.points.iter().zip(&t0.points) {
                assert!(close(a, b, 1e-14));
            }
        }
        assert!(permutation_images(&t0).is_err());
        let e = simplex_edges(4, 3).unwrap();
        assert_eq!(permutation_images(&e[0]).unwrap().len(), 24);
    }
}
