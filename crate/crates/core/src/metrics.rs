//! Spherical area, hyperbolic densities and Euclidean boundary geometry for
//! harmonic maps.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::harmonic::{dilatation_sup, DilatationEstimate, HarmonicError, HarmonicMap, DERIVATIVE_FLOOR};
use crate::quadrature::{DiskQuadrature, NodeCounts};
use crate::report::{anchors, VerificationReport};
use crate::series::TruncatedSeries;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricsError {
    #[error("Jacobian {jacobian:e} < 0 at quadrature node z = {z}")]
    NegativeJacobianNode { z: Complex64, jacobian: f64 },
    #[error("point {0} is not inside the unit disk")]
    OutsideDisk(Complex64),
    #[error("derivative vanishes (|h'| = {modulus:e}) at z = {z}")]
    DegenerateDerivative { z: Complex64, modulus: f64 },
    #[error("invalid boundary curve: {0}")]
    InvalidCurve(String),
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
}

/// Normalization of the spherical metric.
///
/// `PaperLiteral` integrates `J/(1+|f|²)²`, which gives the whole sphere
/// area `π`. `CurvaturePlus4` uses `2|dz|/(1+|z|²)`, four times larger,
/// under which the sphere has area `4π`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    #[default]
    PaperLiteral,
    CurvaturePlus4,
}

impl Normalization {
    pub fn factor(self) -> f64 {
        match self {
            Self::PaperLiteral => 1.0,
            Self::CurvaturePlus4 => 4.0,
        }
    }

    /// Area of the whole sphere.
    pub fn sphere_area(self) -> f64 {
        PI * self.factor()
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::PaperLiteral => "paper-literal",
            Self::CurvaturePlus4 => "curvature-plus-4",
        })
    }
}

impl FromStr for Normalization {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper-literal" => Ok(Self::PaperLiteral),
            "curvature-plus-4" => Ok(Self::CurvaturePlus4),
            other => Err(format!(
                "unknown normalization {other:?} (expected paper-literal or curvature-plus-4)"
            )),
        }
    }
}

/// A quadrature value of the spherical area over `|z| ≤ ρ_max`.
///
/// `estimated_error` is the difference from the same rule with half the
/// nodes in each direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AreaEstimate {
    pub value: f64,
    pub rho_max: f64,
    pub nodes: NodeCounts,
    pub estimated_error: f64,
    pub normalization: Normalization,
}

fn area_with<F>(q: &DiskQuadrature, norm: Normalization, integrand: F) -> Result<AreaEstimate, MetricsError>
where
    F: Fn(Complex64) -> Result<f64, MetricsError> + Sync,
{
    let fine = q.integrate(&integrand)?;
    let coarse = q.coarsened().integrate(&integrand)?;
    let k = norm.factor();
    Ok(AreaEstimate {
        value: k * fine,
        rho_max: q.rho_max(),
        nodes: q.node_counts(),
        estimated_error: k * (fine - coarse).abs(),
        normalization: norm,
    })
}

/// `∬ J_f / (1 + |f|²)² dA` over the quadrature disk.
pub fn spherical_area(f: &HarmonicMap, q: &DiskQuadrature, norm: Normalization) -> Result<AreaEstimate, MetricsError> {
    area_with(q, norm, |z| {
        let jacobian = f.jacobian(z);
        if jacobian < 0.0 {
            return Err(MetricsError::NegativeJacobianNode { z, jacobian });
        }
        Ok(jacobian / (1.0 + f.eval(z).norm_sqr()).powi(2))
    })
}

/// `∬ |h'|² / (1 + |h|²)² dA`, the analytic special case.
pub fn spherical_area_analytic(
    h: &TruncatedSeries,
    q: &DiskQuadrature,
    norm: Normalization,
) -> Result<AreaEstimate, MetricsError> {
    let dh = h.derivative();
    area_with(q, norm, |z| {
        Ok(dh.evaluate(z).norm_sqr() / (1.0 + h.evaluate(z).norm_sqr()).powi(2))
    })
}

/// Closed form `πρ²/(1+ρ²)` for the identity on `|z| ≤ ρ` (literal
/// normalization).
pub fn identity_area_closed_form(rho: f64) -> f64 {
    2.0 * PI * (0.5 - 0.5 / (1.0 + rho * rho))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AreaInequality {
    pub report: VerificationReport,
    pub alpha: DilatationEstimate,
    pub area_f: AreaEstimate,
    pub area_h: AreaEstimate,
}

/// `(1 - α²)/4 · A_s(h) ≤ A_s(f)` with `α` the grid supremum of the
/// dilatation, both areas on the same grid.
pub fn area_inequality_check(
    f: &HarmonicMap,
    q: &DiskQuadrature,
    norm: Normalization,
    tol: f64,
) -> Result<AreaInequality, MetricsError> {
    let alpha = dilatation_sup(f, q)?;
    let area_f = spherical_area(f, q, norm)?;
    let area_h = spherical_area_analytic(f.h(), q, norm)?;
    let shrink = 1.0 - alpha.sup * alpha.sup;
    let lhs = shrink / 4.0 * area_h.value;
    let report = VerificationReport::upper("area.inequality", lhs, area_f.value, tol, anchors::AREA_INEQUALITY)
        .with_note(format!(
            "alpha = {} (grid radius {}); A_s(h) = {}, A_s(f) = {}; A_s(h) cap from proof path 16π/(1-α²) = {}",
            alpha.sup,
            alpha.max_radius,
            area_h.value,
            area_f.value,
            16.0 * PI / shrink
        ));
    Ok(AreaInequality {
        report,
        alpha,
        area_f,
        area_h,
    })
}

/// `λ_𝔻(z) = 1/(1 - |z|²)`.
pub fn hyperbolic_density_disk(z: Complex64) -> Result<f64, MetricsError> {
    let s = z.norm_sqr();
    if !(s < 1.0) {
        return Err(MetricsError::OutsideDisk(z));
    }
    Ok(1.0 / (1.0 - s))
}

/// Density of `h(𝔻)` at `h(z)`, `λ_𝔻(z)/|h'(z)|`, for univalent `h`.
pub fn hyperbolic_density_image(h: &TruncatedSeries, z: Complex64) -> Result<f64, MetricsError> {
    let lambda = hyperbolic_density_disk(z)?;
    let modulus = h.derivative().evaluate(z).norm();
    if modulus < DERIVATIVE_FLOOR {
        return Err(MetricsError::DegenerateDerivative { z, modulus });
    }
    Ok(lambda / modulus)
}

/// Sampled boundary: one or more polylines.
///
/// `h_max` is the longest segment, the declared resolution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCurve {
    components: Vec<Vec<Complex64>>,
    closed: bool,
    h_max: f64,
}

impl BoundaryCurve {
    pub fn new(points: Vec<Complex64>, closed: bool) -> Result<Self, MetricsError> {
        Self::from_components(vec![points], closed)
    }

    pub fn from_components(components: Vec<Vec<Complex64>>, closed: bool) -> Result<Self, MetricsError> {
        if components.is_empty() {
            return Err(MetricsError::InvalidCurve("no components".into()));
        }
        let min_points = if closed { 3 } else { 2 };
        for c in &components {
            if c.len() < min_points {
                return Err(MetricsError::InvalidCurve(format!("{} points, need at least {min_points}", c.len())));
            }
            if c.iter().any(|w| !(w.re.is_finite() && w.im.is_finite())) {
                return Err(MetricsError::InvalidCurve("non-finite sample".into()));
            }
        }
        let mut curve = Self {
            components,
            closed,
            h_max: 0.0,
        };
        curve.h_max = curve.segments().map(|(p, q)| (q - p).norm()).fold(0.0, f64::max);
        Ok(curve)
    }

    pub fn circle(center: Complex64, radius: f64, samples: usize) -> Result<Self, MetricsError> {
        Self::image_of_circle(|z| center + z * radius, 1.0, samples)
    }

    /// `w(ρ e^{iθ})` at `samples` equispaced angles.
    pub fn image_of_circle<F: Fn(Complex64) -> Complex64>(w: F, rho: f64, samples: usize) -> Result<Self, MetricsError> {
        let pts = (0..samples)
            .map(|k| w(Complex64::from_polar(rho, 2.0 * PI * k as f64 / samples as f64)))
            .collect();
        Self::new(pts, true)
    }

    /// Boundary of `f(𝔻_ρ)` for a truncated harmonic map.
    pub fn image_of_map(f: &HarmonicMap, rho: f64, samples: usize) -> Result<Self, MetricsError> {
        Self::image_of_circle(|z| f.eval(z), rho, samples)
    }

    pub fn image_of_series(h: &TruncatedSeries, rho: f64, samples: usize) -> Result<Self, MetricsError> {
        Self::image_of_circle(|z| h.evaluate(z), rho, samples)
    }

    /// Union of two sampled boundaries.
    pub fn union(mut self, other: Self) -> Self {
        self.components.extend(other.components);
        self.h_max = self.h_max.max(other.h_max);
        self.closed &= other.closed;
        self
    }

    /// Applies `w ↦ t(w)` to every sample.
    pub fn map_points<F: Fn(Complex64) -> Complex64>(&self, t: F) -> Self {
        let comps = self.components.iter().map(|c| c.iter().map(|&w| t(w)).collect()).collect();
        Self::from_components(comps, self.closed).expect("mapped curve keeps its sample count")
    }

    pub fn h_max(&self) -> f64 {
        self.h_max
    }

    pub fn closed(&self) -> bool {
        self.closed
    }

    pub fn components(&self) -> &[Vec<Complex64>] {
        &self.components
    }

    pub fn samples(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.components.iter().flatten().copied()
    }

    pub fn segments(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        let closed = self.closed;
        self.components.iter().flat_map(move |c| {
            let n = c.len();
            let count = if closed { n } else { n - 1 };
            (0..count).map(move |i| (c[i], c[(i + 1) % n]))
        })
    }

    /// Winding number of the closed components around `w` (crossing rule).
    pub fn winding_number(&self, w: Complex64) -> i64 {
        let side = |p: Complex64, q: Complex64| (q.re - p.re) * (w.im - p.im) - (w.re - p.re) * (q.im - p.im);
        self.segments()
            .map(|(p, q)| {
                if p.im <= w.im {
                    (q.im > w.im && side(p, q) > 0.0) as i64
                } else {
                    -((q.im <= w.im && side(p, q) < 0.0) as i64)
                }
            })
            .sum()
    }

    /// Segments of a closed image curve that border the unbounded
    /// zero-winding region, i.e. the boundary of the covered domain when the
    /// curve folds over itself.
    pub fn outer_boundary(&self) -> Result<Self, MetricsError> {
        if !self.closed {
            return Err(MetricsError::InvalidCurve("outer boundary needs a closed curve".into()));
        }
        let segs: Vec<(Complex64, Complex64)> = self.segments().collect();
        let keep: Vec<bool> = segs
            .par_iter()
            .map(|&(p, q)| {
                let d = q - p;
                let normal = Complex64::new(-d.im, d.re) * 1e-4;
                let mid = (p + q) * 0.5;
                self.winding_number(mid + normal) == 0 || self.winding_number(mid - normal) == 0
            })
            .collect();
        let mut comps: Vec<Vec<Complex64>> = Vec::new();
        let mut run: Vec<Complex64> = Vec::new();
        for (&(p, q), &k) in segs.iter().zip(&keep) {
            if k {
                if run.last() != Some(&p) {
                    if run.len() >= 2 {
                        comps.push(std::mem::take(&mut run));
                    }
                    run.clear();
                    run.push(p);
                }
                run.push(q);
            }
        }
        if run.len() >= 2 {
            comps.push(run);
        }
        if keep.iter().all(|&k| k) {
            return Ok(self.clone());
        }
        Self::from_components(comps, false)
    }
}

fn point_segment_distance(w: Complex64, p: Complex64, q: Complex64) -> f64 {
    let d = q - p;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (w - p).norm();
    }
    let t = (((w - p) * d.conj()).re / len2).clamp(0.0, 1.0);
    (w - (p + d * t)).norm()
}

/// Nearest point of a sampled boundary.
///
/// `resolution` bounds how far the distance to the true curve may be from
/// `distance`, assuming each true arc stays within one segment length of
/// its chord: `distance - min_s(dist_s - len_s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NearestBoundary {
    pub distance: f64,
    pub resolution: f64,
}

pub fn nearest_boundary(w: Complex64, curve: &BoundaryCurve) -> NearestBoundary {
    let (distance, lower) = curve
        .segments()
        .map(|(p, q)| {
            let d = point_segment_distance(w, p, q);
            (d, d - (q - p).norm())
        })
        .fold((f64::INFINITY, f64::INFINITY), |(d, l), (ds, ls)| (d.min(ds), l.min(ls)));
    NearestBoundary {
        distance,
        resolution: distance - lower.max(0.0),
    }
}

/// Euclidean distance from `w` to the polyline.
pub fn boundary_distance(w: Complex64, curve: &BoundaryCurve) -> f64 {
    nearest_boundary(w, curve).distance
}

/// `inf_b |log|(w - a)/(b - a)||` with `a` the boundary sample nearest to
/// `w` and `b` ranging over the other samples.
pub fn beta_omega(w: Complex64, curve: &BoundaryCurve) -> f64 {
    let a = curve
        .samples()
        .min_by(|p, q| (w - *p).norm().total_cmp(&(w - *q).norm()))
        .expect("curve has samples");
    let da = (w - a).norm();
    curve
        .samples()
        .filter(|&b| b != a)
        .map(|b| (da / (b - a).norm()).ln().abs())
        .fold(f64::INFINITY, f64::min)
}

/// `Γ(1/4)⁴ / (4π²) ≈ 4.37688`.
pub fn c0_constant() -> f64 {
    libm::tgamma(0.25).powi(4) / (4.0 * PI * PI)
}

// Two-sided report: margin is the distance to the nearer bound.
fn two_sided(
    name: &str,
    value: f64,
    lower: f64,
    upper: f64,
    tol: f64,
    provenance: &str,
) -> VerificationReport {
    let (lo, hi) = (value - lower, upper - value);
    let bound = if lo <= hi { lower } else { upper };
    VerificationReport::from_margin(name, value, bound, lo.min(hi), tol, provenance)
        .with_note(format!("interval [{lower}, {upper}]"))
}

/// `1/4 ≤ d(h(z), ∂Ω) λ_Ω(h(z)) ≤ 1` for univalent `h` with `Γ` sampling
/// `∂h(𝔻)`. The tolerance is `λ` times the boundary resolution.
pub fn koebe_bounds_check(h: &TruncatedSeries, z: Complex64, curve: &BoundaryCurve) -> Result<VerificationReport, MetricsError> {
    let lambda = hyperbolic_density_image(h, z)?;
    let near = nearest_boundary(h.evaluate(z), curve);
    Ok(two_sided(
        "metrics.koebe_quarter",
        near.distance * lambda,
        0.25,
        1.0,
        lambda * near.resolution,
        anchors::KOEBE_QUARTER,
    ))
}

/// `1/(2(β+C₀)) ≤ d(w,∂Ω) λ_Ω(w) ≤ min(1, (2C₀ + π/2)/(2(β+C₀)))`.
pub fn euchypdom_bounds_check(w: Complex64, curve: &BoundaryCurve, lambda: f64, c0: f64) -> VerificationReport {
    let beta = beta_omega(w, curve);
    let near = nearest_boundary(w, curve);
    let lower = 1.0 / (2.0 * (beta + c0));
    let upper = ((2.0 * c0 + PI / 2.0) / (2.0 * (beta + c0))).min(1.0);
    let report = two_sided(
        "metrics.hyperbolic_domain_density",
        near.distance * lambda,
        lower,
        upper,
        lambda * near.resolution,
        anchors::HYPERBOLIC_DISTANCE,
    );
    let note = format!("{}; beta = {beta}, C0 = {c0}", report.note.clone().unwrap_or_default());
    report.with_note(note)
}

/// `1/16 ≤ d(0, ∂D) ≤ 1` within `budget`.
pub fn nearest_boundary_window_check(d0: f64, budget: f64) -> VerificationReport {
    two_sided(
        "distortion.nearest_boundary_window",
        d0,
        1.0 / 16.0,
        1.0,
        budget,
        anchors::NEAREST_BOUNDARY_WINDOW,
    )
}

/// The worst-case constant used for the upper density bound.
pub const DISTORTION_C: f64 = 2.0;

/// Distortion inequalities at one point, with `Γ_Ω` sampling `∂f(𝔻)` and
/// `Γ_D` sampling `∂h(𝔻)`:
///
/// * `(1/16)(1 - |μ(z)|) ≤ d(f(z),∂Ω) λ_D(h(z)) ≤ c` with `c = 2`;
/// * `d(f(z),∂Ω) ≤ 2 d(h(z),∂D)`.
///
/// Tolerances are the boundary resolutions scaled by the factor each
/// distance enters with.
pub fn distortion_checks(
    f: &HarmonicMap,
    z: Complex64,
    omega: &BoundaryCurve,
    d_curve: &BoundaryCurve,
) -> Result<Vec<VerificationReport>, MetricsError> {
    let mu = f.dilatation(z)?.norm();
    let lambda_d = hyperbolic_density_image(f.h(), z)?;
    let near_f = nearest_boundary(f.eval(z), omega);
    let near_h = nearest_boundary(f.h().evaluate(z), d_curve);
    let product = near_f.distance * lambda_d;
    let density_tol = lambda_d * near_f.resolution;
    Ok(vec![
        VerificationReport::lower(
            "distortion.density_lower",
            product,
            (1.0 - mu) / 16.0,
            density_tol,
            anchors::DISTORTION_DENSITY,
        ),
        VerificationReport::upper(
            "distortion.density_upper",
            product,
            DISTORTION_C,
            density_tol,
            anchors::DISTORTION_DENSITY,
        ),
        VerificationReport::upper(
            "distortion.distance_ratio",
            near_f.distance,
            2.0 * near_h.distance,
            near_f.resolution + 2.0 * near_h.resolution,
            anchors::DISTORTION_DISTANCE,
        ),
    ])
}

/// Runs [`distortion_checks`] at many points concurrently and keeps, per
/// check name, the report with the smallest margin.
pub fn distortion_sweep(
    f: &HarmonicMap,
    points: &[Complex64],
    omega: &BoundaryCurve,
    d_curve: &BoundaryCurve,
) -> Result<Vec<VerificationReport>, MetricsError> {
    let per_point: Vec<Vec<VerificationReport>> = points
        .par_iter()
        .map(|&z| distortion_checks(f, z, omega, d_curve))
        .collect::<Result<_, _>>()?;
    let mut worst: Vec<VerificationReport> = per_point[0].clone();
    for reports in per_point.into_iter().skip(1) {
        for (w, r) in worst.iter_mut().zip(reports) {
            *w = w.clone().worst(r);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harmonic::{harmonic_koebe, shear_construct};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_area_matches_closed_form() {
        let q = DiskQuadrature::new(0.999, 64, 16).unwrap();
        let a = spherical_area(&HarmonicMap::identity(1), &q, Normalization::PaperLiteral).unwrap();
        assert!((a.value - identity_area_closed_form(0.999)).abs() < 1e-12);
        let a4 = spherical_area(&HarmonicMap::identity(1), &q, Normalization::CurvaturePlus4).unwrap();
        assert!((a4.value - 4.0 * a.value).abs() < 1e-12);
    }

    #[test]
    fn analytic_path_matches_harmonic_path() {
        let h = TruncatedSeries::from_real(&[0.0, 1.0, 0.3, -0.1]).unwrap();
        let q = DiskQuadrature::new(0.9, 32, 32).unwrap();
        let a = spherical_area(&HarmonicMap::analytic(h.clone()), &q, Normalization::PaperLiteral).unwrap();
        let b = spherical_area_analytic(&h, &q, Normalization::PaperLiteral).unwrap();
        assert!((a.value - b.value).abs() < 1e-12);
    }

    #[test]
    fn negative_jacobian_is_reported() {
        let z = TruncatedSeries::identity(2);
        let f = HarmonicMap::new(z.clone(), z.scale(c(1.5, 0.0)));
        let q = DiskQuadrature::new(0.5, 4, 4).unwrap();
        assert!(matches!(
            spherical_area(&f, &q, Normalization::PaperLiteral),
            Err(MetricsError::NegativeJacobianNode { .. })
        ));
    }

    #[test]
    fn area_inequality_examples() {
        let q = DiskQuadrature::new(0.9, 48, 64).unwrap();
        let r = area_inequality_check(&HarmonicMap::identity(4), &q, Normalization::PaperLiteral, 1e-8).unwrap();
        assert!(r.report.passed && r.alpha.sup == 0.0);

        let phi = TruncatedSeries::from_real(&[0.0, 0.7]).unwrap();
        let f = shear_construct(&phi, &TruncatedSeries::identity(64)).unwrap();
        let q = DiskQuadrature::new(0.98, 64, 64).unwrap();
        let r = area_inequality_check(&f, &q, Normalization::PaperLiteral, 1e-8).unwrap();
        assert!(r.report.passed, "{:?}", r.report);

        let q = DiskQuadrature::new(0.9, 64, 64).unwrap();
        let r = area_inequality_check(&harmonic_koebe(256), &q, Normalization::PaperLiteral, 1e-8).unwrap();
        assert!(r.report.passed);
    }

    #[test]
    fn density_examples() {
        assert_eq!(hyperbolic_density_disk(c(0.0, 0.0)).unwrap(), 1.0);
        assert!((hyperbolic_density_disk(c(0.5, 0.0)).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        let z = c(0.3, 0.4);
        let rot = z * Complex64::from_polar(1.0, 1.234);
        assert!((hyperbolic_density_disk(z).unwrap() - hyperbolic_density_disk(rot).unwrap()).abs() < 1e-14);
        assert_eq!(hyperbolic_density_disk(c(1.0, 0.0)), Err(MetricsError::OutsideDisk(c(1.0, 0.0))));

        let id = TruncatedSeries::identity(3);
        assert_eq!(hyperbolic_density_image(&id, z).unwrap(), hyperbolic_density_disk(z).unwrap());
        let h = TruncatedSeries::from_real(&[0.0, 1.0, 0.4]).unwrap();
        assert_eq!(hyperbolic_density_image(&h, c(0.0, 0.0)).unwrap(), 1.0);
        let h2 = TruncatedSeries::from_real(&[0.0, 2.0]).unwrap();
        assert_eq!(hyperbolic_density_image(&h2, c(0.0, 0.0)).unwrap(), 0.5);
        let flat = TruncatedSeries::from_real(&[0.0, 0.0, 1.0]).unwrap();
        assert!(matches!(
            hyperbolic_density_image(&flat, c(0.0, 0.0)),
            Err(MetricsError::DegenerateDerivative { .. })
        ));
    }

    #[test]
    fn boundary_distance_examples() {
        let unit = BoundaryCurve::circle(c(0.0, 0.0), 1.0, 1024).unwrap();
        assert!((boundary_distance(c(0.0, 0.0), &unit) - 1.0).abs() < 1e-5);
        assert!((boundary_distance(c(0.5, 0.0), &unit) - 0.5).abs() < 1e-5);
        let shifted = BoundaryCurve::circle(c(1.0, 0.0), 2.0, 1024).unwrap();
        assert!((boundary_distance(c(0.0, 0.0), &shifted) - 1.0).abs() < 1e-5);
        assert!(BoundaryCurve::new(vec![c(0.0, 0.0), c(1.0, 0.0)], true).is_err());
    }

    #[test]
    fn boundary_distance_error_shrinks_with_resolution() {
        let w = c(0.2, 0.1);
        let exact = 1.0 - w.norm();
        let errs: Vec<f64> = [64, 128, 256, 512]
            .iter()
            .map(|&n| {
                let curve = BoundaryCurve::circle(c(0.0, 0.0), 1.0, n).unwrap();
                let e = (boundary_distance(w, &curve) - exact).abs();
                assert!(e <= curve.h_max());
                e
            })
            .collect();
        assert!(errs.windows(2).all(|p| p[1] < p[0]));
    }

    #[test]
    fn beta_examples() {
        let unit = BoundaryCurve::circle(c(0.0, 0.0), 1.0, 1200).unwrap();
        assert!(beta_omega(c(0.0, 0.0), &unit) < 1e-2);

        let two = BoundaryCurve::circle(c(-5.0, 0.0), 0.01, 64)
            .unwrap()
            .union(BoundaryCurve::circle(c(5.0, 0.0), 0.01, 64).unwrap());
        let w = c(-3.0, 0.0);
        let b = beta_omega(w, &two);
        assert!(b > 1.0, "{b}");

        let motion = |p: Complex64| p * Complex64::from_polar(1.0, 0.7) + c(3.0, -2.0);
        let moved = two.map_points(motion);
        assert!((beta_omega(motion(w), &moved) - b).abs() < 1e-12);
    }

    #[test]
    fn koebe_examples() {
        let id = TruncatedSeries::identity(2);
        let unit = BoundaryCurve::circle(c(0.0, 0.0), 1.0, 2048).unwrap();
        let r = koebe_bounds_check(&id, c(0.0, 0.0), &unit).unwrap();
        assert!(r.passed && (r.computed - 1.0).abs() < 1e-5);

        let koebe = |z: Complex64| z / ((1.0 - z) * (1.0 - z));
        let slit = BoundaryCurve::image_of_circle(koebe, 0.9999, 8192).unwrap();
        let h = TruncatedSeries::from_real(&[0.0, 1.0, 2.0, 3.0]).unwrap();
        let r = koebe_bounds_check(&h, c(0.0, 0.0), &slit).unwrap();
        assert!(r.passed && (r.computed - 0.25).abs() < 1e-6, "{r:?}");

        let half = BoundaryCurve::image_of_circle(|z| z / (1.0 - z), 0.9999, 8192).unwrap();
        let r = koebe_bounds_check(&TruncatedSeries::geometric(3).sub(&TruncatedSeries::one(3)), c(0.0, 0.0), &half).unwrap();
        assert!(r.passed && (r.computed - 0.5).abs() < 1e-4, "{r:?}");
    }

    #[test]
    fn c0_matches_printed_decimal() {
        assert!((c0_constant() - 4.37688).abs() < 1e-4);
    }

    #[test]
    fn euchypdom_examples() {
        let unit = BoundaryCurve::circle(c(0.0, 0.0), 1.0, 1200).unwrap();
        let c0 = c0_constant();
        let r = euchypdom_bounds_check(c(0.0, 0.0), &unit, 1.0, c0);
        assert!(r.passed, "{r:?}");
        assert!((1.0 / (2.0 * c0) - 0.11423).abs() < 1e-5);

        let w = c(0.3, 0.2);
        let lambda = hyperbolic_density_disk(w).unwrap();
        let a = euchypdom_bounds_check(w, &unit, lambda, c0);
        let b = euchypdom_bounds_check(w * 2.0, &unit.map_points(|p| p * 2.0), lambda / 2.0, c0);
        assert!((a.margin - b.margin).abs() < 1e-10);
    }

    #[test]
    fn distortion_examples() {
        let id = HarmonicMap::identity(2);
        let unit = BoundaryCurve::circle(c(0.0, 0.0), 1.0, 2048).unwrap();
        let reports = distortion_checks(&id, c(0.3, -0.2), &unit, &unit).unwrap();
        assert!(reports.iter().all(|r| r.passed));
        assert!((reports[2].bound - 2.0 * reports[2].computed).abs() < 1e-12);

        let phi = TruncatedSeries::from_real(&[0.0, 0.5]).unwrap();
        let big_f = TruncatedSeries::geometric(128).sub(&TruncatedSeries::one(128));
        let f = shear_construct(&phi, &big_f).unwrap().dilate(0.9);
        let omega = BoundaryCurve::image_of_map(&f, 1.0, 4096).unwrap();
        let d = BoundaryCurve::image_of_series(f.h(), 1.0, 4096).unwrap();
        let reports = distortion_checks(&f, c(0.0, 0.0), &omega, &d).unwrap();
        assert_eq!(reports[0].bound, 1.0 / 16.0);
        assert!(reports.iter().all(|r| r.passed), "{reports:?}");

        let k = harmonic_koebe(256).dilate(0.9);
        let d = BoundaryCurve::image_of_series(k.h(), 1.0, 4096).unwrap();
        let near = nearest_boundary(c(0.0, 0.0), &d);
        assert!(nearest_boundary_window_check(near.distance, near.resolution).passed);
    }

    #[test]
    fn outer_boundary_drops_inner_loop() {
        // w = e^{it} + 0.8 e^{2it} has an inner loop of winding number 2
        let curve = BoundaryCurve::image_of_circle(|z| z + 0.8 * z * z, 1.0, 2048).unwrap();
        let outer = curve.outer_boundary().unwrap();
        assert!(outer.segments().count() < curve.segments().count());
        assert_eq!(curve.winding_number(c(0.0, 0.0)), 1);
        assert_eq!(curve.winding_number(c(5.0, 0.0)), 0);
        assert_eq!(curve.winding_number(c(-0.25, 0.0)), 2);
        let unit = BoundaryCurve::circle(c(0.0, 0.0), 1.0, 512).unwrap();
        assert_eq!(unit.outer_boundary().unwrap(), unit);
    }
}
