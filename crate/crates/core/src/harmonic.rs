//! Sense-preserving harmonic maps `f = h + conj(g)` on the unit disk.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quadrature::DiskQuadrature;
use crate::report::{anchors, VerificationReport};
use crate::series::{SeriesError, TruncatedSeries};

/// Below this modulus `h'` is treated as vanishing.
pub const DERIVATIVE_FLOOR: f64 = 1e-13;

const NORMALIZATION_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarmonicError {
    #[error("h' vanishes (|h'| = {modulus:e}) at z = {z}")]
    DegenerateDerivative { z: Complex64, modulus: f64 },
    #[error("dilatation has modulus {modulus} ≥ 1 at z = {z}")]
    NonContractiveDilatation { z: Complex64, modulus: f64 },
    #[error("map is not normalized (needs h(0) = 0, h'(0) = 1)")]
    NotNormalized,
    #[error("Jacobian {jacobian:e} ≤ 0 at z = {z}; map is not sense-preserving")]
    NotSensePreserving { z: Complex64, jacobian: f64 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `f = h + conj(g)` with truncated analytic and co-analytic parts.
///
/// Both parts are held at the same order. The flags are derived from the
/// coefficients: `normalized` means `a_0 = 0, a_1 = 1`; `class0` means
/// additionally `b_1 = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "MapParts", into = "MapParts")]
pub struct HarmonicMap {
    h: TruncatedSeries,
    g: TruncatedSeries,
    dh: TruncatedSeries,
    dg: TruncatedSeries,
    normalized: bool,
    class0: bool,
}

#[derive(Serialize, Deserialize)]
struct MapParts {
    h: TruncatedSeries,
    g: TruncatedSeries,
    #[serde(default)]
    normalized: bool,
    #[serde(default)]
    class0: bool,
}

impl From<MapParts> for HarmonicMap {
    fn from(p: MapParts) -> Self {
        Self::new(p.h, p.g)
    }
}

impl From<HarmonicMap> for MapParts {
    fn from(f: HarmonicMap) -> Self {
        MapParts {
            normalized: f.normalized,
            class0: f.class0,
            h: f.h,
            g: f.g,
        }
    }
}

impl HarmonicMap {
    pub fn new(h: TruncatedSeries, g: TruncatedSeries) -> Self {
        let n = h.order().min(g.order());
        let h = h.truncate(n);
        let g = g.truncate(n);
        let normalized = h.coeff(0).norm() <= NORMALIZATION_TOL
            && (h.coeff(1) - 1.0).norm() <= NORMALIZATION_TOL;
        let class0 = normalized && g.coeff(1).norm() <= NORMALIZATION_TOL;
        Self {
            dh: h.derivative(),
            dg: g.derivative(),
            h,
            g,
            normalized,
            class0,
        }
    }

    pub fn analytic(h: TruncatedSeries) -> Self {
        let order = h.order();
        Self::new(h, TruncatedSeries::zero(order))
    }

    pub fn identity(order: usize) -> Self {
        Self::analytic(TruncatedSeries::identity(order))
    }

    pub fn h(&self) -> &TruncatedSeries {
        &self.h
    }

    pub fn g(&self) -> &TruncatedSeries {
        &self.g
    }

    pub fn order(&self) -> usize {
        self.h.order()
    }

    pub fn normalized(&self) -> bool {
        self.normalized
    }

    pub fn class0(&self) -> bool {
        self.class0
    }

    /// `a_n`, the n-th coefficient of `h`.
    pub fn a(&self, n: usize) -> Complex64 {
        self.h.coeff(n)
    }

    /// `b_n`, the n-th coefficient of `g`.
    pub fn b(&self, n: usize) -> Complex64 {
        self.g.coeff(n)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.h.evaluate(z) + self.g.evaluate(z).conj()
    }

    pub fn h_prime(&self, z: Complex64) -> Complex64 {
        self.dh.evaluate(z)
    }

    pub fn g_prime(&self, z: Complex64) -> Complex64 {
        self.dg.evaluate(z)
    }

    /// `J_f(z) = |h'(z)|² - |g'(z)|²`.
    pub fn jacobian(&self, z: Complex64) -> f64 {
        self.h_prime(z).norm_sqr() - self.g_prime(z).norm_sqr()
    }

    /// Analytic dilatation `g'(z)/h'(z)`.
    pub fn dilatation(&self, z: Complex64) -> Result<Complex64, HarmonicError> {
        let dh = self.h_prime(z);
        let modulus = dh.norm();
        if modulus < DERIVATIVE_FLOOR {
            return Err(HarmonicError::DegenerateDerivative { z, modulus });
        }
        Ok(self.g_prime(z) / dh)
    }

    /// `f_ρ(z) = f(ρz)/ρ`, which keeps the normalization.
    pub fn dilate(&self, rho: f64) -> Self {
        let inv = Complex64::new(1.0 / rho, 0.0);
        Self::new(self.h.dilate(rho).scale(inv), self.g.dilate(rho).scale(inv))
    }

    /// Errors on the first point where the Jacobian is not positive.
    pub fn check_sense_preserving<I>(&self, points: I) -> Result<(), HarmonicError>
    where
        I: IntoIterator<Item = Complex64>,
    {
        for z in points {
            let jacobian = self.jacobian(z);
            if jacobian.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
                return Err(HarmonicError::NotSensePreserving { z, jacobian });
            }
        }
        Ok(())
    }
}

/// Exact coefficients of the harmonic Koebe map, indices `0..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct KoebeCoefficients {
    pub a: Vec<Rational64>,
    pub b: Vec<Rational64>,
}

fn rational_mul(a: &[Rational64], b: &[Rational64], n: usize) -> Vec<Rational64> {
    let mut out = vec![Rational64::from_integer(0); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `h = (A + B)/2`, `g = (A - B)/2` with `A = (z + z³/3)/(1-z)³`,
/// `B = z/(1-z)²`, expanded in exact rational arithmetic.
pub fn harmonic_koebe_exact(order: usize) -> KoebeCoefficients {
    let r = Rational64::from_integer;
    // (1-z)^{-3} and (1-z)^{-2} by the binomial series
    let inv_cube: Vec<_> = (0..=order as i64).map(|k| r((k + 1) * (k + 2) / 2)).collect();
    let inv_square: Vec<_> = (0..=order as i64).map(|k| r(k + 1)).collect();
    let mut numer = vec![r(0); order + 1];
    if order >= 1 {
        numer[1] = r(1);
    }
    if order >= 3 {
        numer[3] = Rational64::new(1, 3);
    }
    let mut z = vec![r(0); order + 1];
    if order >= 1 {
        z[1] = r(1);
    }
    let big_a = rational_mul(&numer, &inv_cube, order);
    let big_b = rational_mul(&z, &inv_square, order);
    let half = Rational64::new(1, 2);
    KoebeCoefficients {
        a: big_a.iter().zip(&big_b).map(|(x, y)| (x + y) * half).collect(),
        b: big_a.iter().zip(&big_b).map(|(x, y)| (x - y) * half).collect(),
    }
}

fn rational_to_f64(q: &Rational64) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// Order-N truncation of the harmonic Koebe map.
///
/// # Panics
///
/// If `order` is zero.
pub fn harmonic_koebe(order: usize) -> HarmonicMap {
    assert!(order >= 1, "harmonic Koebe needs order ≥ 1");
    let exact = harmonic_koebe_exact(order);
    let to_series = |v: &[Rational64]| {
        TruncatedSeries::from_real(&v.iter().map(rational_to_f64).collect::<Vec<_>>())
            .expect("finite rationals")
    };
    HarmonicMap::new(to_series(&exact.a), to_series(&exact.b))
}

/// Conjectured sharp bounds on `|a_n|`, `|b_n|` and `||a_n| - |b_n||`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConjecturedBounds {
    pub analytic: f64,
    pub coanalytic: f64,
    pub difference: f64,
}

/// `((n+1)(2n+1)/6, (n-1)(2n-1)/6, n)` in exact form.
pub fn conjectured_bounds_exact(n: u32) -> (Rational64, Rational64, Rational64) {
    assert!(n >= 2, "conjectured bounds start at n = 2");
    let n = n as i64;
    (
        Rational64::new((n + 1) * (2 * n + 1), 6),
        Rational64::new((n - 1) * (2 * n - 1), 6),
        Rational64::from_integer(n),
    )
}

pub fn conjectured_bounds(n: u32) -> ConjecturedBounds {
    let (a, b, d) = conjectured_bounds_exact(n);
    ConjecturedBounds {
        analytic: rational_to_f64(&a),
        coanalytic: rational_to_f64(&b),
        difference: rational_to_f64(&d),
    }
}

/// Grid estimate of `sup |φ|`: only a lower bound on the supremum over the
/// open disk, so it travels with the outermost node radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DilatationEstimate {
    pub sup: f64,
    pub max_radius: f64,
}

pub fn dilatation_sup(f: &HarmonicMap, grid: &DiskQuadrature) -> Result<DilatationEstimate, HarmonicError> {
    let nodes: Vec<Complex64> = grid.nodes().map(|(z, _)| z).collect();
    let sup = nodes
        .par_iter()
        .map(|&z| f.dilatation(z).map(|w| w.norm()))
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))?;
    Ok(DilatationEstimate {
        sup,
        max_radius: grid.max_node_radius(),
    })
}

/// Points where a candidate dilatation must stay below one: the centre and
/// a 256-point circle of radius 0.999. For polynomials this bounds the whole
/// disk of that radius by the maximum principle (up to sampling).
pub fn dilatation_validation_points() -> Vec<Complex64> {
    let mut pts = vec![Complex64::new(0.0, 0.0)];
    pts.extend((0..256).map(|k| Complex64::from_polar(0.999, 2.0 * PI * k as f64 / 256.0)));
    pts
}

/// Shear construction: solves `h - g = F` and `g' = φ h'` for a map with
/// prescribed dilatation `φ`. Then `h' = F'/(1 - φ)`, `h(0) = F(0)`,
/// `g(0) = 0`.
///
/// Both inputs are read as polynomials and zero-padded to the larger order,
/// so `φ = 0.7z` can be paired with a long `F`.
pub fn shear_construct(phi: &TruncatedSeries, big_f: &TruncatedSeries) -> Result<HarmonicMap, HarmonicError> {
    let order = phi.order().max(big_f.order());
    let (phi, big_f) = (&phi.truncate(order), &big_f.truncate(order));
    for z in dilatation_validation_points() {
        let modulus = phi.evaluate(z).norm();
        if modulus >= 1.0 {
            return Err(HarmonicError::NonContractiveDilatation { z, modulus });
        }
    }
    let one = TruncatedSeries::one(phi.order());
    let dh = big_f.derivative().div(&one.sub(phi))?;
    let dg = phi.mul(&dh);
    let h = dh.integral(big_f.coeff(0));
    let g = dg.integral(Complex64::new(0.0, 0.0));
    Ok(HarmonicMap::new(h, g))
}

/// Options for [`phi_theta_univalence_spotcheck`].
#[derive(Debug, Clone, Copy)]
pub struct SpotcheckOptions {
    pub samples: usize,
    /// Points are drawn from `|z| ≤ radius`.
    pub radius: f64,
    pub seed: u64,
}

impl Default for SpotcheckOptions {
    fn default() -> Self {
        Self {
            samples: 1000,
            radius: 0.9,
            seed: 0,
        }
    }
}

/// Looks for a collision `Φ_θ(z₁) = Φ_θ(z₂)`, `z₁ ≠ z₂`, with
/// `Φ_θ = h + e^{iθ} g`.
///
/// Each random pair is refined by Newton's method on `Φ_θ(z₂) = Φ_θ(z₁)`
/// (`Φ_θ` is analytic). A refined pair that stays separated by more than
/// `1e-6` with residual below `1e-9` certifies non-univalence for that `θ`.
/// Finding none is evidence only.
pub fn phi_theta_univalence_spotcheck(
    f: &HarmonicMap,
    theta: f64,
    opts: SpotcheckOptions,
) -> Result<VerificationReport, HarmonicError> {
    if !f.normalized() {
        return Err(HarmonicError::NotNormalized);
    }
    let rot = Complex64::from_polar(1.0, theta);
    let phi = f.h().add(&f.g().scale(rot));
    let dphi = phi.derivative();

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut sample = || {
        let r = opts.radius * rng.gen::<f64>().sqrt();
        Complex64::from_polar(r, 2.0 * PI * rng.gen::<f64>())
    };
    let pairs: Vec<(Complex64, Complex64)> = (0..opts.samples).map(|_| (sample(), sample())).collect();

    f.check_sense_preserving(pairs.iter().flat_map(|&(a, b)| [a, b]))?;

    let mut collisions = 0usize;
    let mut closest = f64::INFINITY;
    let mut witness = None;
    for &(z1, start) in &pairs {
        let target = phi.evaluate(z1);
        let mut z2 = start;
        for _ in 0..40 {
            let d = dphi.evaluate(z2);
            if d.norm() < DERIVATIVE_FLOOR {
                break;
            }
            let step = (phi.evaluate(z2) - target) / d;
            z2 -= step;
            if z2.norm() > opts.radius || step.norm() < 1e-15 {
                break;
            }
        }
        if z2.norm() > opts.radius {
            continue;
        }
        let residual = (phi.evaluate(z2) - target).norm();
        let separation = (z2 - z1).norm();
        if separation > 1e-6 {
            closest = closest.min(residual);
            if residual < 1e-9 {
                collisions += 1;
                witness.get_or_insert((z1, z2));
            }
        }
    }

    let note = match witness {
        Some((a, b)) => format!("collision Φ({a}) = Φ({b}); not univalent for θ = {theta}"),
        None => format!(
            "no collision among {} refined pairs in |z| ≤ {}; smallest separated residual {closest:e}",
            opts.samples, opts.radius
        ),
    };
    Ok(VerificationReport::upper(
        format!("harmonic.phi_theta_spotcheck.theta{theta:.6}"),
        collisions as f64,
        0.0,
        0.0,
        anchors::UNIVALENCE_SPOTCHECK,
    )
    .with_note(note))
}
