//! Coefficient bounds that follow from subordination to the modular
//! function `Q`.
//!
//! Subordination is always certified constructively: a subordinate function
//! is built as `F ∘ φ` from an explicit Schwarz function `φ`, never detected
//! from two arbitrary coefficient lists.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::modular_q::IntSeries;
use crate::report::{anchors, VerificationReport};
use crate::series::{SeriesError, TruncatedSeries};

/// Largest modulus of a sampled Blaschke zero.
pub const MAX_ZERO_MODULUS: f64 = 0.95;
/// Largest degree of a sampled candidate.
pub const MAX_CANDIDATE_DEGREE: usize = 4;
/// Samples on the circle used to normalize polynomial candidates.
const CIRCLE_SAMPLES: usize = 256;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SubordinationError {
    #[error("omitted disk of radius {r} around {c} is invalid (need 0 < r ≤ |c|)")]
    InvalidGeometry { c: Complex64, r: f64 },
    #[error("boundary point must be nonzero")]
    ZeroBoundaryPoint,
    #[error("Schwarz candidate must vanish at 0 (got {0})")]
    NonzeroAtOrigin(Complex64),
    #[error("Schwarz candidate has |β₁| = {0} > 1")]
    NotSchwarz(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// How a Schwarz candidate was built; enough to rebuild it exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Construction {
    /// `e^{iθ} z ∏ (z - z_k)/(1 - conj(z_k) z)`.
    Blaschke { rotation: f64, zeros: Vec<Complex64> },
    /// `scale · Σ c_k z^k` (k ≥ 1) with `scale` chosen so that `|φ| ≤ 1`.
    ScaledPolynomial { coeffs: Vec<Complex64>, scale: f64 },
    /// Caller-supplied coefficients.
    Series,
}

/// An analytic self-map of the disk fixing 0, as Taylor coefficients
/// `β_1, β_2, …` in `series.coeffs()[1..]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchwarzCandidate {
    series: TruncatedSeries,
    construction: Construction,
}

/// Taylor series of the Blaschke factor `(z - a)/(1 - conj(a) z)`:
/// `-a`, then `conj(a)^{n-1}(1 - |a|²)`.
fn blaschke_factor(a: Complex64, order: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(-a);
    let scale = 1.0 - a.norm_sqr();
    let mut p = Complex64::new(1.0, 0.0);
    for _ in 1..=order {
        coeffs.push(p * scale);
        p *= a.conj();
    }
    TruncatedSeries::new(coeffs).expect("finite Blaschke coefficients")
}

impl SchwarzCandidate {
    pub fn blaschke(rotation: f64, zeros: &[Complex64], order: usize) -> Self {
        let mut s = TruncatedSeries::monomial(Complex64::from_polar(1.0, rotation), 1, order);
        for &a in zeros {
            s = s.mul(&blaschke_factor(a, order));
        }
        Self {
            series: s,
            construction: Construction::Blaschke {
                rotation,
                zeros: zeros.to_vec(),
            },
        }
    }

    /// `p(z) = Σ_{k≥1} c_k z^k` (with `coeffs[0]` = `c_1`) rescaled so that
    /// `sup_{|z|≤1} |φ| ≤ 1`.
    ///
    /// The circle maximum `m` over `M` equispaced samples bounds the true
    /// maximum through Bernstein's inequality: `‖p‖ ≤ m / (1 - π d / M)`.
    pub fn scaled_polynomial(coeffs: &[Complex64], order: usize) -> Self {
        let degree = coeffs.len();
        let mut poly = vec![Complex64::new(0.0, 0.0)];
        poly.extend_from_slice(coeffs);
        let p = TruncatedSeries::new(poly).expect("finite polynomial coefficients");
        let sampled = (0..CIRCLE_SAMPLES)
            .map(|k| {
                p.evaluate(Complex64::from_polar(1.0, 2.0 * PI * k as f64 / CIRCLE_SAMPLES as f64))
                    .norm()
            })
            .fold(0.0, f64::max);
        let bound = sampled / (1.0 - PI * degree as f64 / CIRCLE_SAMPLES as f64);
        let scale = if bound > 0.0 { 1.0 / bound } else { 1.0 };
        let series = p.scale(Complex64::new(scale, 0.0)).truncate(order);
        Self {
            series,
            construction: Construction::ScaledPolynomial {
                coeffs: coeffs.to_vec(),
                scale,
            },
        }
    }

    /// Wraps raw coefficients after checking the necessary conditions
    /// `φ(0) = 0` and `|β₁| ≤ 1`.
    pub fn from_series(series: TruncatedSeries) -> Result<Self, SubordinationError> {
        let c0 = series.coeff(0);
        if c0.norm() > 0.0 {
            return Err(SubordinationError::NonzeroAtOrigin(c0));
        }
        let b1 = series.coeff(1).norm();
        if b1 > 1.0 {
            return Err(SubordinationError::NotSchwarz(b1));
        }
        Ok(Self {
            series,
            construction: Construction::Series,
        })
    }

    /// Draws a candidate: half finite Blaschke products with a zero at the
    /// origin and up to three more zeros in `|z| ≤ 0.95`, half rescaled
    /// random polynomials, degrees 1 to 4.
    pub fn random<R: Rng>(rng: &mut R, order: usize) -> Self {
        let degree = rng.gen_range(1..=MAX_CANDIDATE_DEGREE);
        if degree == 1 || rng.gen_bool(0.5) {
            let zeros: Vec<_> = (1..degree).map(|_| disk_point(rng, MAX_ZERO_MODULUS)).collect();
            let rotation = rng.gen_range(0.0..2.0 * PI);
            Self::blaschke(rotation, &zeros, order)
        } else {
            let coeffs: Vec<_> = (0..degree).map(|_| disk_point(rng, 1.0)).collect();
            Self::scaled_polynomial(&coeffs, order)
        }
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    /// `β_n`.
    pub fn beta(&self, n: usize) -> Complex64 {
        self.series.coeff(n)
    }

    /// Evaluates the untruncated construction (the truncated series for
    /// [`Construction::Series`]).
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match &self.construction {
            Construction::Blaschke { rotation, zeros } => zeros.iter().fold(
                Complex64::from_polar(1.0, *rotation) * z,
                |acc, &a| acc * (z - a) / (Complex64::new(1.0, 0.0) - a.conj() * z),
            ),
            Construction::ScaledPolynomial { coeffs, scale } => {
                coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| (acc + c) * z) * *scale
            }
            Construction::Series => self.series.evaluate(z),
        }
    }

    /// Largest `|φ|` on a 256-point circle of radius 0.999.
    pub fn sampled_circle_max(&self) -> f64 {
        (0..CIRCLE_SAMPLES)
            .map(|k| {
                self.eval(Complex64::from_polar(0.999, 2.0 * PI * k as f64 / CIRCLE_SAMPLES as f64))
                    .norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Uniform point in the disk of the given radius.
fn disk_point<R: Rng>(rng: &mut R, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, rng.gen_range(0.0..2.0 * PI))
}

/// Deterministic batch of candidates: candidate `i` comes from ChaCha8
/// stream `i` under `seed`, so batches can be generated in parallel.
pub fn sample_candidates(seed: u64, count: usize, order: usize) -> Vec<SchwarzCandidate> {
    (0..count)
        .into_par_iter()
        .map(|i| SchwarzCandidate::random(&mut candidate_rng(seed, i as u64), order))
        .collect()
}

pub fn candidate_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// An omitted disk `D(c, r)` touching the image boundary, with the nearest
/// boundary point `a` when known.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MissedDiskDatum {
    c: Complex64,
    r: f64,
    a: Option<Complex64>,
}

impl MissedDiskDatum {
    pub fn new(c: Complex64, r: f64, a: Option<Complex64>) -> Result<Self, SubordinationError> {
        if !(r > 0.0 && r <= c.norm()) {
            return Err(SubordinationError::InvalidGeometry { c, r });
        }
        Ok(Self { c, r, a })
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn a(&self) -> Option<Complex64> {
        self.a
    }
}

/// Relative slack allowed on each coefficient comparison. Equality cases
/// such as `φ = e^{iθ}z` reproduce `A_n` only up to rounding, and `A_n` is
/// already about 10^15 at n = 30.
pub const DOMINANCE_REL_TOL: f64 = 1e-9;

/// `|a_n| ≤ scale · A_n` for `1 ≤ n ≤ min(order)`.
///
/// The margin is relative: `(scale·A_n - |a_n|) / max(1, scale·A_n)`,
/// minimized over `n`; `computed` and `bound` are taken at the worst `n`.
pub fn rogosinski_check(f: &TruncatedSeries, s: &IntSeries, scale: f64) -> VerificationReport {
    let n_max = f.order().min(s.order());
    let majorant = s.to_f64();
    let mut worst = (f64::INFINITY, 0usize, 0.0, 0.0);
    for n in 1..=n_max {
        let bound = scale * majorant[n - 1];
        let value = f.coeff(n).norm();
        let margin = (bound - value) / bound.abs().max(1.0);
        if margin < worst.0 || margin.is_nan() {
            worst = (margin, n, value, bound);
        }
    }
    let (margin, n, value, bound) = if n_max == 0 { (0.0, 0, 0.0, 0.0) } else { worst };
    VerificationReport::from_margin(
        "subordination.rogosinski",
        value,
        bound,
        margin,
        DOMINANCE_REL_TOL,
        anchors::COEFFICIENT_DOMINANCE,
    )
    .with_note(format!("worst index n = {n} of {n_max}; scale = {scale}"))
}

/// `(a₁, a₂, a₃)` of `-a · Q(φ)`:
/// `-16aβ₁`, `-16a(β₂ + 8β₁²)`, `-16a(β₃ + 16β₁β₂ + 44β₁³)`.
pub fn beta_relations(a: Complex64, phi: &SchwarzCandidate) -> [Complex64; 3] {
    let (b1, b2, b3) = (phi.beta(1), phi.beta(2), phi.beta(3));
    let k = a * -16.0;
    [
        k * b1,
        k * (b2 + b1 * b1 * 8.0),
        k * (b3 + b1 * b2 * 16.0 + b1 * b1 * b1 * 44.0),
    ]
}

/// `-a · Q(φ)` as a truncated series, `Q` given by its coefficient table.
pub fn subordinate_to_q(a: Complex64, phi: &SchwarzCandidate, q: &IntSeries) -> Result<TruncatedSeries, SeriesError> {
    Ok(q.to_series().compose(phi.series())?.scale(-a))
}

/// Parameter `a` that makes `-a·Q(φ)` normalized (`a₁ = 1`):
/// `a = -1/(16 β₁)`.
pub fn normalizing_parameter(phi: &SchwarzCandidate) -> Option<Complex64> {
    let b1 = phi.beta(1);
    (b1.norm() > 0.0).then(|| -(b1 * 16.0).inv())
}

/// `|β₃ + μβ₁β₂ + νβ₁³|`.
pub fn prokhorov_szynal_value(phi: &SchwarzCandidate, mu: f64, nu: f64) -> f64 {
    let (b1, b2, b3) = (phi.beta(1), phi.beta(2), phi.beta(3));
    (b3 + b1 * b2 * mu + b1 * b1 * b1 * nu).norm()
}

/// Region where the functional is bounded by `|ν|`:
/// `|μ| ≥ 4` and `ν ≥ (2/3)(|μ| - 1)`.
pub fn ps_region_check(mu: f64, nu: f64) -> bool {
    mu.abs() >= 4.0 && nu >= (2.0 / 3.0) * (mu.abs() - 1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsSearchResult {
    pub mu: f64,
    pub nu: f64,
    pub trials: usize,
    pub seed: u64,
    pub max: f64,
    pub argmax_index: usize,
    pub argmax: Construction,
    pub in_region: bool,
}

/// Random-search maximum of [`prokhorov_szynal_value`] over `trials`
/// candidates. Ties resolve to the lowest candidate index, so the result is
/// independent of thread scheduling.
pub fn ps_search(mu: f64, nu: f64, trials: usize, seed: u64) -> PsSearchResult {
    assert!(trials >= 1, "search needs at least one trial");
    let (argmax_index, max) = (0..trials)
        .into_par_iter()
        .map(|i| {
            let cand = SchwarzCandidate::random(&mut candidate_rng(seed, i as u64), 3);
            (i, prokhorov_szynal_value(&cand, mu, nu))
        })
        .reduce(
            || (usize::MAX, f64::NEG_INFINITY),
            |a, b| {
                if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) {
                    b
                } else {
                    a
                }
            },
        );
    let argmax = SchwarzCandidate::random(&mut candidate_rng(seed, argmax_index as u64), 3)
        .construction
        .clone();
    PsSearchResult {
        mu,
        nu,
        trials,
        seed,
        max,
        argmax_index,
        argmax,
        in_region: ps_region_check(mu, nu),
    }
}

/// Taylor coefficients of `exp(αz/(1-z))`.
pub fn e_alpha_coefficients(alpha: f64, order: usize) -> Result<TruncatedSeries, SubordinationError> {
    if !(alpha > 0.0) || order < 2 {
        return Err(SubordinationError::InvalidArgument(format!(
            "need α > 0 and N ≥ 2, got α = {alpha}, N = {order}"
        )));
    }
    let mut inner = TruncatedSeries::geometric(order).scale(Complex64::new(alpha, 0.0));
    inner = inner.sub(&TruncatedSeries::constant(Complex64::new(alpha, 0.0), order));
    Ok(inner.exp())
}

/// `α(α + 2)/2`, the second coefficient of `exp(αz/(1-z))`.
pub fn e_alpha_second(alpha: f64) -> f64 {
    alpha * (alpha + 2.0) / 2.0
}

/// Bound on `|a₂|` from an omitted disk: with `α = 2 ln(|c|/r)`, so that
/// `r/|c| = e^{-α/2}`, the bound is `|c| · α(α+2)/2`.
pub fn missed_disk_a2_bound(d: &MissedDiskDatum) -> f64 {
    let c = d.c.norm();
    let alpha = 2.0 * (c / d.r).ln();
    c * e_alpha_second(alpha)
}

/// `8 ln 2`, the exponent reached when `r/|c| = 1/16`.
pub fn missed_disk_alpha_limit() -> f64 {
    8.0 * LN_2
}

/// `8 ln 2 (4 ln 2 + 1) ≈ 20.9197`.
pub fn missed_disk_constant() -> f64 {
    e_alpha_second(missed_disk_alpha_limit())
}

/// `A(x) = 16x + 1/(2x)`.
pub fn a2_majorant(x: f64) -> f64 {
    16.0 * x + 1.0 / (2.0 * x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WindowVariant {
    /// `|a| ≥ 1/16` for normalized class-F functions.
    ClassF,
    /// `1/16.5 ≤ |a| < 1` for conformal maps onto hyperbolic domains.
    HyperbolicNormalized,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NearestPointBounds {
    pub a2_bound: f64,
    pub a3_bound: f64,
    pub window: VerificationReport,
}

/// `|a₂| ≤ 16|a| + 1/(2|a|)` and `|a₃| ≤ 704|a|`, plus the admissible window
/// for `|a|`.
pub fn nearest_point_bounds(a_mod: f64, variant: WindowVariant) -> NearestPointBounds {
    assert!(a_mod > 0.0, "|a| must be positive");
    let window = match variant {
        WindowVariant::ClassF => VerificationReport::lower(
            "subordination.nearest_point_window.class_f",
            a_mod,
            1.0 / 16.0,
            0.0,
            anchors::NEAREST_POINT_BOUNDS,
        ),
        WindowVariant::HyperbolicNormalized => {
            let lo = 1.0 / 16.5;
            // the upper end is strict, so |a| = 1 gets a negative margin
            let upper = if a_mod < 1.0 { 1.0 - a_mod } else { -(a_mod - 1.0).max(f64::EPSILON) };
            let margin = (a_mod - lo).min(upper);
            VerificationReport::from_margin(
                "subordination.nearest_point_window.hyperbolic",
                a_mod,
                lo,
                margin,
                0.0,
                anchors::HYPERBOLIC_WINDOW,
            )
        }
    };
    NearestPointBounds {
        a2_bound: a2_majorant(a_mod),
        a3_bound: 704.0 * a_mod,
        window,
    }
}

/// `z(a - h(z))/a`, which lies in class F whenever `a` is a nearest
/// boundary point of `h(𝔻)`. The order grows by one.
pub fn f_class_embed(h: &TruncatedSeries, a: Complex64) -> Result<TruncatedSeries, SubordinationError> {
    if a.norm() == 0.0 {
        return Err(SubordinationError::ZeroBoundaryPoint);
    }
    let inner = TruncatedSeries::constant(a, h.order()).sub(h).scale(a.inv());
    Ok(inner.shift_up())
}

/// Exact `A_n` as `f64`, for reporting.
pub fn q_coefficient_f64(q: &IntSeries, n: usize) -> f64 {
    q.get(n).and_then(|a| a.to_f64()).unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular_q::q_coefficients;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn blaschke_series_matches_rational_function() {
        let zeros = [Complex64::new(0.3, -0.4), Complex64::new(-0.6, 0.1)];
        let b = SchwarzCandidate::blaschke(0.7, &zeros, 60);
        for z in [Complex64::new(0.2, 0.3), Complex64::new(-0.5, 0.1)] {
            assert!((b.series().evaluate(z) - b.eval(z)).norm() < 1e-12);
        }
        assert!(b.sampled_circle_max() < 1.0);
        assert_eq!(b.beta(0), c(0.0));
    }

    #[test]
    fn scaled_polynomial_is_contractive() {
        let coeffs = [Complex64::new(0.9, 0.1), Complex64::new(-0.8, 0.5), Complex64::new(0.3, 0.3)];
        let p = SchwarzCandidate::scaled_polynomial(&coeffs, 10);
        // dense check well beyond the 256 normalization samples
        let dense = (0..20_000)
            .map(|k| p.eval(Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 20_000.0)).norm())
            .fold(0.0, f64::max);
        assert!(dense <= 1.0 && dense > 0.9, "{dense}");
    }

    #[test]
    fn rogosinski_examples() {
        let q = q_coefficients(30);
        let qs = q.to_series();
        let r = rogosinski_check(&qs, &q, 1.0);
        assert!(r.passed && r.margin == 0.0);

        let mut coeffs = qs.coeffs().to_vec();
        coeffs[2] = c(129.0);
        let r = rogosinski_check(&TruncatedSeries::new(coeffs).unwrap(), &q, 1.0);
        assert!(!r.passed);
        assert!(r.note.unwrap().starts_with("worst index n = 2"));

        let mut rng = candidate_rng(11, 0);
        for _ in 0..20 {
            let phi = SchwarzCandidate::random(&mut rng, 30);
            let f = subordinate_to_q(c(-1.0), &phi, &q).unwrap();
            assert!(rogosinski_check(&f, &q, 1.0).passed);
        }
    }

    #[test]
    fn beta_relation_examples() {
        let phi = SchwarzCandidate::blaschke(0.0, &[], 5);
        let [a1, a2, a3] = beta_relations(c(-1.0 / 16.0), &phi);
        assert_eq!((a1, a2, a3), (c(1.0), c(8.0), c(44.0)));

        let phi = SchwarzCandidate::blaschke(1.1, &[Complex64::new(0.2, 0.5)], 6);
        let a = normalizing_parameter(&phi).unwrap();
        let [a1, ..] = beta_relations(a, &phi);
        assert!((a1 - 1.0).norm() < 1e-14);
        assert!((phi.beta(1).norm() - 1.0 / (16.0 * a.norm())).abs() < 1e-15);

        let q = q_coefficients(6);
        let direct = subordinate_to_q(a, &phi, &q).unwrap();
        let rel = beta_relations(a, &phi);
        for n in 1..=3 {
            assert!((direct.coeff(n) - rel[n - 1]).norm() < 1e-10);
        }
    }

    #[test]
    fn prokhorov_szynal_examples() {
        let z = SchwarzCandidate::blaschke(0.0, &[], 3);
        assert_eq!(prokhorov_szynal_value(&z, 16.0, 44.0), 44.0);
        let z2 = SchwarzCandidate::from_series(TruncatedSeries::from_real(&[0.0, 0.0, 1.0, 0.0]).unwrap()).unwrap();
        assert_eq!(prokhorov_szynal_value(&z2, 16.0, 44.0), 0.0);
        assert_eq!(prokhorov_szynal_value(&z2, -7.0, 3.0), 0.0);
    }

    #[test]
    fn ps_region_examples() {
        assert!(ps_region_check(16.0, 44.0));
        assert!(ps_region_check(4.0, 2.0));
        assert!(!ps_region_check(3.0, 100.0));
        assert!(ps_region_check(-16.0, 10.0));
    }

    #[test]
    fn ps_search_is_deterministic_and_bounded() {
        let a = ps_search(16.0, 44.0, 2000, 5);
        let b = ps_search(16.0, 44.0, 2000, 5);
        assert_eq!(a, b);
        assert!(a.max <= 44.0 + 1e-8);
        assert!(a.in_region);
    }

    #[test]
    fn e_alpha_examples() {
        let e = e_alpha_coefficients(1.3, 6).unwrap();
        assert!((e.coeff(0).re - 1.0).abs() < 1e-15);
        assert!((e.coeff(1).re - 1.3).abs() < 1e-14);
        let e = e_alpha_coefficients(2.0, 4).unwrap();
        assert!((e.coeff(2).re - 4.0).abs() < 1e-12);
        let e = e_alpha_coefficients(8.0 * LN_2, 4).unwrap();
        assert!((e.coeff(2).re - 20.9197).abs() < 1e-4);
        assert!(e_alpha_coefficients(0.0, 4).is_err());
        assert!(e_alpha_coefficients(1.0, 1).is_err());
    }

    #[test]
    fn missed_disk_examples() {
        let d = MissedDiskDatum::new(c(1.0), 1.0 / 16.0, None).unwrap();
        let v = missed_disk_a2_bound(&d);
        assert!((v - 8.0 * LN_2 * (4.0 * LN_2 + 1.0)).abs() < 1e-12);
        assert!((v - 20.9197).abs() < 1e-4);

        let d = MissedDiskDatum::new(Complex64::new(0.0, 2.0), 2.0, None).unwrap();
        assert_eq!(missed_disk_a2_bound(&d), 0.0);

        let d = MissedDiskDatum::new(c(1.0), (-1.0f64).exp(), None).unwrap();
        assert!((missed_disk_a2_bound(&d) - 4.0).abs() < 1e-12);

        assert!(matches!(
            MissedDiskDatum::new(c(1.0), 1.5, None),
            Err(SubordinationError::InvalidGeometry { .. })
        ));
        assert!(MissedDiskDatum::new(c(1.0), 0.0, None).is_err());
    }

    #[test]
    fn nearest_point_examples() {
        let b = nearest_point_bounds(1.0, WindowVariant::ClassF);
        assert_eq!(b.a2_bound, 16.5);
        assert_eq!(b.a3_bound, 704.0);
        assert!(b.window.passed);
        assert_eq!(nearest_point_bounds(1.0 / 16.0, WindowVariant::ClassF).a2_bound, 9.0);
        assert!(!nearest_point_bounds(0.05, WindowVariant::ClassF).window.passed);

        assert!(nearest_point_bounds(0.5, WindowVariant::HyperbolicNormalized).window.passed);
        assert!(!nearest_point_bounds(1.0, WindowVariant::HyperbolicNormalized).window.passed);
        assert!(!nearest_point_bounds(0.06, WindowVariant::HyperbolicNormalized).window.passed);
    }

    #[test]
    fn a2_majorant_increasing_on_window() {
        let lo = 1.0 / (4.0 * 2f64.sqrt());
        let xs: Vec<f64> = (0..=1000).map(|i| lo + (1.0 - lo) * i as f64 / 1000.0).collect();
        assert!(xs.windows(2).all(|w| a2_majorant(w[0]) <= a2_majorant(w[1])));
        assert_eq!(a2_majorant(1.0), 16.5);
    }

    #[test]
    fn embed_examples() {
        let h = TruncatedSeries::identity(3);
        let g = f_class_embed(&h, c(1.0)).unwrap();
        assert_eq!(g, TruncatedSeries::from_real(&[0.0, 1.0, -1.0, 0.0, 0.0]).unwrap());

        let a = Complex64::new(-0.3, 0.2);
        let h = TruncatedSeries::new(vec![c(0.0), c(1.0), Complex64::new(0.4, 0.1), c(0.2)]).unwrap();
        let g = f_class_embed(&h, a).unwrap();
        assert!((g.coeff(1) - 1.0).norm() < 1e-15);
        assert!((g.coeff(2) + a.inv()).norm() < 1e-15);
        assert_eq!(f_class_embed(&h, c(0.0)).unwrap_err(), SubordinationError::ZeroBoundaryPoint);

        let q = q_coefficients(20);
        for theta in [0.0, 1.0, 2.5] {
            let a = Complex64::from_polar(1.0, theta);
            let g = f_class_embed(&q.to_series().scale(a), a).unwrap();
            assert!(rogosinski_check(&g, &q, a.norm()).passed);
        }
    }
}
