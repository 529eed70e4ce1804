//! Verification suites: every bound is evaluated on sampled or constructed
//! maps and recorded as a named [`VerificationReport`].
//!
//! All randomness flows from [`SuiteConfig::seed`], and the final document
//! is sorted by check name, so a fixed configuration always produces the
//! same JSON bytes.

use std::collections::BTreeMap;
use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::harmonic::{
    conjectured_bounds, conjectured_bounds_exact, harmonic_koebe, harmonic_koebe_exact,
    phi_theta_univalence_spotcheck, shear_construct, HarmonicMap, SpotcheckOptions,
};
use crate::metrics::{
    area_inequality_check, c0_constant, distortion_checks, distortion_sweep, euchypdom_bounds_check,
    hyperbolic_density_disk, identity_area_closed_form, koebe_bounds_check, nearest_boundary,
    nearest_boundary_window_check, spherical_area, BoundaryCurve, Normalization,
};
use crate::modular_q::{check_convex_nondecreasing, q_coefficients, IntSeries};
use crate::quadrature::{extrapolate_to_zero, DiskQuadrature, QuadratureError};
use crate::report::{anchors, VerificationReport};
use crate::series::TruncatedSeries;
use crate::subordination::{
    a2_majorant, beta_relations, candidate_rng, missed_disk_a2_bound, missed_disk_alpha_limit,
    missed_disk_constant, nearest_point_bounds, normalizing_parameter, prokhorov_szynal_value,
    ps_region_check, ps_search, rogosinski_check, subordinate_to_q, MissedDiskDatum, SchwarzCandidate,
    WindowVariant,
};

pub const REPORT_VERSION: &str = "1";

/// Order used for the exact convexity check of `Q`.
pub const CONVEXITY_ORDER: usize = 200;

/// Minimum number of candidates in the functional search.
pub const PS_MIN_TRIALS: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown constant {0:?}")]
    UnknownConstant(String),
    #[error("unknown suite {0:?} (expected all, theorem1, theorem2, area or distortion)")]
    UnknownSuite(String),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rho_max: f64,
    pub radial: usize,
    pub angular: usize,
}

impl QuadratureSpec {
    pub fn build(&self) -> Result<DiskQuadrature, QuadratureError> {
        DiskQuadrature::new(self.rho_max, self.radial, self.angular)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub series_order: usize,
    pub quadrature: QuadratureSpec,
    #[serde(default)]
    pub normalization: Normalization,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
}

/// Named tolerances and their defaults.
pub const DEFAULT_TOLERANCES: &[(&str, f64)] = &[
    ("area", 1e-8),
    ("coefficient", 1e-10),
    ("constant", 1e-4),
    ("dominance", 1e-9),
    ("functional", 1e-8),
    ("plane_limit", 1e-6),
];

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 7,
            trials: 200,
            series_order: 30,
            quadrature: QuadratureSpec {
                rho_max: 0.98,
                radial: 128,
                angular: 128,
            },
            normalization: Normalization::PaperLiteral,
            tolerances: DEFAULT_TOLERANCES.iter().map(|&(k, v)| (k.to_owned(), v)).collect(),
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.trials < 1 {
            return Err(HarnessError::InvalidConfig("trials must be ≥ 1".into()));
        }
        if self.series_order < 8 {
            return Err(HarnessError::InvalidConfig("series_order must be ≥ 8".into()));
        }
        if let Some((k, v)) = self.tolerances.iter().find(|(_, v)| !(**v >= 0.0)) {
            return Err(HarnessError::InvalidConfig(format!("tolerance {k} = {v} must be ≥ 0")));
        }
        self.quadrature.build()?;
        Ok(())
    }

    pub fn tol(&self, key: &str) -> f64 {
        self.tolerances.get(key).copied().unwrap_or_else(|| {
            DEFAULT_TOLERANCES
                .iter()
                .find(|(k, _)| *k == key)
                .map(|&(_, v)| v)
                .unwrap_or(0.0)
        })
    }
}

/// The printed constants that the suites compare against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantTable {
    pub q_a1: i64,
    pub q_a2: i64,
    pub q_a3: i64,
    pub corollary_a2: f64,
    pub eight_ln2: f64,
    pub theorem1_a2: f64,
    pub c0: f64,
    pub class_f_lower: f64,
}

pub const CONSTANT_NAMES: &[&str] = &[
    "q_a1",
    "q_a2",
    "q_a3",
    "corollary_a2",
    "eight_ln2",
    "theorem1_a2",
    "c0",
    "class_f_lower",
];

impl Default for ConstantTable {
    fn default() -> Self {
        Self {
            q_a1: 16,
            q_a2: 128,
            q_a3: 704,
            corollary_a2: 16.5,
            eight_ln2: 5.54518,
            theorem1_a2: 20.9197,
            c0: 4.37688,
            class_f_lower: 1.0 / 16.0,
        }
    }
}

impl ConstantTable {
    pub fn get(&self, name: &str) -> Option<f64> {
        Some(match name {
            "q_a1" => self.q_a1 as f64,
            "q_a2" => self.q_a2 as f64,
            "q_a3" => self.q_a3 as f64,
            "corollary_a2" => self.corollary_a2,
            "eight_ln2" => self.eight_ln2,
            "theorem1_a2" => self.theorem1_a2,
            "c0" => self.c0,
            "class_f_lower" => self.class_f_lower,
            _ => return None,
        })
    }

    /// Replaces one constant. Integer constants accept only integral values.
    pub fn set(&mut self, name: &str, value: f64) -> Result<(), HarnessError> {
        let int = || {
            if value.fract() == 0.0 && value.abs() < 9e15 {
                Ok(value as i64)
            } else {
                Err(HarnessError::InvalidConfig(format!("{name} must be an integer, got {value}")))
            }
        };
        match name {
            "q_a1" => self.q_a1 = int()?,
            "q_a2" => self.q_a2 = int()?,
            "q_a3" => self.q_a3 = int()?,
            "corollary_a2" => self.corollary_a2 = value,
            "eight_ln2" => self.eight_ln2 = value,
            "theorem1_a2" => self.theorem1_a2 = value,
            "c0" => self.c0 = value,
            "class_f_lower" => self.class_f_lower = value,
            _ => return Err(HarnessError::UnknownConstant(name.to_owned())),
        }
        Ok(())
    }

    /// Entries that differ from the printed table.
    pub fn differences(&self) -> BTreeMap<String, f64> {
        let printed = Self::default();
        CONSTANT_NAMES
            .iter()
            .filter_map(|&n| {
                let v = self.get(n)?;
                (v != printed.get(n)?).then(|| (n.to_owned(), v))
            })
            .collect()
    }
}

/// Fault-injection inputs. The default is a healthy run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub constants: ConstantTable,
    /// Replacement for the `Q` coefficient table that majorant checks read.
    pub q_table: Option<IntSeries>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkippedCheck {
    pub check_name: String,
    pub provenance: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CheckRecord {
    Checked(VerificationReport),
    Skipped(SkippedCheck),
}

impl CheckRecord {
    pub fn name(&self) -> &str {
        match self {
            Self::Checked(r) => &r.check_name,
            Self::Skipped(s) => &s.check_name,
        }
    }

    pub fn provenance(&self) -> &str {
        match self {
            Self::Checked(r) => &r.provenance,
            Self::Skipped(s) => &s.provenance,
        }
    }

    /// `None` for skipped checks.
    pub fn passed(&self) -> Option<bool> {
        match self {
            Self::Checked(r) => Some(r.passed),
            Self::Skipped(_) => None,
        }
    }

    fn skipped(name: impl Into<String>, provenance: &str, reason: impl fmt::Display) -> Self {
        Self::Skipped(SkippedCheck {
            check_name: name.into(),
            provenance: provenance.to_owned(),
            reason: reason.to_string(),
        })
    }
}

impl From<VerificationReport> for CheckRecord {
    fn from(r: VerificationReport) -> Self {
        Self::Checked(r)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: String,
    pub suite: Suite,
    pub config: SuiteConfig,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub constant_overrides: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub q_table_overridden: bool,
    pub inputs_digest: String,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl ReportDocument {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn failures(&self) -> impl Iterator<Item = &VerificationReport> {
        self.checks.iter().filter_map(|c| match c {
            CheckRecord::Checked(r) if !r.passed => Some(r),
            _ => None,
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    #[default]
    All,
    Theorem1,
    Theorem2,
    Area,
    Distortion,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::All => "all",
            Self::Theorem1 => "theorem1",
            Self::Theorem2 => "theorem2",
            Self::Area => "area",
            Self::Distortion => "distortion",
        })
    }
}

impl FromStr for Suite {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "all" => Self::All,
            "theorem1" => Self::Theorem1,
            "theorem2" => Self::Theorem2,
            "area" => Self::Area,
            "distortion" => Self::Distortion,
            other => return Err(HarnessError::UnknownSuite(other.to_owned())),
        })
    }
}

/// Shared state of one run.
struct Context<'a> {
    cfg: &'a SuiteConfig,
    constants: ConstantTable,
    q: IntSeries,
    q_table: IntSeries,
}

impl<'a> Context<'a> {
    fn new(cfg: &'a SuiteConfig, overrides: &Overrides) -> Self {
        let q = q_coefficients(cfg.series_order);
        let q_table = overrides.q_table.clone().unwrap_or_else(|| q.clone());
        Self {
            cfg,
            constants: overrides.constants,
            q,
            q_table,
        }
    }

    /// Independent RNG stream for sample `i` of purpose `salt`.
    fn rng(&self, salt: u64, i: usize) -> rand_chacha::ChaCha8Rng {
        candidate_rng(self.cfg.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15), i as u64)
    }
}

fn q_convexity_table() -> &'static IntSeries {
    static TABLE: OnceLock<IntSeries> = OnceLock::new();
    TABLE.get_or_init(|| q_coefficients(CONVEXITY_ORDER))
}

fn fold_worst(reports: impl IntoIterator<Item = VerificationReport>, name: &str) -> Option<VerificationReport> {
    reports.into_iter().reduce(VerificationReport::worst).map(|mut r| {
        r.check_name = name.to_owned();
        r
    })
}

fn exact_equal(name: &str, computed: &BigInt, expected: i64, provenance: &str) -> VerificationReport {
    let diff = (computed - BigInt::from(expected)).abs();
    let mut r = VerificationReport::close(
        name,
        computed.to_f64().unwrap_or(f64::NAN),
        expected as f64,
        0.0,
        provenance,
    );
    r.margin = -diff.to_f64().unwrap_or(f64::INFINITY);
    r.passed = diff.is_zero();
    r
}

fn violations_report(name: &str, violations: usize, samples: usize, provenance: &str) -> VerificationReport {
    VerificationReport::upper(name, violations as f64, 0.0, 0.0, provenance)
        .with_note(format!("{violations} violations among {samples} samples"))
}

/// Checks on the `Q` expansion itself.
fn suite_modular(ctx: &Context) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let q200 = q_convexity_table();
    for (n, expected) in [(1, ctx.constants.q_a1), (2, ctx.constants.q_a2), (3, ctx.constants.q_a3)] {
        let a = q200.get(n).expect("order ≥ 3");
        out.push(exact_equal(&format!("q.expansion.a{n}"), a, expected, anchors::Q_EXPANSION).into());
    }
    out.push(
        exact_equal("q.expansion.a3_identity", &BigInt::from(16 * 44), ctx.constants.q_a3, anchors::PROKHOROV_SZYNAL)
            .with_note("16 · 44")
            .into(),
    );
    let mut convex = check_convex_nondecreasing(q200);
    convex.check_name = format!("q.convex_nondecreasing.n{CONVEXITY_ORDER}");
    out.push(convex.into());
    let mut table_convex = check_convex_nondecreasing(&ctx.q_table);
    table_convex.check_name = "q.convex_nondecreasing.table".into();
    out.push(table_convex.into());

    let bad = q200
        .coeffs()
        .iter()
        .filter(|a| a.is_negative() || !(*a % 16u32).is_zero())
        .count();
    out.push(violations_report("q.nonnegative_divisible_by_16", bad, CONVEXITY_ORDER, anchors::Q_EXPANSION).into());

    let mismatches = ctx
        .q
        .coeffs()
        .iter()
        .zip(ctx.q_table.coeffs())
        .filter(|(a, b)| a != b)
        .count()
        + ctx.q.order().abs_diff(ctx.q_table.order());
    out.push(violations_report("q.table_matches_product", mismatches, ctx.q.order(), anchors::Q_EXPANSION).into());
    out
}

/// The 20.9197 constant, the sampled harmonic second coefficients and the
/// dilation sequence.
pub fn suite_theorem1(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    theorem1(&Context::new(cfg, &Overrides::default()))
}

fn random_shear(ctx: &Context, i: usize) -> Result<HarmonicMap, crate::harmonic::HarmonicError> {
    let mut rng = ctx.rng(11, i);
    let order = ctx.cfg.series_order;
    let cand = SchwarzCandidate::random(&mut rng, order);
    let s: f64 = rng.gen_range(0.1..0.9);
    let phi = cand.series().scale(Complex64::new(s, 0.0));
    // F is z or a rotated half-plane map, both convex.
    let big_f = if rng.gen_bool(0.5) {
        TruncatedSeries::identity(order)
    } else {
        let t = Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI));
        TruncatedSeries::geometric(order)
            .sub(&TruncatedSeries::one(order))
            .dilate(1.0)
            .compose(&TruncatedSeries::monomial(t, 1, order))
            .expect("inner series vanishes at 0")
            .scale(t.conj())
    };
    shear_construct(&phi, &big_f)
}

fn theorem1(ctx: &Context) -> Vec<CheckRecord> {
    let cfg = ctx.cfg;
    let k = &ctx.constants;
    let mut out: Vec<CheckRecord> = Vec::new();
    let ct = cfg.tol("constant");

    out.push(VerificationReport::close("constants.eight_ln2", missed_disk_alpha_limit(), k.eight_ln2, ct, anchors::CONSTANT_TABLE).into());
    out.push(VerificationReport::close("constants.theorem1_a2", missed_disk_constant(), k.theorem1_a2, ct, anchors::CONSTANT_TABLE).into());
    out.push(VerificationReport::close("constants.c0", c0_constant(), k.c0, ct, anchors::CONSTANT_TABLE).into());

    // missed-disk bound over admissible ratios r/|c| ∈ [1/16, 1]
    let samples: Vec<(f64, f64)> = (0..cfg.trials)
        .map(|i| {
            let mut rng = ctx.rng(21, i);
            let c = rng.gen_range(0.05..2.0);
            (c, c * rng.gen_range(1.0 / 16.0..=1.0))
        })
        .collect();
    let worst = fold_worst(
        samples.iter().map(|&(c, r)| {
            let d = MissedDiskDatum::new(Complex64::new(c, 0.0), r, None).expect("r ≤ |c|");
            VerificationReport::upper("", missed_disk_a2_bound(&d) / c, k.theorem1_a2, ct, anchors::MISSED_DISK)
        }),
        "theorem1.missed_disk.normalized_bound",
    );
    out.extend(worst.map(Into::into));
    let monotone_bad = samples
        .iter()
        .filter(|&&(c, r)| {
            let a = MissedDiskDatum::new(Complex64::new(c, 0.0), r * 0.9, None).unwrap();
            let b = MissedDiskDatum::new(Complex64::new(c, 0.0), r, None).unwrap();
            missed_disk_a2_bound(&b) > missed_disk_a2_bound(&a)
        })
        .count();
    out.push(violations_report("theorem1.missed_disk.decreasing_in_r", monotone_bad, samples.len(), anchors::MISSED_DISK).into());

    let koebe = harmonic_koebe(cfg.series_order);
    out.push(VerificationReport::upper("theorem1.a2.harmonic_koebe", koebe.a(2).norm(), k.theorem1_a2, 0.0, anchors::HARMONIC_A2).into());

    let mut shear_a2 = Vec::new();
    let mut conj = Vec::new();
    let mut skipped = 0;
    for i in 0..cfg.trials {
        match random_shear(ctx, i) {
            Ok(f) => {
                shear_a2.push(VerificationReport::upper("", f.a(2).norm(), k.theorem1_a2, 0.0, anchors::HARMONIC_A2));
                for n in 2..=3u32 {
                    let b = conjectured_bounds(n);
                    let (an, bn) = (f.a(n as usize).norm(), f.b(n as usize).norm());
                    conj.push(VerificationReport::upper("", an, b.analytic, 1e-12, anchors::CONJECTURED_BOUNDS));
                    conj.push(VerificationReport::upper("", bn, b.coanalytic, 1e-12, anchors::CONJECTURED_BOUNDS));
                    conj.push(VerificationReport::upper("", (an - bn).abs(), b.difference, 1e-12, anchors::CONJECTURED_BOUNDS));
                }
            }
            Err(_) => skipped += 1,
        }
    }
    match fold_worst(shear_a2, "theorem1.a2.shear_samples") {
        Some(r) => out.push(r.with_note(format!("{} shear maps, {skipped} rejected", cfg.trials - skipped)).into()),
        None => out.push(CheckRecord::skipped("theorem1.a2.shear_samples", anchors::HARMONIC_A2, "no admissible shear sample")),
    }
    out.extend(fold_worst(conj, "conjectured.shear_samples.n_le_3").map(Into::into));

    // dilation sequence ρ_k = 1 - 2^{-k}
    let a2s: Vec<(f64, f64)> = (1..=10)
        .map(|k| {
            let rho = 1.0 - 0.5f64.powi(k);
            (1.0 - rho, koebe.dilate(rho).a(2).norm())
        })
        .collect();
    let not_increasing = a2s.windows(2).filter(|w| !(w[1].1 > w[0].1)).count();
    out.push(violations_report("theorem1.dilation_sequence.increasing", not_increasing, a2s.len(), anchors::DILATION_SEQUENCE).into());
    let limit = extrapolate_to_zero(&a2s[a2s.len() - 3..]);
    out.push(VerificationReport::close("theorem1.dilation_sequence.limit", limit, koebe.a(2).norm(), 1e-12, anchors::DILATION_SEQUENCE).into());

    // exact equality of the harmonic Koebe map in the conjectured bounds
    let exact = harmonic_koebe_exact(cfg.series_order);
    let unequal = (2..=cfg.series_order)
        .filter(|&n| {
            let (ab, bb, db) = conjectured_bounds_exact(n as u32);
            let (an, bn) = (exact.a[n], exact.b[n]);
            an != ab || bn != bb || (an - bn).abs() != db
        })
        .count();
    out.push(violations_report(
        &format!("conjectured.harmonic_koebe_equality.n{}", cfg.series_order),
        unequal,
        cfg.series_order - 1,
        anchors::CONJECTURED_BOUNDS,
    )
    .into());

    let spot = SpotcheckOptions {
        samples: cfg.trials.min(200),
        radius: 0.9,
        seed: cfg.seed,
    };
    let spot_koebe = harmonic_koebe(256);
    for (label, f, theta) in [("identity", HarmonicMap::identity(cfg.series_order), 0.0), ("harmonic_koebe", spot_koebe, PI)] {
        let name = format!("univalence.spotcheck.{label}");
        match phi_theta_univalence_spotcheck(&f, theta, spot) {
            Ok(mut r) => {
                r.check_name = name;
                out.push(r.into());
            }
            Err(e) => out.push(CheckRecord::skipped(name, anchors::UNIVALENCE_SPOTCHECK, e)),
        }
    }
    out
}

/// Coefficient dominance, the β-relations, the functional search and the
/// nearest-point window.
pub fn suite_theorem2_3(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    theorem2_3(&Context::new(cfg, &Overrides::default()))
}

/// Univalent normalized maps with known nearest boundary point `a`:
/// `(name, h, a, exact closed form for boundary sampling)`.
fn univalent_samples(order: usize) -> Vec<(&'static str, TruncatedSeries, Complex64, fn(Complex64) -> Complex64)> {
    let half_plane = TruncatedSeries::geometric(order).sub(&TruncatedSeries::one(order));
    let koebe = half_plane.derivative().shift_up().truncate(order);
    let log = TruncatedSeries::geometric(order).integral(Complex64::new(0.0, 0.0)).truncate(order);
    vec![
        ("half_plane", half_plane, Complex64::new(-0.5, 0.0), |z| z / (1.0 - z)),
        ("koebe", koebe, Complex64::new(-0.25, 0.0), |z| z / ((1.0 - z) * (1.0 - z))),
        ("log", log, Complex64::new(-LN_2, 0.0), |z| -(1.0 - z).ln()),
    ]
}

fn theorem2_3(ctx: &Context) -> Vec<CheckRecord> {
    let cfg = ctx.cfg;
    let k = &ctx.constants;
    let order = cfg.series_order;
    let dom_tol = cfg.tol("dominance");
    let mut out: Vec<CheckRecord> = Vec::new();

    out.push(VerificationReport::close("constants.corollary_a2", a2_majorant(1.0), k.corollary_a2, 0.0, anchors::NORMALIZED_F_BOUNDS).into());
    let a1 = ctx.q.get(1).and_then(|a| a.to_f64()).unwrap_or(f64::NAN);
    out.push(VerificationReport::close("constants.class_f_lower", 1.0 / a1, k.class_f_lower, 0.0, anchors::NEAREST_POINT_BOUNDS).into());

    let q_series = ctx.q.to_series();
    let mut selfcheck = rogosinski_check(&q_series, &ctx.q_table, 1.0);
    selfcheck.check_name = "theorem2.rogosinski.self_subordination".into();
    out.push(selfcheck.into());

    let candidates: Vec<SchwarzCandidate> = (0..cfg.trials)
        .map(|i| SchwarzCandidate::random(&mut ctx.rng(31, i), order))
        .collect();
    for (label, scale) in [("1_16", 1.0 / 16.0), ("1_4", 0.25), ("1", 1.0)] {
        let reports: Vec<VerificationReport> = candidates
            .par_iter()
            .map(|phi| {
                let f = subordinate_to_q(Complex64::new(-scale, 0.0), phi, &ctx.q).expect("φ(0) = 0");
                rogosinski_check(&f, &ctx.q_table, scale)
            })
            .collect();
        out.extend(fold_worst(reports, &format!("theorem2.rogosinski.scale_{label}")).map(Into::into));
    }

    // β-relations against direct composition, random a
    let q3 = q_coefficients(3.max(order.min(6)));
    let rel: Vec<VerificationReport> = candidates
        .iter()
        .enumerate()
        .map(|(i, phi)| {
            let mut rng = ctx.rng(41, i);
            let a = Complex64::from_polar(rng.gen_range(1.0 / 16.0..2.0), rng.gen_range(0.0..2.0 * PI));
            let direct = subordinate_to_q(a, phi, &q3).expect("φ(0) = 0");
            let by_rel = beta_relations(a, phi);
            let err = (1..=3).map(|n| (direct.coeff(n) - by_rel[n - 1]).norm()).fold(0.0, f64::max);
            VerificationReport::upper("", err, 0.0, cfg.tol("coefficient"), anchors::SUBORDINATION_COEFFICIENTS)
        })
        .collect();
    out.extend(fold_worst(rel, "theorem2.beta_relations.composition").map(Into::into));

    // normalized constructions -aQ(φ), a = -1/(16β₁)
    let mut a1_err = Vec::new();
    let mut beta1 = Vec::new();
    let mut lower = Vec::new();
    let mut a2b = Vec::new();
    let mut a3b = Vec::new();
    for phi in candidates.iter().filter(|p| p.beta(1).norm() > 1e-3) {
        let a = normalizing_parameter(phi).expect("β₁ ≠ 0");
        let [c1, c2, c3] = beta_relations(a, phi);
        let am = a.norm();
        a1_err.push(VerificationReport::upper("", (c1 - 1.0).norm(), 0.0, 1e-12, anchors::SUBORDINATION_COEFFICIENTS));
        beta1.push(VerificationReport::close("", phi.beta(1).norm(), 1.0 / (16.0 * am), 1e-12, anchors::SUBORDINATION_COEFFICIENTS));
        lower.push(VerificationReport::lower("", am, k.class_f_lower, 1e-15, anchors::NEAREST_POINT_BOUNDS));
        let b2 = a2_majorant(am);
        a2b.push(VerificationReport::from_margin("", c2.norm(), b2, (b2 - c2.norm()) / b2.max(1.0), dom_tol, anchors::NEAREST_POINT_BOUNDS));
        let b3 = k.q_a3 as f64 * am;
        a3b.push(VerificationReport::from_margin("", c3.norm(), b3, (b3 - c3.norm()) / b3.max(1.0), dom_tol, anchors::NEAREST_POINT_BOUNDS));
    }
    for (list, name) in [
        (a1_err, "theorem2.constructions.a1_normalized"),
        (beta1, "theorem2.constructions.beta1_relation"),
        (lower, "theorem2.constructions.a_lower"),
        (a2b, "theorem2.constructions.a2_bound"),
        (a3b, "theorem2.constructions.a3_bound"),
    ] {
        match fold_worst(list, name) {
            Some(r) => out.push(r.into()),
            None => out.push(CheckRecord::skipped(name, anchors::NEAREST_POINT_BOUNDS, "no candidate with β₁ ≠ 0")),
        }
    }

    let lo = 1.0 / (4.0 * 2f64.sqrt());
    let xs: Vec<f64> = (0..=1000).map(|i| lo + (1.0 - lo) * i as f64 / 1000.0).collect();
    let bad = xs.windows(2).filter(|w| a2_majorant(w[1]) < a2_majorant(w[0])).count();
    out.push(violations_report("theorem2.a2_majorant_increasing", bad, xs.len(), anchors::NORMALIZED_F_BOUNDS).into());

    out.push(
        VerificationReport::lower("theorem2.ps.region", ps_region_check(16.0, 44.0) as u8 as f64, 1.0, 0.0, anchors::PROKHOROV_SZYNAL)
            .with_note("(μ, ν) = (16, 44)")
            .into(),
    );
    let witness = SchwarzCandidate::blaschke(0.0, &[], 3);
    out.push(VerificationReport::close("theorem2.ps.witness_identity", prokhorov_szynal_value(&witness, 16.0, 44.0), 44.0, 0.0, anchors::PROKHOROV_SZYNAL).into());
    let search = ps_search(16.0, 44.0, cfg.trials.max(PS_MIN_TRIALS), cfg.seed);
    out.push(
        VerificationReport::upper("theorem2.ps.search_max", search.max, 44.0, cfg.tol("functional"), anchors::PROKHOROV_SZYNAL)
            .with_note(format!("{} candidates, argmax index {}", search.trials, search.argmax_index))
            .into(),
    );

    // nearest-point window and the class-F embedding for univalent maps
    for (name, h, a, exact) in univalent_samples(order) {
        let bounds = nearest_point_bounds(a.norm(), WindowVariant::HyperbolicNormalized);
        let mut w = bounds.window;
        w.check_name = format!("theorem3.window.{name}");
        out.push(w.into());

        let curve = BoundaryCurve::image_of_circle(exact, 1.0 - 1e-7, 1 << 15).expect("finite image");
        let near = nearest_boundary(Complex64::new(0.0, 0.0), &curve);
        out.push(
            VerificationReport::close(format!("theorem3.nearest_point.{name}"), near.distance, a.norm(), near.resolution + 1e-6, anchors::NEAREST_BOUNDARY_WINDOW)
                .into(),
        );

        match crate::subordination::f_class_embed(&h, a) {
            Ok(g) => {
                let g2 = g.coeff(2).norm();
                out.push(VerificationReport::upper(format!("theorem3.embedded_a2.{name}"), g2, k.corollary_a2, 1e-12, anchors::HYPERBOLIC_WINDOW).into());
            }
            Err(e) => out.push(CheckRecord::skipped(format!("theorem3.embedded_a2.{name}"), anchors::HYPERBOLIC_WINDOW, e)),
        }
        out.push(VerificationReport::upper(format!("theorem2.corollary.a2.{name}"), h.coeff(2).norm(), k.corollary_a2, 1e-12, anchors::NORMALIZED_F_BOUNDS).into());
        out.push(VerificationReport::upper(format!("theorem2.corollary.a3.{name}"), h.coeff(3).norm(), k.q_a3 as f64, 1e-12, anchors::NORMALIZED_F_BOUNDS).into());
    }
    let unit_a = nearest_point_bounds(1.0, WindowVariant::HyperbolicNormalized);
    out.push(
        VerificationReport::upper("theorem3.window.identity_rejected", unit_a.window.passed as u8 as f64, 0.0, 0.0, anchors::HYPERBOLIC_WINDOW)
            .with_note("|a| = 1 lies outside the half-open window")
            .into(),
    );
    out
}

/// Spherical-area oracles and the area inequality.
pub fn suite_area(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>, HarnessError> {
    area(&Context::new(cfg, &Overrides::default()))
}

/// Shear of `F = z` with `φ = c z`.
pub fn linear_shear(c: Complex64, order: usize) -> HarmonicMap {
    let phi = TruncatedSeries::monomial(c, 1, order);
    shear_construct(&phi, &TruncatedSeries::identity(order)).expect("|c| < 1")
}

/// `∬ J/(1+|f|²)²` for `f = R z` over the unit disk, extrapolated to
/// `R → ∞` in `t = 1/R²`.
pub fn plane_area_limit(norm: Normalization) -> f64 {
    let q = DiskQuadrature::with_radius(1.0, 512, 4).expect("valid rule");
    let samples: Vec<(f64, f64)> = [16.0, 32.0, 64.0, 128.0]
        .iter()
        .map(|&r: &f64| {
            let f = HarmonicMap::analytic(TruncatedSeries::monomial(Complex64::new(r, 0.0), 1, 1));
            let a = spherical_area(&f, &q, norm).expect("positive Jacobian");
            (1.0 / (r * r), a.value)
        })
        .collect();
    extrapolate_to_zero(&samples)
}

/// Identity area over `|z| ≤ ρ` extrapolated to `ρ → 1` in `t = 1 - ρ`.
pub fn full_disk_identity_area(norm: Normalization, nodes: usize) -> f64 {
    let samples: Vec<(f64, f64)> = [0.99, 0.995, 0.999]
        .iter()
        .map(|&rho| {
            let q = DiskQuadrature::new(rho, nodes, 8).expect("valid rule");
            let a = spherical_area(&HarmonicMap::identity(1), &q, norm).expect("positive Jacobian");
            (1.0 - rho, a.value)
        })
        .collect();
    extrapolate_to_zero(&samples)
}

fn area(ctx: &Context) -> Result<Vec<CheckRecord>, HarnessError> {
    let cfg = ctx.cfg;
    let norm = cfg.normalization;
    let tol = cfg.tol("area");
    let quad = cfg.quadrature.build()?;
    let mut out: Vec<CheckRecord> = Vec::new();

    match spherical_area(&HarmonicMap::identity(1), &quad, norm) {
        Ok(a) => {
            let exact = norm.factor() * identity_area_closed_form(quad.rho_max());
            out.push(VerificationReport::close("area.identity.closed_form", a.value, exact, tol, anchors::SPHERICAL_AREA).into());
        }
        Err(e) => out.push(CheckRecord::skipped("area.identity.closed_form", anchors::SPHERICAL_AREA, e)),
    }
    out.push(
        VerificationReport::close(
            format!("area.plane_limit.{norm}"),
            plane_area_limit(norm),
            norm.sphere_area(),
            cfg.tol("plane_limit"),
            anchors::SPHERICAL_AREA,
        )
        .into(),
    );
    out.push(
        VerificationReport::close(
            format!("area.full_disk_limit.{norm}"),
            full_disk_identity_area(norm, 64),
            norm.sphere_area() / 2.0,
            1e-5,
            anchors::SPHERICAL_AREA,
        )
        .into(),
    );

    let r_max = quad.max_node_radius();
    let shear_order = cfg.series_order.max(256);
    let mut maps: Vec<(String, HarmonicMap, DiskQuadrature)> = vec![("identity".into(), HarmonicMap::identity(cfg.series_order), quad.clone())];
    for alpha in [0.3, 0.5, 0.7, 0.9] {
        if alpha < r_max {
            maps.push((format!("shear_alpha_{alpha}"), linear_shear(Complex64::new(alpha / r_max, 0.0), shear_order), quad.clone()));
        }
    }
    let koebe_quad = DiskQuadrature::new(quad.rho_max().min(0.9), cfg.quadrature.radial, cfg.quadrature.angular)?;
    maps.push(("harmonic_koebe".into(), harmonic_koebe(256), koebe_quad));

    let results: Vec<Vec<CheckRecord>> = maps
        .par_iter()
        .map(|(label, f, q)| {
            let name = format!("area.inequality.{label}");
            match area_inequality_check(f, q, norm, tol) {
                Ok(ineq) => {
                    let mut r = ineq.report;
                    r.check_name = name;
                    let cap = VerificationReport::upper(
                        format!("area.cap.{label}"),
                        ineq.area_f.value,
                        norm.sphere_area(),
                        tol + ineq.area_f.estimated_error,
                        anchors::SPHERICAL_AREA,
                    );
                    vec![r.into(), cap.into()]
                }
                Err(e) => vec![CheckRecord::skipped(name, anchors::AREA_INEQUALITY, e)],
            }
        })
        .collect();
    out.extend(results.into_iter().flatten());
    Ok(out)
}

/// Distortion and boundary-distance inequalities on test maps.
pub fn suite_distortion(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    distortion(&Context::new(cfg, &Overrides::default()))
}

/// 64 points: radii 0.2, 0.4, 0.6, 0.8 times 16 angles.
pub fn distortion_grid() -> Vec<Complex64> {
    [0.2, 0.4, 0.6, 0.8]
        .iter()
        .flat_map(|&r| (0..16).map(move |j| Complex64::from_polar(r, 2.0 * PI * (j as f64 + 0.5) / 16.0)))
        .collect()
}

/// Boundary sampling density for image curves.
pub const BOUNDARY_SAMPLES: usize = 4096;

fn distortion(ctx: &Context) -> Vec<CheckRecord> {
    let cfg = ctx.cfg;
    let k = &ctx.constants;
    let mut out: Vec<CheckRecord> = Vec::new();
    let grid = distortion_grid();
    let origin = Complex64::new(0.0, 0.0);

    let mut maps: Vec<(String, HarmonicMap)> = vec![
        ("identity".into(), HarmonicMap::identity(cfg.series_order)),
        ("shear_0.5".into(), linear_shear(Complex64::new(0.5, 0.0), 64)),
        ("harmonic_koebe_0.9".into(), harmonic_koebe(256).dilate(0.9)),
    ];
    for i in 0..4 {
        let mut rng = ctx.rng(51, i);
        let c = Complex64::from_polar(rng.gen_range(0.1..0.8), rng.gen_range(0.0..2.0 * PI));
        maps.push((format!("shear_random_{i}"), linear_shear(c, 96)));
    }

    let per_map: Vec<Vec<CheckRecord>> = maps
        .par_iter()
        .map(|(label, f)| {
            let mut recs: Vec<CheckRecord> = Vec::new();
            let (omega, d_curve) = match (
                BoundaryCurve::image_of_map(f, 1.0, BOUNDARY_SAMPLES),
                BoundaryCurve::image_of_series(f.h(), 1.0, BOUNDARY_SAMPLES).and_then(|c| c.outer_boundary()),
            ) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => {
                    recs.push(CheckRecord::skipped(format!("distortion.{label}"), anchors::DISTORTION_DISTANCE, e));
                    return recs;
                }
            };
            match distortion_sweep(f, &grid, &omega, &d_curve) {
                Ok(reports) => recs.extend(reports.into_iter().map(|mut r| {
                    r.check_name = format!("{}.{label}", r.check_name);
                    r.into()
                })),
                Err(e) => recs.push(CheckRecord::skipped(format!("distortion.grid.{label}"), anchors::DISTORTION_DISTANCE, e)),
            }
            match distortion_checks(f, origin, &omega, &d_curve) {
                Ok(reports) => recs.push(
                    VerificationReport::close(
                        format!("distortion.density_lower_at_origin.{label}"),
                        reports[0].bound,
                        1.0 / 16.0,
                        0.0,
                        anchors::DISTORTION_DENSITY,
                    )
                    .into(),
                ),
                Err(e) => recs.push(CheckRecord::skipped(format!("distortion.density_lower_at_origin.{label}"), anchors::DISTORTION_DENSITY, e)),
            }
            let near = nearest_boundary(origin, &d_curve);
            let mut w = nearest_boundary_window_check(near.distance, near.resolution);
            w.check_name = format!("distortion.nearest_boundary_window.{label}");
            recs.push(w.into());
            recs
        })
        .collect();
    out.extend(per_map.into_iter().flatten());

    // (bdf-1a) lower bound on class-F samples
    let mut lower = Vec::new();
    for i in 0..cfg.trials {
        let mut rng = ctx.rng(61, i);
        // -aQ(e^{iθ}z) omits exactly a, so d(0, ∂D) = |a|
        let theta = rng.gen_range(0.0..2.0 * PI);
        let phi = SchwarzCandidate::blaschke(theta, &[], 3);
        let a = normalizing_parameter(&phi).expect("β₁ ≠ 0");
        lower.push(VerificationReport::lower("", a.norm(), k.class_f_lower, 1e-15, anchors::NEAREST_BOUNDARY_WINDOW));
    }
    for i in 0..cfg.trials.min(64) {
        let mut rng = ctx.rng(62, i);
        let w = Complex64::from_polar(rng.gen_range(0.0..0.95), rng.gen_range(0.0..2.0 * PI));
        let p = if rng.gen_bool(0.5) { 1 } else { 2 };
        let curve = BoundaryCurve::image_of_circle(|z| z / (1.0 - w * z).powi(p), 1.0, 2048).expect("finite image");
        let near = nearest_boundary(origin, &curve);
        lower.push(VerificationReport::lower("", near.distance, k.class_f_lower, near.resolution, anchors::NEAREST_BOUNDARY_WINDOW));
    }
    out.extend(fold_worst(lower, "distortion.nearest_boundary_lower.class_f").map(Into::into));

    // Koebe quarter and hyperbolic-domain bounds on disk automorphism images
    let mut quarter = Vec::new();
    let mut hyp = Vec::new();
    for i in 0..cfg.trials.min(100) {
        let mut rng = ctx.rng(71, i);
        let w = Complex64::from_polar(rng.gen_range(0.0..0.9), rng.gen_range(0.0..2.0 * PI));
        let z = Complex64::from_polar(rng.gen_range(0.0..0.8), rng.gen_range(0.0..2.0 * PI));
        // h = z/(1 - wz), truncated where |w|^N is negligible
        let order = 400;
        let h = TruncatedSeries::geometric(order).dilate(w.norm()).compose(&TruncatedSeries::monomial(Complex64::from_polar(1.0, w.arg()), 1, order));
        let h = match h {
            Ok(s) => s.shift_up().truncate(order),
            Err(e) => {
                quarter.push(Err(e.to_string()));
                continue;
            }
        };
        let curve = BoundaryCurve::image_of_circle(|u| u / (1.0 - w * u), 1.0, 2048).expect("finite image");
        quarter.push(koebe_bounds_check(&h, z, &curve).map_err(|e| e.to_string()));
        let lambda = hyperbolic_density_disk(z).unwrap() / (1.0 - w * z).powi(-2).norm();
        hyp.push(euchypdom_bounds_check(z / (1.0 - w * z), &curve, lambda, k.c0));
    }
    let (ok, errs): (Vec<_>, Vec<_>) = quarter.into_iter().partition(|r| r.is_ok());
    match fold_worst(ok.into_iter().map(Result::unwrap), "metrics.koebe_quarter.disk_images") {
        Some(r) => out.push(r.with_note(format!("{} rejected samples", errs.len())).into()),
        None => out.push(CheckRecord::skipped("metrics.koebe_quarter.disk_images", anchors::KOEBE_QUARTER, "no admissible sample")),
    }
    out.extend(fold_worst(hyp, "metrics.hyperbolic_domain_density.disk_images").map(Into::into));
    let unit = BoundaryCurve::circle(origin, 1.0, BOUNDARY_SAMPLES).expect("circle");
    let mut r = euchypdom_bounds_check(origin, &unit, 1.0, k.c0);
    r.check_name = "metrics.hyperbolic_domain_density.unit_disk_origin".into();
    out.push(r.into());
    out
}

fn digest(cfg: &SuiteConfig, suite: Suite, overrides: &Overrides) -> String {
    let mut hasher = Sha256::new();
    hasher.update(serde_json::to_vec(cfg).expect("config serializes"));
    hasher.update(suite.to_string().as_bytes());
    hasher.update(serde_json::to_vec(&overrides.constants).expect("constants serialize"));
    if let Some(q) = &overrides.q_table {
        for c in q.coeffs() {
            hasher.update(c.to_string().as_bytes());
            hasher.update(b",");
        }
    }
    hex::encode(hasher.finalize())
}

pub fn run_all(cfg: &SuiteConfig) -> Result<ReportDocument, HarnessError> {
    run_suite(cfg, Suite::All, &Overrides::default())
}

/// Runs one suite (or all of them) and assembles the sorted document.
pub fn run_suite(cfg: &SuiteConfig, suite: Suite, overrides: &Overrides) -> Result<ReportDocument, HarnessError> {
    cfg.validate()?;
    let ctx = Context::new(cfg, overrides);
    let wanted = |s: Suite| suite == Suite::All || suite == s;

    let jobs: Vec<Suite> = [Suite::Theorem1, Suite::Theorem2, Suite::Area, Suite::Distortion]
        .into_iter()
        .filter(|&s| wanted(s))
        .collect();
    let parts: Vec<Vec<CheckRecord>> = jobs
        .par_iter()
        .map(|&s| match s {
            Suite::Theorem1 => Ok(theorem1(&ctx)),
            Suite::Theorem2 => {
                let mut v = suite_modular(&ctx);
                v.extend(theorem2_3(&ctx));
                Ok(v)
            }
            Suite::Area => area(&ctx),
            Suite::Distortion => Ok(distortion(&ctx)),
            Suite::All => unreachable!(),
        })
        .collect::<Result<_, HarnessError>>()?;

    let digest = digest(cfg, suite, overrides);
    let mut checks: Vec<CheckRecord> = parts
        .into_iter()
        .flatten()
        .map(|c| match c {
            CheckRecord::Checked(r) => CheckRecord::Checked(r.with_digest(digest.clone())),
            s => s,
        })
        .collect();
    checks.sort_by(|a, b| a.name().cmp(b.name()));

    let mut summary = Summary::default();
    for c in &checks {
        match c.passed() {
            Some(true) => summary.passed += 1,
            Some(false) => summary.failed += 1,
            None => summary.skipped += 1,
        }
    }
    Ok(ReportDocument {
        version: REPORT_VERSION.to_owned(),
        suite,
        config: cfg.clone(),
        constant_overrides: overrides.constants.differences(),
        q_table_overridden: overrides.q_table.is_some(),
        inputs_digest: digest,
        checks,
        summary,
    })
}
