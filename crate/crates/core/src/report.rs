//! Named pass/fail records shared by every checking routine.

use serde::{Deserialize, Serialize};

/// Fixed provenance anchors. Every report names exactly one of these.
pub mod anchors {
    pub const Q_EXPANSION: &str = "modular-function product expansion";
    pub const Q_CONVEXITY: &str = "convex non-decreasing coefficients of Q";
    pub const COEFFICIENT_DOMINANCE: &str = "coefficient dominance under subordination to Q";
    pub const SUBORDINATION_COEFFICIENTS: &str = "subordination coefficient relations f = -aQ(φ)";
    pub const NEAREST_POINT_BOUNDS: &str = "nearest-boundary-point bounds for class F";
    pub const NORMALIZED_F_BOUNDS: &str = "normalized class F bounds |a2| ≤ 16.5, |a3| ≤ 704";
    pub const HYPERBOLIC_WINDOW: &str = "nearest-point window 1/16.5 ≤ |a| < 1";
    pub const PROKHOROV_SZYNAL: &str = "Prokhorov-Szynal functional bound";
    pub const MISSED_DISK: &str = "missed-disk second-coefficient bound";
    pub const HARMONIC_A2: &str = "second-coefficient bound for normalized univalent harmonic maps (sampled subfamilies only)";
    pub const DILATION_SEQUENCE: &str = "dilation sequence h_ρ(z) = h(ρz)/ρ";
    pub const CONJECTURED_BOUNDS: &str = "conjectured harmonic coefficient bounds";
    pub const CONSTANT_TABLE: &str = "printed constant table";
    pub const SPHERICAL_AREA: &str = "spherical area of a covering surface";
    pub const AREA_INEQUALITY: &str = "spherical area inequality under bounded dilatation";
    pub const KOEBE_QUARTER: &str = "Koebe one-quarter density bounds";
    pub const HYPERBOLIC_DISTANCE: &str = "hyperbolic-domain density bounds with β and C0";
    pub const DISTORTION_DENSITY: &str = "harmonic distortion d(f(z),∂Ω)·λ_D(h(z))";
    pub const DISTORTION_DISTANCE: &str = "harmonic distortion d(f(z),∂Ω) ≤ 2 d(h(z),∂D)";
    pub const NEAREST_BOUNDARY_WINDOW: &str = "nearest boundary distance 1/16 ≤ d(0,∂D) ≤ 1";
    pub const UNIVALENCE_SPOTCHECK: &str = "Φ_θ = h + e^{iθ}g univalence spot check (evidence only)";

    pub const ALL: &[&str] = &[
        Q_EXPANSION,
        Q_CONVEXITY,
        COEFFICIENT_DOMINANCE,
        SUBORDINATION_COEFFICIENTS,
        NEAREST_POINT_BOUNDS,
        NORMALIZED_F_BOUNDS,
        HYPERBOLIC_WINDOW,
        PROKHOROV_SZYNAL,
        MISSED_DISK,
        HARMONIC_A2,
        DILATION_SEQUENCE,
        CONJECTURED_BOUNDS,
        CONSTANT_TABLE,
        SPHERICAL_AREA,
        AREA_INEQUALITY,
        KOEBE_QUARTER,
        HYPERBOLIC_DISTANCE,
        DISTORTION_DENSITY,
        DISTORTION_DISTANCE,
        NEAREST_BOUNDARY_WINDOW,
        UNIVALENCE_SPOTCHECK,
    ];
}

/// Outcome of one numeric check.
///
/// `margin` is signed so that a nonnegative value means the inequality holds;
/// `passed` is exactly `margin >= -tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub computed: f64,
    pub bound: f64,
    pub margin: f64,
    pub passed: bool,
    pub tolerance: f64,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub inputs_digest: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerificationReport {
    pub fn from_margin(
        check_name: impl Into<String>,
        computed: f64,
        bound: f64,
        margin: f64,
        tolerance: f64,
        provenance: &str,
    ) -> Self {
        debug_assert!(!provenance.is_empty());
        Self {
            check_name: check_name.into(),
            computed,
            bound,
            margin,
            // NaN margins fail.
            passed: margin >= -tolerance,
            tolerance,
            provenance: provenance.to_owned(),
            inputs_digest: String::new(),
            note: None,
        }
    }

    /// `computed ≤ bound`.
    pub fn upper(
        check_name: impl Into<String>,
        computed: f64,
        bound: f64,
        tolerance: f64,
        provenance: &str,
    ) -> Self {
        Self::from_margin(check_name, computed, bound, bound - computed, tolerance, provenance)
    }

    /// `computed ≥ bound`.
    pub fn lower(
        check_name: impl Into<String>,
        computed: f64,
        bound: f64,
        tolerance: f64,
        provenance: &str,
    ) -> Self {
        Self::from_margin(check_name, computed, bound, computed - bound, tolerance, provenance)
    }

    /// `|computed - expected| ≤ tolerance`.
    pub fn close(
        check_name: impl Into<String>,
        computed: f64,
        expected: f64,
        tolerance: f64,
        provenance: &str,
    ) -> Self {
        let margin = -(computed - expected).abs();
        Self::from_margin(check_name, computed, expected, margin, tolerance, provenance)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_digest(mut self, digest: impl Into<String>) -> Self {
        self.inputs_digest = digest.into();
        self
    }

    /// Keeps whichever of the two reports has the smaller margin relative to
    /// its tolerance; used to fold many trials into one record.
    pub fn worst(self, other: Self) -> Self {
        let key = |r: &Self| {
            if r.margin.is_nan() {
                f64::NEG_INFINITY
            } else {
                r.margin + r.tolerance
            }
        };
        if key(&other) < key(&self) {
            other
        } else {
            self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn passed_iff_margin_within_tolerance() {
        let r = VerificationReport::upper("x", 1.0 + 1e-9, 1.0, 1e-8, anchors::MISSED_DISK);
        assert!(r.passed);
        let r = VerificationReport::upper("x", 1.0 + 1e-7, 1.0, 1e-8, anchors::MISSED_DISK);
        assert!(!r.passed);
        let r = VerificationReport::lower("x", f64::NAN, 1.0, 1.0, anchors::MISSED_DISK);
        assert!(!r.passed);
        let r = VerificationReport::close("x", 2.0, 2.0, 0.0, anchors::MISSED_DISK);
        assert!(r.passed && r.margin == 0.0);
    }

    #[test]
    fn worst_prefers_smaller_margin() {
        let a = VerificationReport::upper("a", 0.5, 1.0, 0.0, anchors::MISSED_DISK);
        let b = VerificationReport::upper("b", 0.9, 1.0, 0.0, anchors::MISSED_DISK);
        assert_eq!(a.clone().worst(b.clone()).check_name, "b");
        assert_eq!(b.worst(a).check_name, "b");
    }
}
