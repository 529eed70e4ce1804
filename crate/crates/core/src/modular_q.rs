//! Exact Taylor coefficients of the modular function
//!
//! ```text
//! Q(z) = 16 z ∏_{n≥1} ((1 + z^{2n}) / (1 - z^{2n-1}))^8 = Σ_{n≥1} A_n z^n
//! ```
//!
//! The coefficients grow like `exp(2π√n)` (A_200 is about 10^38), so they are
//! kept as big integers.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::report::{anchors, VerificationReport};
use crate::series::TruncatedSeries;

/// Exact integer coefficients `A_1..A_N` (there is no constant term).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSeries {
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    /// `coeffs[0]` is `A_1`.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `A_n` for `1 ≤ n ≤ N`.
    pub fn get(&self, n: usize) -> Option<&BigInt> {
        n.checked_sub(1).and_then(|i| self.coeffs.get(i))
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs.iter().take(order).cloned().collect())
    }

    /// Replaces `A_n`; used to inject faults into a coefficient table.
    pub fn with_coefficient(mut self, n: usize, value: BigInt) -> Self {
        self.coeffs[n - 1] = value;
        self
    }

    /// `B_n = A_n - A_{n-1}` for `n = 1..N`, with `A_0 = 0`.
    pub fn first_differences(&self) -> Vec<BigInt> {
        differences(&self.coeffs)
    }

    /// `C_n = B_n - B_{n-1}` for `n = 1..N`, with `B_0 = A_0 - A_{-1} = 0`.
    pub fn second_differences(&self) -> Vec<BigInt> {
        differences(&self.first_differences())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
            .collect()
    }

    /// The series `0 + A_1 z + … + A_N z^N` in floating point.
    pub fn to_series(&self) -> TruncatedSeries {
        let mut coeffs = vec![Complex64::new(0.0, 0.0)];
        coeffs.extend(self.to_f64().into_iter().map(|a| Complex64::new(a, 0.0)));
        TruncatedSeries::new(coeffs).expect("coefficients below 10^300 are finite")
    }
}

fn differences(seq: &[BigInt]) -> Vec<BigInt> {
    let mut prev = BigInt::zero();
    seq.iter()
        .map(|a| {
            let d = a - &prev;
            prev = a.clone();
            d
        })
        .collect()
}

/// Product of two polynomials, keeping degrees `≤ max_degree`.
fn mul_truncated(a: &[BigInt], b: &[BigInt], max_degree: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); max_degree + 1];
    for (i, ai) in a.iter().enumerate().take(max_degree + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(max_degree + 1 - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

/// Exact `A_1..A_N` of `Q`.
///
/// Factor `n` first touches degree `2n - 1`, so factors are included while
/// `2n - 1 ≤ N`. Each factor is raised to the eighth power by three squarings
/// before it is folded into the running product.
///
/// # Panics
///
/// If `order` is zero.
pub fn q_coefficients(order: usize) -> IntSeries {
    assert!(order >= 1, "Q expansion needs order ≥ 1");
    // Q = 16 z P(z); P is needed through degree N - 1.
    let deg = order - 1;
    let mut product = vec![BigInt::zero(); deg + 1];
    product[0] = BigInt::from(1);

    let mut n = 1;
    while 2 * n - 1 <= order {
        let odd = 2 * n - 1;
        let even = 2 * n;
        // (1 + z^{2n}) / (1 - z^{2n-1}) = (1 + z^{2n}) Σ_k z^{k(2n-1)}
        let mut factor = vec![BigInt::zero(); deg + 1];
        for k in (0..=deg).step_by(odd) {
            factor[k] += 1;
            if k + even <= deg {
                factor[k + even] += 1;
            }
        }
        for _ in 0..3 {
            factor = mul_truncated(&factor, &factor, deg);
        }
        product = mul_truncated(&product, &factor, deg);
        n += 1;
    }
    IntSeries::new(product.into_iter().map(|p| p * 16).collect())
}

/// Coefficients of `J(z) = -Q(-z)`, i.e. `(-1)^{n+1} A_n`.
pub fn j_coefficients(q: &IntSeries) -> IntSeries {
    IntSeries::new(
        q.coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| if i % 2 == 0 { a.clone() } else { -a })
            .collect(),
    )
}

/// Evaluates `Q(z)` for `|z| < 1` directly from the infinite product, stopping
/// once the remaining factors are within rounding of one.
pub fn q_eval(z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let mut acc = one;
    let mut odd_power = z; // z^{2n-1}
    let z2 = z * z;
    loop {
        let even_power = odd_power * z;
        let factor = (one + even_power) / (one - odd_power);
        let f2 = factor * factor;
        let f4 = f2 * f2;
        acc *= f4 * f4;
        if odd_power.norm() < 1e-18 {
            break;
        }
        odd_power *= z2;
    }
    z * acc * 16.0
}

/// Passes iff `B_n ≥ 0` and `C_n ≥ 0` for every `n` (with `A_0 = A_{-1} = 0`).
///
/// The comparison is exact; `computed` reports the smallest difference found
/// (converted to `f64`), and the note names the first offending index.
pub fn check_convex_nondecreasing(s: &IntSeries) -> VerificationReport {
    let b = s.first_differences();
    let c = s.second_differences();
    let min = b.iter().chain(c.iter()).min().cloned().unwrap_or_default();
    let first_bad = b
        .iter()
        .zip(&c)
        .position(|(bn, cn)| bn.is_negative() || cn.is_negative());
    let computed = min.to_f64().unwrap_or(f64::NEG_INFINITY);
    let passed = first_bad.is_none();
    let mut report = VerificationReport::lower(
        format!("q.convex_nondecreasing.n{}", s.order()),
        computed,
        0.0,
        0.0,
        anchors::Q_CONVEXITY,
    );
    // exactness: the float conversion must not mask a sign.
    report.passed = passed;
    match first_bad {
        Some(i) => report.with_note(format!("first negative difference at n = {}", i + 1)),
        None => report,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_coefficients() {
        assert_eq!(q_coefficients(1), IntSeries::from_i64(&[16]));
        assert_eq!(q_coefficients(2), IntSeries::from_i64(&[16, 128]));
        assert_eq!(q_coefficients(3), IntSeries::from_i64(&[16, 128, 704]));
    }

    #[test]
    fn convexity_examples() {
        assert!(check_convex_nondecreasing(&q_coefficients(60)).passed);
        let r = check_convex_nondecreasing(&IntSeries::from_i64(&[16, 8]));
        assert!(!r.passed);
        assert_eq!(r.note.as_deref(), Some("first negative difference at n = 2"));
        assert!(check_convex_nondecreasing(&IntSeries::from_i64(&[0, 0, 0])).passed);
    }

    #[test]
    fn differences_use_zero_prefix() {
        let s = IntSeries::from_i64(&[16, 128, 704]);
        assert_eq!(s.first_differences(), IntSeries::from_i64(&[16, 112, 576]).coeffs);
        assert_eq!(s.second_differences(), IntSeries::from_i64(&[16, 96, 464]).coeffs);
    }

    #[test]
    fn j_flips_alternate_signs() {
        let j = j_coefficients(&q_coefficients(3));
        assert_eq!(j, IntSeries::from_i64(&[16, -128, 704]));
    }

    #[test]
    fn product_evaluation_matches_series() {
        let q = q_coefficients(80).to_series();
        for z in [Complex64::new(0.2, 0.1), Complex64::new(-0.3, 0.0), Complex64::new(0.0, 0.35)] {
            let a = q.evaluate(z);
            let b = q_eval(z);
            assert!((a - b).norm() < 1e-10 * b.norm().max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn q_omits_minus_one_along_negative_axis() {
        // Q(-x) decreases towards -1 as x → 1 without crossing it.
        let mut prev = 0.0;
        for x in [0.1, 0.3, 0.5, 0.7] {
            let v = q_eval(Complex64::new(-x, 0.0));
            assert!(v.im.abs() < 1e-12);
            assert!(v.re < prev);
            prev = v.re;
        }
        for x in [0.9, 0.99, 0.999] {
            let v = q_eval(Complex64::new(-x, 0.0));
            assert!(v.re >= -1.0 - 1e-12 && (v.re + 1.0).abs() < 1e-9, "{v}");
        }
    }
}
