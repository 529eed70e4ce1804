//! Truncated complex power series.
//!
//! A [`TruncatedSeries`] stores the Taylor coefficients `c_0..c_N` of an
//! analytic function at the origin. Binary operations truncate to the smaller
//! of the two orders, since coefficients past that point would depend on
//! terms neither operand carries.

use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("a series needs at least one coefficient")]
    Empty,
    #[error("coefficient {index} is not finite")]
    NonFinite { index: usize },
    #[error("inner series has nonzero constant term {value}; composition needs φ(0) = 0")]
    NonvanishingConstantTerm { value: Complex64 },
    #[error("series has zero constant term and cannot be inverted")]
    DivisionByZeroConstantTerm,
}

/// Complex Taylor coefficients `c_0..c_N` of an analytic function.
///
/// The order `N` is `coeffs.len() - 1`; every coefficient is finite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TryFrom<Vec<Complex64>> for TruncatedSeries {
    type Error = SeriesError;

    fn try_from(coeffs: Vec<Complex64>) -> Result<Self, Self::Error> {
        Self::new(coeffs)
    }
}

impl From<TruncatedSeries> for Vec<Complex64> {
    fn from(s: TruncatedSeries) -> Self {
        s.coeffs
    }
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(SeriesError::NonFinite { index });
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self, SeriesError> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    // Internal constructor for results of arithmetic on valid series.
    fn from_vec(coeffs: Vec<Complex64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_vec(vec![Complex64::new(0.0, 0.0); order + 1])
    }

    pub fn constant(value: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex64::new(1.0, 0.0), order)
    }

    /// `c·z^k` truncated at `order` (zero if `k > order`).
    pub fn monomial(value: Complex64, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = value;
        }
        s
    }

    /// The identity function `z`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(Complex64::new(1.0, 0.0), 1, order)
    }

    /// Geometric series `1/(1 - z)`.
    pub fn geometric(order: usize) -> Self {
        Self::from_vec(vec![Complex64::new(1.0, 0.0); order + 1])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient `k`, or zero past the truncation order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Complex64::new(0.0, 0.0));
        Self::from_vec(coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_vec((0..=n).map(|k| self.coeffs[k] + other.coeffs[k]).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_vec((0..=n).map(|k| self.coeffs[k] - other.coeffs[k]).collect())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::from_vec(self.coeffs.iter().map(|&c| c * factor).collect())
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        for (i, &a) in self.coeffs[..=n].iter().enumerate() {
            if a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, &b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_vec(out)
    }

    /// Multiplication by `z`; the order grows by one and no information is lost.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex64::new(0.0, 0.0));
        coeffs.extend_from_slice(&self.coeffs);
        Self::from_vec(coeffs)
    }

    /// Taylor coefficients of `self ∘ inner`, by right-to-left Horner nesting.
    ///
    /// `inner` must vanish at the origin; otherwise every output coefficient
    /// would depend on the discarded tail of `self`.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        let c0 = inner.coeffs[0];
        if c0.norm() > 0.0 {
            return Err(SeriesError::NonvanishingConstantTerm { value: c0 });
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::constant(self.coeffs[n], n);
        for k in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let a0 = self.coeffs[0];
        if a0.norm() == 0.0 {
            return Err(SeriesError::DivisionByZeroConstantTerm);
        }
        let inv0 = a0.inv();
        let n = self.order();
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        out[0] = inv0;
        for k in 1..=n {
            let s: Complex64 = (1..=k).map(|j| self.coeffs[j] * out[k - j]).sum();
            out[k] = -s * inv0;
        }
        Ok(Self::from_vec(out))
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&other.reciprocal()?))
    }

    /// Termwise derivative; the order drops by one (a constant stays order 0).
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::from_vec(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, &c)| c * (k + 1) as f64)
                .collect(),
        )
    }

    /// Antiderivative with the given constant term; the order grows by one.
    pub fn integral(&self, constant: Complex64) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(constant);
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| c / (k + 1) as f64),
        );
        Self::from_vec(coeffs)
    }

    /// `exp(self)` via the recurrence `k·E_k = Σ j·f_j·E_{k-j}`.
    pub fn exp(&self) -> Self {
        let n = self.order();
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        out[0] = Complex64::new(1.0, 0.0);
        for k in 1..=n {
            let s: Complex64 = (1..=k)
                .map(|j| self.coeffs[j] * j as f64 * out[k - j])
                .sum();
            out[k] = s / k as f64;
        }
        Self::from_vec(out).scale(self.coeffs[0].exp())
    }

    pub fn powi(&self, mut exponent: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while exponent > 0 {
            if exponent & 1 == 1 {
                acc = acc.mul(&base);
            }
            exponent >>= 1;
            if exponent > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Coefficients of `z ↦ self(ρ·z)`.
    pub fn dilate(&self, rho: f64) -> Self {
        let mut power = 1.0;
        Self::from_vec(
            self.coeffs
                .iter()
                .map(|&c| {
                    let out = c * power;
                    power *= rho;
                    out
                })
                .collect(),
        )
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Largest coefficient modulus of `self - other` over the common order.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other)
            .coeffs
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// `index,re,im` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,re,im\n");
        for (k, c) in self.coeffs.iter().enumerate() {
            let _ = writeln!(out, "{k},{},{}", c.re, c.im);
        }
        out
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn real(coeffs: &[f64]) -> TruncatedSeries {
        TruncatedSeries::from_real(coeffs).unwrap()
    }

    #[test]
    fn add_pins_order_to_min() {
        let s = real(&[1.0, 1.0]).add(&real(&[1.0, -1.0, 0.0]));
        assert_eq!(s, real(&[2.0, 0.0]));
        assert_eq!(real(&[0.0, 1.0]).add(&TruncatedSeries::zero(1)), real(&[0.0, 1.0]));
        assert_eq!(
            real(&[0.0, 1.0, 2.0]).add(&real(&[0.0, 1.0, 3.0])),
            real(&[0.0, 2.0, 5.0])
        );
    }

    #[test]
    fn mul_examples() {
        let p = real(&[1.0, -1.0, 0.0, 0.0]).mul(&real(&[1.0, 1.0, 1.0, 1.0]));
        assert_eq!(p, real(&[1.0, 0.0, 0.0, 0.0]));
        assert_eq!(real(&[1.0, 1.0, 0.0]).powi(2), real(&[1.0, 2.0, 1.0]));

        // (Σ (n+1) z^n)^2: hand convolution gives 1, 4, 10, 20.
        let s = real(&[1.0, 2.0, 3.0, 4.0]);
        let mut brute = [0.0; 4];
        for i in 0..4 {
            for j in 0..4 - i {
                brute[i + j] += (i + 1) as f64 * (j + 1) as f64;
            }
        }
        assert_eq!(brute, [1.0, 4.0, 10.0, 20.0]);
        assert_eq!(s.mul(&s), real(&brute));
    }

    #[test]
    fn compose_examples() {
        let f = real(&[0.0, 0.0, 1.0]);
        let phi = real(&[0.0, 2.0, 0.0]);
        assert_eq!(f.compose(&phi).unwrap(), real(&[0.0, 0.0, 4.0]));

        // z/(1-z) at order 4 composed with z^2 is z^2 + z^4.
        let f = real(&[0.0, 1.0, 1.0, 1.0, 1.0]);
        let phi = real(&[0.0, 0.0, 1.0, 0.0, 0.0]);
        assert_eq!(f.compose(&phi).unwrap(), real(&[0.0, 0.0, 1.0, 0.0, 1.0]));
    }

    #[test]
    fn compose_rejects_constant_term() {
        let f = real(&[0.0, 1.0]);
        let err = f.compose(&real(&[0.1, 1.0])).unwrap_err();
        assert!(matches!(err, SeriesError::NonvanishingConstantTerm { .. }));
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(
            real(&[1.0, -1.0, 0.0, 0.0]).reciprocal().unwrap(),
            TruncatedSeries::geometric(3)
        );
        assert_eq!(real(&[2.0]).reciprocal().unwrap(), real(&[0.5]));
        // binomial series of (1-z)^{-2}
        let sq = real(&[1.0, -2.0, 1.0, 0.0, 0.0, 0.0]);
        let expected: Vec<f64> = (0..6).map(|n| (n + 1) as f64).collect();
        assert_eq!(sq.reciprocal().unwrap(), real(&expected));
        assert_eq!(
            real(&[0.0, 1.0]).reciprocal().unwrap_err(),
            SeriesError::DivisionByZeroConstantTerm
        );
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(real(&[0.0, 1.0, 1.0]).derivative(), real(&[1.0, 2.0]));
        assert_eq!(real(&[5.0]).derivative(), real(&[0.0]));
        let log = real(&[0.0, 1.0, 0.5, 1.0 / 3.0, 0.25]);
        assert_eq!(log.derivative(), real(&[1.0, 1.0, 1.0, 1.0]));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(real(&[1.0, 1.0, 1.0]).evaluate(c(0.0)), c(1.0));
        let mut coeffs = vec![1.0; 21];
        coeffs[0] = 0.0;
        let v = real(&coeffs).evaluate(c(0.5));
        // closed form of the partial geometric sum: 1 - 0.5^20
        assert!((v.re - (1.0 - 0.5f64.powi(20))).abs() < 1e-15);
        assert!((v.re - 1.0).abs() < 1e-5);
    }

    #[test]
    fn derivative_matches_central_difference() {
        let s = real(&[0.3, -1.0, 0.25, 2.0, -0.5, 0.1]);
        let z = c(0.3);
        let eps = 1e-6;
        let fd = (s.evaluate(z + eps) - s.evaluate(z - eps)) / (2.0 * eps);
        assert!((s.derivative().evaluate(z) - fd).norm() < 1e-6);
    }

    #[test]
    fn exp_of_identity() {
        let e = TruncatedSeries::identity(6).exp();
        let mut fact = 1.0;
        for k in 0..=6 {
            if k > 0 {
                fact *= k as f64;
            }
            assert!((e.coeff(k).re - 1.0 / fact).abs() < 1e-15);
        }
    }

    #[test]
    fn integral_inverts_derivative() {
        let s = real(&[0.0, 1.0, -2.0, 0.5]);
        assert_eq!(s.derivative().integral(c(0.0)), s);
    }

    #[test]
    fn new_validates() {
        assert_eq!(TruncatedSeries::new(vec![]), Err(SeriesError::Empty));
        assert_eq!(
            TruncatedSeries::from_real(&[1.0, f64::NAN]),
            Err(SeriesError::NonFinite { index: 1 })
        );
    }

    #[test]
    fn csv_dump() {
        let csv = real(&[1.0, 0.5]).to_csv();
        assert_eq!(csv, "index,re,im\n0,1,0\n1,0.5,0\n");
    }

    #[test]
    fn serde_rejects_non_finite_free_empty() {
        let s: TruncatedSeries = serde_json::from_str("[[1.0,0.0],[0.5,-1.0]]").unwrap();
        assert_eq!(s.coeff(1), Complex64::new(0.5, -1.0));
        assert!(serde_json::from_str::<TruncatedSeries>("[]").is_err());
    }
}
