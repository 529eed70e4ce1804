//! Polar quadrature on sub-disks and a couple of small numerical helpers.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("quadrature radius must lie in (0, 1), got {0}")]
    InvalidRadius(f64),
    #[error("quadrature needs at least one radial and one angular node")]
    NoNodes,
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// the three-term recurrence.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = vec![(0.0, 0.0); n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = (-x, w);
        out[n - 1 - i] = (x, w);
    }
    out
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Node-count pair `radial x angular`, as written on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeCounts {
    pub radial: usize,
    pub angular: usize,
}

impl std::fmt::Display for NodeCounts {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.radial, self.angular)
    }
}

impl std::str::FromStr for NodeCounts {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (r, a) = s
            .split_once(['x', 'X'])
            .ok_or_else(|| format!("expected RADIALxANGULAR, got {s:?}"))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| format!("bad node count {t:?}: {e}"))
        };
        Ok(Self {
            radial: parse(r)?,
            angular: parse(a)?,
        })
    }
}

/// Tensor-product rule on `|z| ≤ ρ_max`: Gauss–Legendre in `r` (weights
/// already carry the Jacobian factor `r`) times the uniform trapezoid in `θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskQuadrature {
    radial: Vec<(f64, f64)>,
    angular_count: usize,
    rho_max: f64,
}

impl DiskQuadrature {
    pub fn new(rho_max: f64, radial: usize, angular: usize) -> Result<Self, QuadratureError> {
        if !(rho_max > 0.0 && rho_max < 1.0) {
            return Err(QuadratureError::InvalidRadius(rho_max));
        }
        Self::with_radius(rho_max, radial, angular)
    }

    /// Same rule without the `ρ < 1` restriction, for integrating over
    /// arbitrary centred disks.
    pub fn with_radius(rho: f64, radial: usize, angular: usize) -> Result<Self, QuadratureError> {
        if radial == 0 || angular == 0 {
            return Err(QuadratureError::NoNodes);
        }
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(QuadratureError::InvalidRadius(rho));
        }
        let half = 0.5 * rho;
        let radial = gauss_legendre(radial)
            .into_iter()
            .map(|(x, w)| {
                let r = half * (x + 1.0);
                (r, half * w * r)
            })
            .collect();
        Ok(Self {
            radial,
            angular_count: angular,
            rho_max: rho,
        })
    }

    pub fn rho_max(&self) -> f64 {
        self.rho_max
    }

    pub fn radial_nodes(&self) -> &[(f64, f64)] {
        &self.radial
    }

    pub fn angular_count(&self) -> usize {
        self.angular_count
    }

    pub fn node_counts(&self) -> NodeCounts {
        NodeCounts {
            radial: self.radial.len(),
            angular: self.angular_count,
        }
    }

    pub fn angular_step(&self) -> f64 {
        2.0 * PI / self.angular_count as f64
    }

    /// Radius of the outermost node; any grid maximum is a lower estimate
    /// of the supremum over `|z| < 1`.
    pub fn max_node_radius(&self) -> f64 {
        self.radial.iter().map(|&(r, _)| r).fold(0.0, f64::max)
    }

    pub fn len(&self) -> usize {
        self.radial.len() * self.angular_count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All nodes `z` with their area weights.
    pub fn nodes(&self) -> impl Iterator<Item = (Complex64, f64)> + '_ {
        let dt = self.angular_step();
        self.radial.iter().flat_map(move |&(r, w)| {
            (0..self.angular_count).map(move |j| (Complex64::from_polar(r, j as f64 * dt), w * dt))
        })
    }

    /// Coarser rule with half the nodes in each direction, used to estimate
    /// quadrature error.
    pub fn coarsened(&self) -> Self {
        let radial = (self.radial.len() / 2).max(1);
        let angular = (self.angular_count / 2).max(1);
        Self::with_radius(self.rho_max, radial, angular).expect("valid parent rule")
    }

    /// `∬ F dA` over the disk. Per-ring sums run in parallel; the final
    /// reduction is a fixed pairwise tree so the result does not depend on
    /// scheduling.
    pub fn integrate<F, E>(&self, integrand: F) -> Result<f64, E>
    where
        F: Fn(Complex64) -> Result<f64, E> + Sync,
        E: Send,
    {
        let dt = self.angular_step();
        let rings: Vec<f64> = self
            .radial
            .par_iter()
            .map(|&(r, w)| {
                let samples = (0..self.angular_count)
                    .map(|j| integrand(Complex64::from_polar(r, j as f64 * dt)))
                    .collect::<Result<Vec<f64>, E>>()?;
                Ok(w * dt * pairwise_sum(&samples))
            })
            .collect::<Result<_, E>>()?;
        Ok(pairwise_sum(&rings))
    }
}

/// Deterministic pairwise (tree) summation.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n if n <= 8 => values.iter().sum(),
        n => {
            let (a, b) = values.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

/// Neville extrapolation of `(t_i, y_i)` samples to `t = 0`.
pub fn extrapolate_to_zero(samples: &[(f64, f64)]) -> f64 {
    let n = samples.len();
    assert!(n > 0, "extrapolation needs samples");
    let mut p: Vec<f64> = samples.iter().map(|s| s.1).collect();
    for level in 1..n {
        for i in 0..n - level {
            let ti = samples[i].0;
            let tj = samples[i + level].0;
            p[i] = (tj * p[i] - ti * p[i + 1]) / (tj - ti);
        }
    }
    p[0]
}
