//! Sparsity bounds for projections of i.i.d. inputs.

use statrs::function::erf::erfc;

use crate::error::{ProjectionError, Result};

/// Upper bound on the expected support size of the projection of `n` i.i.d.
/// `U[l, u]` entries onto the `b`-scaled simplex:
/// `sqrt(2b(n+1)/(u-l) + 1/4) + 1/2`, clamped to `n`.
pub fn expected_support_bound(n: usize, b: f64, l: f64, u: f64) -> Result<f64> {
    if n == 0 {
        return Err(ProjectionError::InvalidArgument("n must be at least 1".into()));
    }
    if !(u > l) {
        return Err(ProjectionError::InvalidArgument(format!("need u > l, got [{l}, {u}]")));
    }
    if !(b > 0.0 && b.is_finite()) {
        return Err(ProjectionError::InvalidScale(b));
    }
    let raw = (2.0 * b * (n as f64 + 1.0) / (u - l) + 0.25).sqrt() + 0.5;
    Ok(raw.min(n as f64))
}

/// Moments of `X` conditioned on the tail `X > t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailStats {
    /// `P(X > t)`
    pub prob: f64,
    /// `E[X | X > t]`
    pub mean: f64,
    /// `Var[X | X > t]`
    pub var: f64,
}

/// Width of the normal-approximation interval around `n * P(X > t)`, in
/// standard deviations.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Quantile {
    /// `q = sqrt(2 ln n)`, the choice that makes the interval hold with
    /// probability tending to one.
    #[default]
    LogN,
    /// A fixed number of standard deviations.
    Fixed(f64),
}

impl Quantile {
    fn value(self, n: usize) -> f64 {
        match self {
            Quantile::LogN => (2.0 * (n as f64).ln()).sqrt(),
            Quantile::Fixed(q) => q,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SparsityCertificate {
    pub q: f64,
    /// Lower end of the likely range of `|{i : d_i > t}|`.
    pub support_lower: u64,
    /// Upper end of the likely range of `|{i : d_i > t}|`.
    pub support_upper: u64,
    /// `2 Phi(q) - 1`, the normal-approximation mass of the interval.
    pub coverage: f64,
    /// Chebyshev lower bound on `P(tau > t)` given the support count sits at
    /// the interval's left end.
    pub conditional_bound: f64,
    /// `conditional_bound * coverage`.
    pub probability_lower_bound: f64,
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Probabilistic certificate that the pivot exceeds `t`, which caps the
/// support of the projection at roughly `n * P(X > t)` entries.
///
/// The support count `|{i : d_i > t}|` is binomial; its normal approximation
/// gives the interval `[floor(n e - q s), ceil(n e + q s)]` with
/// `s = sqrt(n e (1 - e))`. At the left end `m`, Chebyshev gives
/// `P(tau > t) >= 1 - var * m / ((mean - t) m - b)^2`, and the returned bound
/// multiplies that by the interval mass.
pub fn sparsity_certificate(
    n: usize,
    t: f64,
    tail: TailStats,
    b: f64,
    quantile: Quantile,
) -> Result<SparsityCertificate> {
    if n < 2 {
        return Err(ProjectionError::InvalidArgument("n must be at least 2".into()));
    }
    if !(tail.prob > 0.0 && tail.prob < 1.0) {
        return Err(ProjectionError::InvalidArgument(format!(
            "tail probability must lie in (0, 1), got {}",
            tail.prob
        )));
    }
    if !(tail.mean > t) {
        return Err(ProjectionError::InvalidArgument(format!(
            "conditional tail mean {} must exceed t = {t}",
            tail.mean
        )));
    }
    if !(tail.var >= 0.0) {
        return Err(ProjectionError::InvalidArgument(format!("negative variance {}", tail.var)));
    }
    if !(b > 0.0 && b.is_finite()) {
        return Err(ProjectionError::InvalidScale(b));
    }
    let q = quantile.value(n);
    let nf = n as f64;
    let center = nf * tail.prob;
    let spread = q * (nf * tail.prob * (1.0 - tail.prob)).sqrt();
    let support_lower = (center - spread).floor().max(0.0) as u64;
    let support_upper = (center + spread).ceil().min(nf) as u64;
    let coverage = 2.0 * normal_cdf(q) - 1.0;

    let m = support_lower as f64;
    let margin = (tail.mean - t) * m - b;
    let conditional_bound = if margin > 0.0 {
        (1.0 - tail.var * m / (margin * margin)).clamp(0.0, 1.0)
    } else {
        0.0
    };
    Ok(SparsityCertificate {
        q,
        support_lower,
        support_upper,
        coverage,
        conditional_bound,
        probability_lower_bound: conditional_bound * coverage,
    })
}
