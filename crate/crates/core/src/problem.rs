//! Problem and solution types for projection onto the scaled simplex
//! `{v >= 0 : sum(v) = b}`, plus the pivot characterization shared by every
//! solver.
//!
//! The projection of `d` is `v_i = max(d_i - tau, 0)` for a unique pivot
//! `tau`, and the active set is `{i : d_i > tau}`. Comparisons are strict
//! everywhere: an entry exactly equal to the pivot gets value zero.

use crate::error::{ProjectionError, Result};
use crate::sum::Neumaier;

/// Default relative tolerance used by the solvers' internal checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A dense input vector `d` together with the simplex scale `b > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionInstance {
    d: Vec<f64>,
    b: f64,
}

impl ProjectionInstance {
    pub fn new(d: Vec<f64>, b: f64) -> Result<Self> {
        validate(&d, b)?;
        Ok(Self { d, b })
    }

    pub fn d(&self) -> &[f64] {
        &self.d
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    pub fn into_parts(self) -> (Vec<f64>, f64) {
        (self.d, self.b)
    }
}

pub(crate) fn validate_scale(b: f64) -> Result<()> {
    if !(b.is_finite() && b > 0.0) {
        return Err(ProjectionError::InvalidScale(b));
    }
    Ok(())
}

pub(crate) fn validate(d: &[f64], b: f64) -> Result<()> {
    if d.is_empty() {
        return Err(ProjectionError::Empty);
    }
    validate_scale(b)?;
    if let Some((index, &value)) = d.iter().enumerate().find(|(_, x)| !x.is_finite()) {
        return Err(ProjectionError::NonFinite { index, value });
    }
    Ok(())
}

/// Sparse projection output: pivot, strictly increasing active indices and
/// their positive values.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SparseProjection {
    pub tau: f64,
    pub indices: Vec<usize>,
    pub values: Vec<f64>,
}

impl SparseProjection {
    pub fn support_size(&self) -> usize {
        self.indices.len()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().copied().collect::<Neumaier>().value()
    }

    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).collect::<Neumaier>().value()
    }

    pub fn to_dense(&self, n: usize) -> Vec<f64> {
        let mut out = vec![0.0; n];
        for (&i, &v) in self.indices.iter().zip(&self.values) {
            out[i] = v;
        }
        out
    }
}

/// Work counters recorded by the solvers.
///
/// `elements_scanned` counts one touch per candidate element per pass.
/// `preprocess_scanned` is the part of it spent before the main loop (the
/// Filter for Condat-type methods, local solves for distributed ones).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub elements_scanned: usize,
    pub outer_iterations: usize,
    pub reduced_size: usize,
    pub preprocess_scanned: usize,
    pub dense_fallback: bool,
}

impl SolverStats {
    /// Elements touched after preprocessing.
    pub fn main_scanned(&self) -> usize {
        self.elements_scanned - self.preprocess_scanned
    }
}

/// `f(t) = (sum_{d_i > t} d_i - b) / |{d_i > t}| - t`, or `-b` when no entry
/// exceeds `t`. Positive below the pivot and negative above it.
pub fn pivot_fn(instance: &ProjectionInstance, t: f64) -> f64 {
    let mut acc = Neumaier::new();
    let mut count = 0usize;
    for &x in instance.d() {
        if x > t {
            acc.add(x);
            count += 1;
        }
    }
    if count == 0 {
        return -instance.b();
    }
    (acc.value() - instance.b()) / count as f64 - t
}

/// Rebuild the projection from a pivot. Fails with
/// [`ProjectionError::BadPivot`] if the result misses the scale.
pub fn reconstruct(instance: &ProjectionInstance, tau: f64) -> Result<SparseProjection> {
    let proj = reconstruct_from(instance.d(), 0..instance.n(), tau);
    check_sum(instance.d(), &proj, instance.b())?;
    Ok(proj)
}

pub(crate) fn reconstruct_from<I>(d: &[f64], candidates: I, tau: f64) -> SparseProjection
where
    I: IntoIterator<Item = usize>,
{
    let mut indices = Vec::new();
    let mut values = Vec::new();
    for i in candidates {
        let x = d[i];
        if x > tau {
            indices.push(i);
            values.push(x - tau);
        }
    }
    SparseProjection { tau, indices, values }
}

fn check_sum(d: &[f64], proj: &SparseProjection, b: f64) -> Result<()> {
    let sum = proj.sum();
    let scale = proj.indices.iter().map(|&i| d[i].abs()).fold(proj.tau.abs(), f64::max);
    let slack = DEFAULT_TOL * b.max(1.0) + 8.0 * f64::EPSILON * proj.support_size() as f64 * scale;
    if (sum - b).abs() > slack {
        return Err(ProjectionError::BadPivot { tau: proj.tau, sum, b });
    }
    Ok(())
}

/// Final step shared by the solvers: take a candidate set known to contain
/// the active set, recompute the pivot from the entries above `tau_hint` with
/// compensated summation, and build the output. Candidates must be ascending
/// for the output indices to be sorted.
pub(crate) fn finish(d: &[f64], b: f64, candidates: &[usize], tau_hint: f64) -> Result<SparseProjection> {
    let mut acc = Neumaier::new();
    let mut count = 0usize;
    for &i in candidates {
        if d[i] > tau_hint {
            acc.add(d[i]);
            count += 1;
        }
    }
    let tau = if count == 0 { tau_hint } else { (acc.value() - b) / count as f64 };
    let proj = reconstruct_from(d, candidates.iter().copied(), tau);
    check_sum(d, &proj, b)?;
    Ok(proj)
}

/// Same as [`finish`] with every index as a candidate.
pub(crate) fn finish_dense(d: &[f64], b: f64, tau_hint: f64) -> Result<SparseProjection> {
    let mut acc = Neumaier::new();
    let mut count = 0usize;
    for &x in d {
        if x > tau_hint {
            acc.add(x);
            count += 1;
        }
    }
    let tau = if count == 0 { tau_hint } else { (acc.value() - b) / count as f64 };
    let proj = reconstruct_from(d, 0..d.len(), tau);
    check_sum(d, &proj, b)?;
    Ok(proj)
}

/// Check the optimality conditions of a claimed projection:
/// (a) `|sum(values) - b| <= tol * max(1, b)`,
/// (b) all values `> -tol`,
/// (c) every excluded entry satisfies `d_i <= tau + tol`,
/// (d) every included value equals `d_i - tau` within `tol`.
///
/// The checks in (c) and (d) are scaled by `max(1, |tau|)`.
pub fn verify_kkt(instance: &ProjectionInstance, proj: &SparseProjection, tol: f64) -> bool {
    let d = instance.d();
    let b = instance.b();
    if proj.indices.len() != proj.values.len() {
        return false;
    }
    if !proj.indices.windows(2).all(|w| w[0] < w[1]) {
        return false;
    }
    if proj.indices.last().is_some_and(|&i| i >= d.len()) {
        return false;
    }
    if (proj.sum() - b).abs() > tol * b.max(1.0) {
        return false;
    }
    if proj.values.iter().any(|&v| !(v > -tol)) {
        return false;
    }
    let scale = proj.tau.abs().max(1.0);
    let entry_tol = tol * scale;
    for (&i, &v) in proj.indices.iter().zip(&proj.values) {
        if (v - (d[i] - proj.tau)).abs() > entry_tol {
            return false;
        }
    }
    // indices are distinct and in range, so every entry above the threshold
    // is included iff both counts agree
    let threshold = proj.tau + entry_tol;
    let above = d.iter().filter(|&&x| x > threshold).count();
    let above_included = proj.indices.iter().filter(|&&i| d[i] > threshold).count();
    if above != above_included {
        return false;
    }
    true
}

/// Trusted reference: full descending sort, compensated prefix sums, and
/// `kappa = max{j : (s_j - b)/j < d_(j)}` over every `j`.
pub fn reference_project(instance: &ProjectionInstance) -> Result<SparseProjection> {
    validate(instance.d(), instance.b())?;
    let tau = reference_pivot(instance.d(), instance.b());
    Ok(reconstruct_from(instance.d(), 0..instance.n(), tau))
}

pub(crate) fn reference_pivot(d: &[f64], b: f64) -> f64 {
    let mut sorted = d.to_vec();
    sorted.sort_unstable_by(|x, y| y.total_cmp(x));
    let mut acc = Neumaier::new();
    let mut kappa = 1usize;
    let mut kappa_sum = sorted[0];
    for (j, &x) in sorted.iter().enumerate() {
        acc.add(x);
        let s = acc.value();
        let len = (j + 1) as f64;
        if (s - b) / len < x {
            kappa = j + 1;
            kappa_sum = s;
        }
    }
    (kappa_sum - b) / kappa as f64
}
