use rayon::prelude::*;

use super::l1::BallProjection;
use crate::error::{ProjectionError, Result};
use crate::parallel::{install, make_plan};
use crate::problem::{validate, SolverStats, SparseProjection, DEFAULT_TOL};
use crate::serial::FilterOutput;
use crate::sum::Neumaier;

/// `d`, positive weights `w` and scale `b` of the weighted simplex
/// `{v >= 0 : sum(w v) = b}` or weighted l1 ball `{v : sum(w |v|) <= b}`.
///
/// The projection is `v_i = max(d_i - w_i tau, 0)`; entry `i` is active iff
/// `d_i / w_i > tau`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedInstance {
    d: Vec<f64>,
    w: Vec<f64>,
    b: f64,
}

impl WeightedInstance {
    pub fn new(d: Vec<f64>, w: Vec<f64>, b: f64) -> Result<Self> {
        validate(&d, b)?;
        if d.len() != w.len() {
            return Err(ProjectionError::LengthMismatch { values: d.len(), weights: w.len() });
        }
        if let Some((index, &value)) = w.iter().enumerate().find(|(_, x)| !(x.is_finite() && **x > 0.0)) {
            return Err(ProjectionError::InvalidWeight { index, value });
        }
        Ok(Self { d, w, b })
    }

    pub fn d(&self) -> &[f64] {
        &self.d
    }

    pub fn w(&self) -> &[f64] {
        &self.w
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }
}

/// Local solver of the distributed weighted projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightedVariant {
    /// Weighted Michelot locally and for the final solve.
    Pivot,
    /// Weighted Filter and Condat locally, Condat's main loop on the union.
    #[default]
    Condat,
}

#[inline]
fn ratio(d: &[f64], w: &[f64], i: usize) -> f64 {
    d[i] / w[i]
}

fn pivot_over(d: &[f64], w: &[f64], b: f64, set: impl IntoIterator<Item = usize>) -> f64 {
    let mut num = Neumaier::new();
    let mut den = Neumaier::new();
    for i in set {
        num.add(w[i] * d[i]);
        den.add(w[i] * w[i]);
    }
    (num.value() - b) / den.value()
}

/// Recompute the pivot from the candidates with ratio above `hint` and build
/// the output. With unit weights every operation matches the unweighted
/// finishing step bit for bit.
fn finish(d: &[f64], w: &[f64], b: f64, candidates: &[usize], hint: f64) -> Result<SparseProjection> {
    let above: Vec<usize> = candidates.iter().copied().filter(|&i| ratio(d, w, i) > hint).collect();
    let tau = if above.is_empty() { hint } else { pivot_over(d, w, b, above.iter().copied()) };
    let mut indices = Vec::new();
    let mut values = Vec::new();
    for &i in candidates {
        if ratio(d, w, i) > tau {
            indices.push(i);
            values.push(d[i] - w[i] * tau);
        }
    }
    let proj = SparseProjection { tau, indices, values };
    let sum = weighted_sum(&proj, w);
    let scale = proj.indices.iter().map(|&i| d[i].abs()).fold(tau.abs(), f64::max);
    let slack = DEFAULT_TOL * b.max(1.0) + 8.0 * f64::EPSILON * proj.support_size() as f64 * scale;
    if (sum - b).abs() > slack {
        return Err(ProjectionError::BadPivot { tau, sum, b });
    }
    Ok(proj)
}

fn weighted_sum(proj: &SparseProjection, w: &[f64]) -> f64 {
    proj.indices.iter().zip(&proj.values).map(|(&i, &v)| w[i] * v).collect::<Neumaier>().value()
}

/// Weighted Michelot: `p = (sum(w d) - b)/sum(w^2)` over the candidates,
/// keep `d_i/w_i > p`, repeat until nothing is removed.
pub fn weighted_michelot(inst: &WeightedInstance) -> Result<(SparseProjection, SolverStats)> {
    michelot_slice(inst.d(), inst.w(), inst.b())
}

fn michelot_slice(d: &[f64], w: &[f64], b: f64) -> Result<(SparseProjection, SolverStats)> {
    let n = d.len();
    let mut stats = SolverStats { reduced_size: n, ..Default::default() };
    let mut p = pivot_over(d, w, b, 0..n);
    let mut active: Vec<usize> = (0..n).filter(|&i| ratio(d, w, i) > p).collect();
    stats.elements_scanned += n;
    stats.outer_iterations += 1;
    let mut prev = n;
    while active.len() < prev {
        prev = active.len();
        p = pivot_over(d, w, b, active.iter().copied());
        active.retain(|&i| ratio(d, w, i) > p);
        stats.elements_scanned += prev;
        stats.outer_iterations += 1;
    }
    Ok((finish(d, w, b, &active, p)?, stats))
}

/// Weighted Filter: one pass with a running weighted pivot and a waiting
/// list, then one pass over the waiting list. The output contains the
/// weighted active set.
pub fn weighted_filter(inst: &WeightedInstance) -> FilterOutput {
    filter_slice(inst.d(), inst.w(), inst.b())
}

fn filter_slice(d: &[f64], w: &[f64], b: f64) -> FilterOutput {
    let alone = |i: usize| (w[i] * d[i] - b) / (w[i] * w[i]);
    let mut kept = vec![0usize];
    let mut waiting: Vec<usize> = Vec::new();
    let mut p = alone(0);
    let mut sq = w[0] * w[0];
    for i in 1..d.len() {
        if ratio(d, w, i) > p {
            let (x, wi) = (d[i], w[i]);
            let grown = sq + wi * wi;
            p += wi * (x - wi * p) / grown;
            let single = alone(i);
            if p > single {
                kept.push(i);
                sq = grown;
            } else {
                waiting.append(&mut kept);
                kept.push(i);
                p = single;
                sq = wi * wi;
            }
        }
    }
    let second_pass = waiting.len();
    for &i in &waiting {
        if ratio(d, w, i) > p {
            kept.push(i);
            sq += w[i] * w[i];
            p += w[i] * (d[i] - w[i] * p) / sq;
        }
    }
    kept.sort_unstable();
    let scanned = d.len() + second_pass;
    let stats = SolverStats {
        elements_scanned: scanned,
        outer_iterations: 1,
        reduced_size: kept.len(),
        preprocess_scanned: scanned,
        dense_fallback: false,
    };
    FilterOutput { indices: kept, pivot: p, stats }
}

/// Weighted Condat: weighted Filter, then passes that update the pivot on
/// every removal.
pub fn weighted_condat(inst: &WeightedInstance) -> Result<(SparseProjection, SolverStats)> {
    condat_slice(inst.d(), inst.w(), inst.b())
}

fn condat_slice(d: &[f64], w: &[f64], b: f64) -> Result<(SparseProjection, SolverStats)> {
    let filtered = filter_slice(d, w, b);
    let mut stats = filtered.stats;
    let mut active = filtered.indices;
    let p = condat_main_loop(d, w, b, &mut active, &mut stats);
    Ok((finish(d, w, b, &active, p)?, stats))
}

fn condat_main_loop(d: &[f64], w: &[f64], b: f64, candidates: &mut Vec<usize>, stats: &mut SolverStats) -> f64 {
    let start = candidates.len();
    let mut p = pivot_over(d, w, b, candidates.iter().copied());
    let mut sq = candidates.iter().map(|&i| w[i] * w[i]).collect::<Neumaier>().value();
    stats.elements_scanned += start;
    stats.preprocess_scanned += start;
    stats.reduced_size = start;
    loop {
        let before = candidates.len();
        let mut len = before;
        candidates.retain(|&i| {
            if ratio(d, w, i) > p || len == 1 {
                true
            } else {
                len -= 1;
                sq -= w[i] * w[i];
                p += w[i] * (w[i] * p - d[i]) / sq;
                false
            }
        });
        stats.elements_scanned += before;
        stats.outer_iterations += 1;
        if candidates.len() == before {
            break;
        }
    }
    p
}

/// Sort the ratios `z = d/w` in parallel with `k` workers, then scan for the
/// largest `kappa` with `(sum_{i<=kappa} w d - b)/sum_{i<=kappa} w^2 <= z_kappa`.
pub fn weighted_sort_scan_parallel(inst: &WeightedInstance, k: usize) -> Result<(SparseProjection, SolverStats)> {
    if k == 0 {
        return Err(ProjectionError::InvalidArgument("worker count must be at least 1".into()));
    }
    let (d, w, b) = (inst.d(), inst.w(), inst.b());
    let n = d.len();
    let order = install(k, || {
        let z: Vec<f64> = (0..n).map(|i| ratio(d, w, i)).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.par_sort_by(|&x, &y| z[y].total_cmp(&z[x]));
        order
    });
    let mut num = Neumaier::new();
    let mut den = Neumaier::new();
    let mut tau = ratio(d, w, order[0]) - b / (w[order[0]] * w[order[0]]);
    let mut scanned = 0;
    for &i in &order {
        num.add(w[i] * d[i]);
        den.add(w[i] * w[i]);
        scanned += 1;
        let p = (num.value() - b) / den.value();
        if p > ratio(d, w, i) {
            break;
        }
        tau = p;
    }
    let all: Vec<usize> = (0..n).collect();
    let stats = SolverStats {
        elements_scanned: n + scanned,
        outer_iterations: 1,
        reduced_size: n,
        ..Default::default()
    };
    Ok((finish(d, w, b, &all, tau)?, stats))
}

/// Split `(d, w)` into `k` contiguous parts, solve each part on the same
/// weighted simplex in parallel, and re-solve over the union of locally
/// active entries.
pub fn distributed_weighted_project(
    inst: &WeightedInstance,
    k: usize,
    variant: WeightedVariant,
) -> Result<(SparseProjection, SolverStats)> {
    if k == 0 {
        return Err(ProjectionError::InvalidArgument("worker count must be at least 1".into()));
    }
    let (d, w, b) = (inst.d(), inst.w(), inst.b());
    let plan = make_plan(d.len(), k);
    let locals = install(plan.workers(), || {
        plan.partitions
            .par_iter()
            .map(|r| {
                let (ld, lw) = (&d[r.clone()], &w[r.clone()]);
                match variant {
                    WeightedVariant::Pivot => michelot_slice(ld, lw, b),
                    WeightedVariant::Condat => condat_slice(ld, lw, b),
                }
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let mut survivors = Vec::new();
    let mut stats = SolverStats::default();
    for ((proj, local), r) in locals.iter().zip(&plan.partitions) {
        survivors.extend(proj.indices.iter().map(|&i| r.start + i));
        stats.elements_scanned += local.elements_scanned;
    }
    stats.preprocess_scanned = stats.elements_scanned;
    stats.reduced_size = survivors.len();
    stats.dense_fallback = survivors.len() as f64 > crate::parallel::DENSE_FALLBACK_RATIO * d.len() as f64;

    match variant {
        WeightedVariant::Pivot => {
            let rd: Vec<f64> = survivors.iter().map(|&i| d[i]).collect();
            let rw: Vec<f64> = survivors.iter().map(|&i| w[i]).collect();
            let (local, fin) = michelot_slice(&rd, &rw, b)?;
            stats.elements_scanned += fin.elements_scanned;
            stats.outer_iterations = fin.outer_iterations;
            let indices = local.indices.iter().map(|&j| survivors[j]).collect();
            Ok((SparseProjection { tau: local.tau, indices, values: local.values }, stats))
        }
        WeightedVariant::Condat => {
            let mut active = survivors;
            let p = condat_main_loop(d, w, b, &mut active, &mut stats);
            Ok((finish(d, w, b, &active, p)?, stats))
        }
    }
}

/// Project onto `{v : sum(w |v|) <= b}`: interior points are returned
/// unchanged, otherwise `|d|` is projected onto the weighted simplex and the
/// signs are restored.
pub fn project_weighted_l1_ball(inst: &WeightedInstance, variant: WeightedVariant, k: usize) -> Result<BallProjection> {
    let (d, w, b) = (inst.d(), inst.w(), inst.b());
    let nonzero: Vec<usize> = (0..d.len()).filter(|&i| d[i] != 0.0).collect();
    let norm = nonzero.iter().map(|&i| w[i] * d[i].abs()).collect::<Neumaier>().value();
    if norm <= b {
        let values = nonzero.iter().map(|&i| d[i]).collect();
        return Ok(BallProjection {
            proj: SparseProjection { tau: 0.0, indices: nonzero, values },
            interior: true,
            stats: SolverStats { elements_scanned: d.len(), ..Default::default() },
        });
    }
    let reduced = WeightedInstance::new(
        nonzero.iter().map(|&i| d[i].abs()).collect(),
        nonzero.iter().map(|&i| w[i]).collect(),
        b,
    )?;
    let (local, mut stats) = distributed_weighted_project(&reduced, k, variant)?;
    stats.elements_scanned += d.len();
    let indices: Vec<usize> = local.indices.iter().map(|&j| nonzero[j]).collect();
    let values = indices.iter().zip(&local.values).map(|(&i, &v)| v.copysign(d[i])).collect();
    Ok(BallProjection { proj: SparseProjection { tau: local.tau, indices, values }, interior: false, stats })
}

/// Optimality check for a weighted simplex projection, with the same
/// scaling conventions as [`crate::verify_kkt`].
pub fn verify_weighted_kkt(inst: &WeightedInstance, proj: &SparseProjection, tol: f64) -> bool {
    let (d, w, b) = (inst.d(), inst.w(), inst.b());
    if proj.indices.len() != proj.values.len() || !proj.indices.windows(2).all(|x| x[0] < x[1]) {
        return false;
    }
    if proj.indices.last().is_some_and(|&i| i >= d.len()) {
        return false;
    }
    if (weighted_sum(proj, w) - b).abs() > tol * b.max(1.0) {
        return false;
    }
    if proj.values.iter().any(|&v| !(v > -tol)) {
        return false;
    }
    let entry_tol = tol * proj.tau.abs().max(1.0);
    for (&i, &v) in proj.indices.iter().zip(&proj.values) {
        if (v - (d[i] - w[i] * proj.tau)).abs() > entry_tol * w[i].max(1.0) {
            return false;
        }
    }
    let mut next = proj.indices.iter().peekable();
    for i in 0..d.len() {
        if next.peek() == Some(&&i) {
            next.next();
            continue;
        }
        if ratio(d, w, i) > proj.tau + entry_tol {
            return false;
        }
    }
    true
}
