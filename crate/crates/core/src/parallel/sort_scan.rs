use rayon::prelude::*;

use super::merge_sort::merge_sort_desc;
use super::pool::install;
use crate::error::{ProjectionError, Result};
use crate::problem::{validate, ProjectionInstance, SolverStats, SparseProjection};

/// Blocks at or below this many pair-adds per level run serially.
const PAR_LEVEL_MIN: usize = 1 << 14;

/// Pivot of a descending-sorted vector by the doubling partial scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialScan {
    pub tau: f64,
    pub kappa: usize,
    /// Doubling level at which the scan stopped (0 when `n = 1`).
    pub stop_level: u32,
    /// Pair-additions performed.
    pub additions: usize,
}

/// Doubling prefix scan with early termination.
///
/// The up-sweep builds block sums of size `2^j`; after level `j` the prefix
/// sum of the first `2^j` entries is known and the scan stops at the first
/// level where `(s - b)/kappa >= d_(kappa)`. The pivot then lies between
/// `2^(j-1)` and `2^j`, and a binary search over the block sums already built
/// locates the largest feasible `kappa`. Sums follow the up-sweep tree, so
/// they are pairwise. The vector is padded with zeros to a power of two.
pub fn partial_scan(sorted: &[f64], b: f64, k: usize) -> Result<PartialScan> {
    if sorted.is_empty() {
        return Err(ProjectionError::Empty);
    }
    if !sorted.windows(2).all(|w| w[0] >= w[1]) {
        return Err(ProjectionError::InvalidArgument("partial_scan needs a descending vector".into()));
    }
    Ok(install(k, || scan(sorted, b)))
}

fn feasible(prefix: f64, kappa: usize, sorted: &[f64], b: f64) -> bool {
    (prefix - b) / (kappa as f64) < sorted[kappa - 1]
}

fn scan(sorted: &[f64], b: f64) -> PartialScan {
    let n = sorted.len();
    if n == 1 {
        return PartialScan { tau: sorted[0] - b, kappa: 1, stop_level: 0, additions: 0 };
    }
    let levels = usize::BITS - (n - 1).leading_zeros();
    let padded = 1usize << levels;
    let mut s = Vec::with_capacity(padded);
    s.extend_from_slice(sorted);
    s.resize(padded, 0.0);

    let mut additions = 0usize;
    let mut stop = None;
    for j in 1..=levels {
        let step = 1usize << j;
        let half = step >> 1;
        let blocks = padded / step;
        if blocks > PAR_LEVEL_MIN {
            s.par_chunks_mut(step).for_each(|c| c[step - 1] += c[half - 1]);
        } else {
            s.chunks_mut(step).for_each(|c| c[step - 1] += c[half - 1]);
        }
        additions += blocks;
        let kappa = step.min(n);
        if !feasible(s[step - 1], kappa, sorted, b) {
            stop = Some(j);
            break;
        }
    }

    let Some(j) = stop else {
        let total = s[padded - 1];
        return PartialScan { tau: (total - b) / n as f64, kappa: n, stop_level: levels, additions };
    };

    // largest feasible kappa lies in [2^(j-1), 2^j)
    let mut p = 1usize << (j - 1);
    let mut prefix = s[p - 1];
    for i in (1..j).rev() {
        let q = p + (1usize << (i - 1));
        if q > n {
            continue;
        }
        let candidate = prefix + s[q - 1];
        additions += 1;
        if feasible(candidate, q, sorted, b) {
            p = q;
            prefix = candidate;
        }
    }
    PartialScan { tau: (prefix - b) / p as f64, kappa: p, stop_level: j, additions }
}

/// Parallel merge sort (descending) followed by [`partial_scan`].
pub fn parallel_mergesort_partial_scan(instance: &ProjectionInstance, k: usize) -> Result<(SparseProjection, SolverStats)> {
    validate(instance.d(), instance.b())?;
    let (d, b) = (instance.d(), instance.b());
    let (scan, proj) = install(k, || {
        let sorted = merge_sort_desc(d);
        let scan = self::scan(&sorted, b);
        (scan, reconstruct_par(d, b, scan.tau))
    });
    let stats = SolverStats {
        elements_scanned: d.len() + scan.additions,
        outer_iterations: scan.stop_level as usize,
        reduced_size: d.len(),
        ..Default::default()
    };
    Ok((proj?, stats))
}

/// Parallel counterpart of the dense finishing step: gather entries above the
/// scan pivot, recompute the pivot from them, and build the output.
fn reconstruct_par(d: &[f64], b: f64, tau_hint: f64) -> Result<SparseProjection> {
    let chunk = (d.len() / rayon::current_num_threads().max(1)).max(1 << 12);
    let pieces: Vec<Vec<usize>> = d
        .par_chunks(chunk)
        .enumerate()
        .map(|(c, part)| {
            part.iter()
                .enumerate()
                .filter(|(_, &x)| x > tau_hint)
                .map(|(i, _)| c * chunk + i)
                .collect()
        })
        .collect();
    let candidates: Vec<usize> = pieces.concat();
    crate::problem::finish(d, b, &candidates, tau_hint)
}
