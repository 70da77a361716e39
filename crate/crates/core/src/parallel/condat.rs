use rayon::prelude::*;

use super::plan::{make_plan, WorkerPlan};
use super::pool::install;
use super::preprocess::check_plan;
use super::DENSE_FALLBACK_RATIO;
use crate::error::Result;
use crate::problem::{finish, validate, ProjectionInstance, SolverStats, SparseProjection};
use crate::serial::{condat_main_loop, filter_slice};
use crate::sum::Neumaier;

/// Distributed Filter: every worker runs the serial Filter on its range and
/// then one removal pass with its local pivot. Returns the union of the
/// surviving indices, ascending, which contains the active set.
pub fn distributed_filter(instance: &ProjectionInstance, plan: &WorkerPlan) -> Result<(Vec<usize>, SolverStats)> {
    validate(instance.d(), instance.b())?;
    check_plan(plan, instance.n())?;
    Ok(dfilter(instance.d(), instance.b(), plan))
}

fn dfilter(d: &[f64], b: f64, plan: &WorkerPlan) -> (Vec<usize>, SolverStats) {
    let parts: Vec<(Vec<usize>, usize)> = install(plan.workers(), || {
        plan.partitions
            .par_iter()
            .map(|range| {
                let part = &d[range.clone()];
                let filtered = filter_slice(part, b);
                let mut kept = filtered.indices;
                let mut scanned = filtered.stats.elements_scanned;
                let mut len = kept.len();
                let mut p = (kept.iter().map(|&j| part[j]).collect::<Neumaier>().value() - b) / len as f64;
                scanned += 2 * len;
                kept.retain(|&j| {
                    let x = part[j];
                    if x > p || len == 1 {
                        true
                    } else {
                        len -= 1;
                        p += (p - x) / len as f64;
                        false
                    }
                });
                (kept.into_iter().map(|j| range.start + j).collect(), scanned)
            })
            .collect()
    });
    let total: usize = parts.iter().map(|(k, _)| k.len()).sum();
    let mut union = Vec::with_capacity(total);
    let mut stats = SolverStats::default();
    for (kept, scanned) in parts {
        union.extend(kept);
        stats.elements_scanned += scanned;
    }
    stats.preprocess_scanned = stats.elements_scanned;
    stats.outer_iterations = 1;
    stats.reduced_size = union.len();
    stats.dense_fallback = union.len() as f64 > DENSE_FALLBACK_RATIO * d.len() as f64;
    (union, stats)
}

/// Parallel Condat: Distributed Filter, then the serial Condat main loop on
/// the union of survivors.
pub fn parallel_condat(instance: &ProjectionInstance, k: usize) -> Result<(SparseProjection, SolverStats)> {
    validate(instance.d(), instance.b())?;
    let (d, b) = (instance.d(), instance.b());
    let plan = make_plan(d.len(), k);
    let (mut active, mut stats) = dfilter(d, b, &plan);
    let dense = stats.dense_fallback;
    let p = condat_main_loop(d, b, &mut active, &mut stats);
    stats.dense_fallback = dense;
    stats.reduced_size = stats.reduced_size.max(active.len());
    Ok((finish(d, b, &active, p)?, stats))
}
