use rayon::prelude::*;

use super::plan::{make_plan, WorkerPlan};
use super::pool::install;
use super::DENSE_FALLBACK_RATIO;
use crate::error::{ProjectionError, Result};
use crate::problem::{validate, ProjectionInstance, SolverStats, SparseProjection};
use crate::serial::{PivotRule, SerialSolver};

/// Survivors of the distributed preprocessing, in ascending original-index
/// order. Always contains the active set of the full projection.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedInstance {
    pub indices: Vec<usize>,
    pub values: Vec<f64>,
    pub b: f64,
}

impl ReducedInstance {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Project every partition onto the `b`-scaled simplex of its own dimension
/// with `local_solver`, and keep the entries with positive local value.
pub fn distributed_preprocess(
    instance: &ProjectionInstance,
    plan: &WorkerPlan,
    local_solver: SerialSolver,
) -> Result<(ReducedInstance, SolverStats)> {
    validate(instance.d(), instance.b())?;
    check_plan(plan, instance.n())?;
    preprocess_with(instance.d(), instance.b(), plan, |_| local_solver)
}

pub(crate) fn check_plan(plan: &WorkerPlan, n: usize) -> Result<()> {
    if plan.n != n || plan.partitions.last().map(|r| r.end) != Some(n) {
        return Err(ProjectionError::DimensionMismatch(format!("plan covers {} entries, vector has {n}", plan.n)));
    }
    Ok(())
}

pub(crate) fn preprocess_with<F>(d: &[f64], b: f64, plan: &WorkerPlan, solver_for: F) -> Result<(ReducedInstance, SolverStats)>
where
    F: Fn(usize) -> SerialSolver + Sync,
{
    let locals: Vec<(SparseProjection, SolverStats)> = install(plan.workers(), || {
        plan.partitions
            .par_iter()
            .enumerate()
            .map(|(w, range)| solver_for(w).solve_slice(&d[range.clone()], b))
            .collect::<Result<Vec<_>>>()
    })?;

    let survivors: usize = locals.iter().map(|(p, _)| p.support_size()).sum();
    let mut indices = Vec::with_capacity(survivors);
    let mut values = Vec::with_capacity(survivors);
    let mut stats = SolverStats::default();
    for ((proj, local), range) in locals.iter().zip(&plan.partitions) {
        for &i in &proj.indices {
            indices.push(range.start + i);
            values.push(d[range.start + i]);
        }
        stats.elements_scanned += local.elements_scanned;
    }
    stats.preprocess_scanned = stats.elements_scanned;
    stats.reduced_size = indices.len();
    stats.dense_fallback = indices.len() as f64 > DENSE_FALLBACK_RATIO * d.len() as f64;
    Ok((ReducedInstance { indices, values, b }, stats))
}

/// Solve the reduced instance serially and map the result back to original
/// indices.
pub(crate) fn solve_reduced(
    reduced: &ReducedInstance,
    solver: SerialSolver,
    mut stats: SolverStats,
) -> Result<(SparseProjection, SolverStats)> {
    let (local, final_stats) = solver.solve_slice(&reduced.values, reduced.b)?;
    stats.elements_scanned += final_stats.elements_scanned;
    stats.outer_iterations = final_stats.outer_iterations;
    let indices = local.indices.iter().map(|&i| reduced.indices[i]).collect();
    Ok((SparseProjection { tau: local.tau, indices, values: local.values }, stats))
}

/// Parallel Pivot and Partition: distributed preprocessing with the chosen
/// pivot rule as local solver, then one serial solve over the survivors.
/// The random rule seeds worker `w` with `seed + w`.
pub fn parallel_pivot_partition(
    instance: &ProjectionInstance,
    k: usize,
    rule: PivotRule,
) -> Result<(SparseProjection, SolverStats)> {
    validate(instance.d(), instance.b())?;
    let plan = make_plan(instance.n(), k);
    let local = |w: usize| match rule {
        PivotRule::Random { seed } => SerialSolver::PivotPartition(PivotRule::Random { seed: seed.wrapping_add(w as u64) }),
        other => SerialSolver::PivotPartition(other),
    };
    let (reduced, stats) = preprocess_with(instance.d(), instance.b(), &plan, local)?;
    solve_reduced(&reduced, SerialSolver::PivotPartition(rule), stats)
}
