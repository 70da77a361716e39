use std::fmt;

use crate::error::{ProjectionError, Result};
use crate::parallel::{parallel_condat, parallel_mergesort_partial_scan, parallel_pivot_partition};
use crate::problem::{validate, ProjectionInstance, SolverStats, SparseProjection};
use crate::serial::{bucket_slice, condat, michelot, pivot_partition, sort_scan, BucketParams, PivotRule};

/// Every simplex solver in the crate behind one dispatch point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Algorithm {
    SortScan,
    PivotPartition(PivotRule),
    Michelot,
    Condat,
    /// `None` picks the defaults for the input's range.
    Bucket(Option<BucketParams>),
    ParallelSortScan,
    ParallelPivot(PivotRule),
    ParallelCondat,
}

impl Algorithm {
    /// The command-line ids, one per variant family.
    pub const IDS: [&'static str; 9] =
        ["sortscan", "pp-median", "pp-random", "michelot", "condat", "bucket", "psortscan", "ppivot", "pcondat"];

    /// Parse a command-line id. `pp-random` uses seed 0; `ppivot` uses the
    /// median rule.
    pub fn from_id(id: &str) -> Result<Self> {
        Ok(match id {
            "sortscan" => Algorithm::SortScan,
            "pp-median" => Algorithm::PivotPartition(PivotRule::Median),
            "pp-random" => Algorithm::PivotPartition(PivotRule::Random { seed: 0 }),
            "michelot" => Algorithm::Michelot,
            "condat" => Algorithm::Condat,
            "bucket" => Algorithm::Bucket(None),
            "psortscan" => Algorithm::ParallelSortScan,
            "ppivot" => Algorithm::ParallelPivot(PivotRule::Median),
            "pcondat" => Algorithm::ParallelCondat,
            other => {
                return Err(ProjectionError::InvalidArgument(format!(
                    "unknown algorithm '{other}', expected one of {}",
                    Self::IDS.join(", ")
                )))
            }
        })
    }

    pub fn id(&self) -> &'static str {
        match self {
            Algorithm::SortScan => "sortscan",
            Algorithm::PivotPartition(PivotRule::Random { .. }) => "pp-random",
            Algorithm::PivotPartition(PivotRule::MichelotStart) => "pp-michelot",
            Algorithm::PivotPartition(PivotRule::Median) => "pp-median",
            Algorithm::Michelot => "michelot",
            Algorithm::Condat => "condat",
            Algorithm::Bucket(_) => "bucket",
            Algorithm::ParallelSortScan => "psortscan",
            Algorithm::ParallelPivot(_) => "ppivot",
            Algorithm::ParallelCondat => "pcondat",
        }
    }

    pub fn is_parallel(&self) -> bool {
        matches!(self, Algorithm::ParallelSortScan | Algorithm::ParallelPivot(_) | Algorithm::ParallelCondat)
    }

    /// The serial method a parallel one is measured against for relative
    /// speedup; serial methods map to themselves.
    pub fn serial_equivalent(&self) -> Algorithm {
        match *self {
            Algorithm::ParallelSortScan => Algorithm::SortScan,
            Algorithm::ParallelPivot(rule) => Algorithm::PivotPartition(rule),
            Algorithm::ParallelCondat => Algorithm::Condat,
            other => other,
        }
    }

    /// Project with `k` workers. Serial methods ignore `k`.
    pub fn project(&self, instance: &ProjectionInstance, k: usize) -> Result<(SparseProjection, SolverStats)> {
        if k == 0 {
            return Err(ProjectionError::InvalidArgument("worker count must be at least 1".into()));
        }
        match *self {
            Algorithm::SortScan => sort_scan(instance),
            Algorithm::PivotPartition(rule) => pivot_partition(instance, rule),
            Algorithm::Michelot => michelot(instance),
            Algorithm::Condat => condat(instance),
            Algorithm::Bucket(params) => {
                validate(instance.d(), instance.b())?;
                bucket_slice(instance.d(), instance.b(), params)
            }
            Algorithm::ParallelSortScan => parallel_mergesort_partial_scan(instance, k),
            Algorithm::ParallelPivot(rule) => parallel_pivot_partition(instance, k, rule),
            Algorithm::ParallelCondat => parallel_condat(instance, k),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Simplex solver plus worker count, used by the projections built on the
/// simplex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Backend {
    pub algorithm: Algorithm,
    pub workers: usize,
}

impl Backend {
    pub fn serial(algorithm: Algorithm) -> Self {
        Self { algorithm, workers: 1 }
    }

    pub fn parallel(algorithm: Algorithm, workers: usize) -> Self {
        Self { algorithm, workers }
    }

    pub fn project(&self, instance: &ProjectionInstance) -> Result<(SparseProjection, SolverStats)> {
        self.algorithm.project(instance, self.workers)
    }
}

impl Default for Backend {
    fn default() -> Self {
        Self::serial(Algorithm::Condat)
    }
}
