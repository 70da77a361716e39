//! Serial projection algorithms, each instrumented with [`SolverStats`].
//!
//! Every public solver takes a validated [`ProjectionInstance`]; the `*_slice`
//! variants skip validation and are what the parallel wrappers call on their
//! partitions.

mod bucket;
mod condat;
mod filter;
mod michelot;
mod pivot;
mod select;
mod sort_scan;

pub use bucket::{bucket, BucketParams};
pub use condat::condat;
pub use filter::{filter, FilterOutput};
pub use michelot::{michelot, michelot_traced, MichelotTrace};
pub use pivot::{pivot_partition, PivotRule};
pub use select::select_desc;
pub use sort_scan::{sort_scan, sort_scan_with, SortStrategy};

pub(crate) use bucket::bucket_slice;
pub(crate) use condat::{condat_main_loop, condat_slice};
pub(crate) use filter::filter_slice;
pub(crate) use michelot::michelot_slice;
pub(crate) use pivot::pivot_partition_slice;
pub(crate) use sort_scan::sort_scan_slice;

use crate::error::Result;
use crate::problem::{SolverStats, SparseProjection};

/// A serial simplex solver, usable as the local solver of the distributed
/// methods.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SerialSolver {
    SortScan,
    PivotPartition(PivotRule),
    Michelot,
    Condat,
    Bucket(Option<BucketParams>),
}

impl SerialSolver {
    /// Solve on a raw slice. The caller guarantees the slice is non-empty,
    /// finite and `b > 0`.
    pub(crate) fn solve_slice(&self, d: &[f64], b: f64) -> Result<(SparseProjection, SolverStats)> {
        match *self {
            SerialSolver::SortScan => sort_scan_slice(d, b, SortStrategy::Unstable),
            SerialSolver::PivotPartition(rule) => pivot_partition_slice(d, b, rule),
            SerialSolver::Michelot => michelot_slice(d, b, None),
            SerialSolver::Condat => condat_slice(d, b),
            SerialSolver::Bucket(params) => bucket_slice(d, b, params),
        }
    }
}
