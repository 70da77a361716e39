//! Parallel projections.
//!
//! Two schemes live here. The sparsity-exploiting one splits `d` into
//! contiguous parts, projects each part onto the same simplex, and keeps only
//! the locally active entries: an entry inactive in a sub-projection is
//! inactive in the full one, so a final serial solve over the survivors is
//! exact. The other parallelizes Sort and Scan directly with a parallel merge
//! sort and a doubling prefix scan that stops early.
//!
//! `k` is the number of logical workers; it fixes the partition and so the
//! result. The number of OS threads backing them is `min(k, cap)` where the
//! cap comes from the `SIMPLEX_MAX_THREADS` environment variable.

mod condat;
mod merge_sort;
mod plan;
mod pool;
mod preprocess;
mod sort_scan;

pub use condat::{distributed_filter, parallel_condat};
pub use plan::{make_plan, WorkerPlan};
pub(crate) use pool::install;
pub use pool::{thread_cap, MAX_THREADS_ENV};
pub use preprocess::{distributed_preprocess, parallel_pivot_partition, ReducedInstance};
pub use sort_scan::{parallel_mergesort_partial_scan, partial_scan};

/// Survivor fraction above which the final stage is flagged as dense.
pub const DENSE_FALLBACK_RATIO: f64 = 0.9;
