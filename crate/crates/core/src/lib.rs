//! Euclidean projection onto the scaled simplex `{v >= 0 : sum(v) = b}`.
//!
//! The crate provides the classic serial pivot-finding methods (Sort and
//! Scan, Pivot and Partition, Michelot, Condat, bucketing), parallel variants
//! that exploit the sparsity of the projection, and projections built on top
//! of them: the l1 ball, weighted simplex and l1 ball, and the centered parity
//! polytope, plus a mini-batch projected-gradient Lasso driver.
//!
//! ```
//! use simplex_proj::{serial::condat, ProjectionInstance};
//!
//! let inst = ProjectionInstance::new(vec![2.0, 1.0, 0.0, 1.5], 1.0).unwrap();
//! let (proj, _) = condat(&inst).unwrap();
//! assert_eq!(proj.indices, vec![0, 3]);
//! assert!((proj.tau - 1.25).abs() < 1e-12);
//! ```

pub mod algorithm;
pub mod bounds;
pub mod error;
pub mod extensions;
mod order;
pub mod parallel;
pub mod problem;
pub mod serial;
pub mod sum;

pub use algorithm::{Algorithm, Backend};
pub use error::{ProjectionError, Result};
pub use problem::{
    pivot_fn, reconstruct, reference_project, verify_kkt, ProjectionInstance, SolverStats, SparseProjection,
    DEFAULT_TOL,
};
