//! Projections that reduce to the simplex, and a Lasso driver built on them.

mod l1;
mod lasso;
mod parity;
mod weighted;

pub use l1::{project_l1_ball, BallInstance, BallProjection};
pub use lasso::{lasso_pgd_minibatch, CsrMatrix, LassoConfig, LassoInit, LassoStep, LassoTrace};
pub use parity::{parity_sign_pattern, project_parity_polytope};
pub use weighted::{
    distributed_weighted_project, project_weighted_l1_ball, verify_weighted_kkt, weighted_condat, weighted_filter,
    weighted_michelot, weighted_sort_scan_parallel, WeightedInstance, WeightedVariant,
};
