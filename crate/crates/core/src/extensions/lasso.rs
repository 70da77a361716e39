use std::time::Instant;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::l1::{project_l1_ball, BallInstance};
use crate::algorithm::Backend;
use crate::error::{ProjectionError, Result};

/// Compressed sparse row matrix.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CsrMatrix {
    cols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    data: Vec<f64>,
}

impl CsrMatrix {
    pub fn new(cols: usize, indptr: Vec<usize>, indices: Vec<usize>, data: Vec<f64>) -> Result<Self> {
        let bad = |msg: String| Err(ProjectionError::DimensionMismatch(msg));
        if indptr.first() != Some(&0) {
            return bad("indptr must start at 0".into());
        }
        if !indptr.windows(2).all(|w| w[0] <= w[1]) {
            return bad("indptr must be non-decreasing".into());
        }
        if *indptr.last().unwrap() != indices.len() || indices.len() != data.len() {
            return bad(format!("indptr ends at {}, {} indices, {} values", indptr.last().unwrap(), indices.len(), data.len()));
        }
        if let Some(&c) = indices.iter().find(|&&c| c >= cols) {
            return bad(format!("column {c} out of range for {cols} columns"));
        }
        Ok(Self { cols, indptr, indices, data })
    }

    /// Build from per-row `(column, value)` lists.
    pub fn from_rows(cols: usize, rows: &[Vec<(usize, f64)>]) -> Result<Self> {
        let mut indptr = Vec::with_capacity(rows.len() + 1);
        let mut indices = Vec::new();
        let mut data = Vec::new();
        indptr.push(0);
        for row in rows {
            for &(c, v) in row {
                indices.push(c);
                data.push(v);
            }
            indptr.push(indices.len());
        }
        Self::new(cols, indptr, indices, data)
    }

    pub fn nrows(&self) -> usize {
        self.indptr.len() - 1
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.len()
    }

    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let r = self.indptr[i]..self.indptr[i + 1];
        (&self.indices[r.clone()], &self.data[r])
    }

    /// `a_i^T x`
    pub fn row_dot(&self, i: usize, x: &[f64]) -> f64 {
        let (cols, vals) = self.row(i);
        cols.iter().zip(vals).map(|(&c, &v)| v * x[c]).sum()
    }
}

/// Starting point of the iteration.
#[derive(Debug, Clone, PartialEq)]
pub enum LassoInit {
    Zero,
    /// Each entry is zero with probability `rate`, otherwise `U[0, 1]`.
    SparseUniform { rate: f64 },
    Given(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LassoConfig {
    /// Step size `alpha`.
    pub step: f64,
    /// Rows per mini-batch.
    pub batch: usize,
    pub iters: usize,
    /// l1 radius `b`.
    pub radius: f64,
    pub seed: u64,
    pub init: LassoInit,
}

impl Default for LassoConfig {
    fn default() -> Self {
        Self { step: 0.05, batch: 128, iters: 10, radius: 1.0, seed: 0, init: LassoInit::SparseUniform { rate: 0.5 } }
    }
}

impl LassoConfig {
    fn check(&self) -> Result<()> {
        let bad = |m: &str| Err(ProjectionError::InvalidArgument(m.into()));
        if !(self.step > 0.0 && self.step.is_finite()) {
            return bad("step must be positive");
        }
        if self.batch == 0 || self.iters == 0 {
            return bad("batch and iteration count must be at least 1");
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(ProjectionError::InvalidScale(self.radius));
        }
        if let LassoInit::SparseUniform { rate } = self.init {
            if !(0.0..=1.0).contains(&rate) {
                return bad("sparse rate must lie in [0, 1]");
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LassoStep {
    /// Wall time of the l1-ball projection alone.
    pub projection_ns: u64,
    pub l1_norm: f64,
    pub support: usize,
    pub interior: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LassoTrace {
    pub x: Vec<f64>,
    pub steps: Vec<LassoStep>,
}

impl LassoTrace {
    pub fn total_projection_ns(&self) -> u64 {
        self.steps.iter().map(|s| s.projection_ns).sum()
    }
}

/// Mini-batch projected gradient descent for
/// `min ||A x - beta||^2 s.t. ||x||_1 <= b`:
/// `x <- proj(x - alpha * 2 A~^T (A~ x - beta))` with `A~` a batch of rows
/// drawn uniformly without replacement.
pub fn lasso_pgd_minibatch(a: &CsrMatrix, labels: &[f64], cfg: &LassoConfig, backend: &Backend) -> Result<LassoTrace> {
    cfg.check()?;
    if labels.len() != a.nrows() {
        return Err(ProjectionError::DimensionMismatch(format!("{} labels for {} rows", labels.len(), a.nrows())));
    }
    if a.nrows() == 0 || a.ncols() == 0 {
        return Err(ProjectionError::Empty);
    }
    let n = a.ncols();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut x = match &cfg.init {
        LassoInit::Zero => vec![0.0; n],
        LassoInit::SparseUniform { rate } => {
            (0..n).map(|_| if rng.random::<f64>() < *rate { 0.0 } else { rng.random::<f64>() }).collect()
        }
        LassoInit::Given(x0) => {
            if x0.len() != n {
                return Err(ProjectionError::DimensionMismatch(format!("start has {} entries, matrix {n} columns", x0.len())));
            }
            x0.clone()
        }
    };
    let batch = cfg.batch.min(a.nrows());
    let mut grad = vec![0.0; n];
    let mut steps = Vec::with_capacity(cfg.iters);
    for _ in 0..cfg.iters {
        grad.iter_mut().for_each(|g| *g = 0.0);
        for r in sample(&mut rng, a.nrows(), batch) {
            let residual = a.row_dot(r, &x) - labels[r];
            let (cols, vals) = a.row(r);
            for (&c, &v) in cols.iter().zip(vals) {
                grad[c] += 2.0 * v * residual;
            }
        }
        let moved: Vec<f64> = x.iter().zip(&grad).map(|(xi, g)| xi - cfg.step * g).collect();
        let ball = BallInstance::new(moved, cfg.radius)?;
        let start = Instant::now();
        let proj = project_l1_ball(&ball, backend)?;
        let projection_ns = start.elapsed().as_nanos() as u64;
        x = proj.to_dense(n);
        steps.push(LassoStep {
            projection_ns,
            l1_norm: x.iter().map(|v| v.abs()).sum(),
            support: proj.proj.support_size(),
            interior: proj.interior,
        });
    }
    Ok(LassoTrace { x, steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_by_one() {
        let a = CsrMatrix::from_rows(1, &[vec![(0, 1.0)]]).unwrap();
        let cfg = LassoConfig { iters: 1, init: LassoInit::Zero, ..Default::default() };
        let t = lasso_pgd_minibatch(&a, &[1.0], &cfg, &Backend::default()).unwrap();
        assert!((t.x[0] - 0.1).abs() < 1e-15);
        assert!(t.steps[0].interior);
    }

    #[test]
    fn zero_residual_is_fixed() {
        let a = CsrMatrix::from_rows(2, &[vec![(0, 1.0)], vec![(1, 2.0)]]).unwrap();
        let x0 = vec![0.25, -0.5];
        let cfg = LassoConfig { iters: 3, init: LassoInit::Given(x0.clone()), ..Default::default() };
        let t = lasso_pgd_minibatch(&a, &[0.25, -1.0], &cfg, &Backend::default()).unwrap();
        assert_eq!(t.x, x0);
    }

    #[test]
    fn iterates_stay_in_ball() {
        let rows: Vec<Vec<(usize, f64)>> =
            (0..50).map(|r| (0..20).filter(|c| (r + c) % 3 == 0).map(|c| (c, 1.0 + (r * c % 7) as f64)).collect()).collect();
        let a = CsrMatrix::from_rows(20, &rows).unwrap();
        let labels: Vec<f64> = (0..50).map(|r| (r % 5) as f64).collect();
        let cfg = LassoConfig { batch: 8, iters: 20, step: 0.01, ..Default::default() };
        let t = lasso_pgd_minibatch(&a, &labels, &cfg, &Backend::default()).unwrap();
        for s in &t.steps {
            assert!(s.l1_norm <= 1.0 + 1e-12);
        }
        let again = lasso_pgd_minibatch(&a, &labels, &cfg, &Backend::default()).unwrap();
        assert_eq!(t.x, again.x);
    }

    #[test]
    fn rejects_bad_shapes() {
        let a = CsrMatrix::from_rows(1, &[vec![(0, 1.0)]]).unwrap();
        assert!(lasso_pgd_minibatch(&a, &[1.0, 2.0], &LassoConfig::default(), &Backend::default()).is_err());
        assert!(CsrMatrix::from_rows(1, &[vec![(1, 1.0)]]).is_err());
        let cfg = LassoConfig { init: LassoInit::Given(vec![0.0, 0.0]), ..Default::default() };
        assert!(lasso_pgd_minibatch(&a, &[1.0], &cfg, &Backend::default()).is_err());
    }
}
